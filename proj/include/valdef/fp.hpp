/*
   Copyright 2026 the valdef authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef VALDEF_FP_HPP
#define VALDEF_FP_HPP

#include <cstdint>

#include "valdef/errors.hpp"

namespace valdef {

// The characteristic exponent p; primality checked at construction.
class Prime {
  public:
    explicit Prime(unsigned long p) : p_(p) {
        if (!is_prime(p)) throw config_error("not prime: " + std::to_string(p));
    }
    unsigned long get() const { return p_; }
    bool operator==(const Prime& o) const { return p_ == o.p_; }
    bool operator!=(const Prime& o) const { return p_ != o.p_; }

    static bool is_prime(unsigned long n) {
        if (n < 2) return false;
        for (unsigned long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

  private:
    unsigned long p_;
};

// Residue-field element in F_p.
class FpElem {
  public:
    FpElem(long v, unsigned long p) : p_(p) {
        long m = v % static_cast<long>(p);
        r_ = static_cast<unsigned long>(m < 0 ? m + static_cast<long>(p) : m);
    }

    unsigned long residue() const { return r_; }
    unsigned long modulus() const { return p_; }
    bool is_zero() const { return r_ == 0; }

    FpElem operator+(const FpElem& o) const {
        check(o);
        return FpElem(static_cast<long>((r_ + o.r_) % p_), p_);
    }
    FpElem operator-(const FpElem& o) const {
        check(o);
        return FpElem(static_cast<long>((r_ + p_ - o.r_) % p_), p_);
    }
    FpElem operator*(const FpElem& o) const {
        check(o);
        return FpElem(static_cast<long>((r_ * o.r_) % p_), p_);
    }
    FpElem operator-() const { return FpElem(static_cast<long>((p_ - r_) % p_), p_); }

    FpElem pow(unsigned long e) const {
        FpElem acc(1, p_), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    FpElem inv() const {
        if (is_zero()) throw invariant_error("inverse of zero in F_p");
        return pow(p_ - 2);
    }

    // Frobenius x -> x^p is the identity on F_p, so the unique p-th root of c
    // is c itself.
    FpElem pth_root() const { return *this; }

    bool operator==(const FpElem& o) const { return p_ == o.p_ && r_ == o.r_; }
    bool operator!=(const FpElem& o) const { return !(*this == o); }

  private:
    void check(const FpElem& o) const {
        if (p_ != o.p_) throw invariant_error("F_p arithmetic across different primes");
    }
    unsigned long r_;
    unsigned long p_;
};

}  // namespace valdef

#endif
