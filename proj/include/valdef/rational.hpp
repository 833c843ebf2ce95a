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

#ifndef VALDEF_RATIONAL_HPP
#define VALDEF_RATIONAL_HPP

#include <gmp.h>

#include <cstdint>
#include <string>

#include "valdef/errors.hpp"

namespace valdef {

// Exact rational with arbitrary-precision numerator and positive denominator,
// always kept canonical (gcd 1, canonical zero 0/1).  Value semantics; wraps
// GMP's mpq_t behind RAII.
class Rational {
  public:
    Rational() { mpq_init(q_); }
    Rational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(long n, long d);
    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    // Accepts "num", "num/den" (den > 0 after canonicalization; "x/0" rejected).
    static Rational parse(const std::string& text);

    std::string str() const;       // always "num/den", e.g. "-1/2", "0/1"
    std::string str_short() const; // "num" when den == 1, else "num/den"

    // Decimal rendering with the given number of significant digits
    // (truncated, never rounded up past the exact value); display only.
    std::string decimal(int significant) const;

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    int sgn() const { return mpq_sgn(q_); }

    // Requires is_integer() and fitting in long.
    long to_long() const;

    // Residue of an integer rational modulo m (result in [0, m)).
    unsigned long mod_ui(unsigned long m) const;

    Rational operator-() const {
        Rational r;
        mpq_neg(r.q_, q_);
        return r;
    }
    Rational operator+(const Rational& o) const {
        Rational r;
        mpq_add(r.q_, q_, o.q_);
        return r;
    }
    Rational operator-(const Rational& o) const {
        Rational r;
        mpq_sub(r.q_, q_, o.q_);
        return r;
    }
    Rational operator*(const Rational& o) const {
        Rational r;
        mpq_mul(r.q_, q_, o.q_);
        return r;
    }
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }

    bool operator==(const Rational& o) const { return mpq_equal(q_, o.q_) != 0; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return mpq_cmp(q_, o.q_) < 0; }
    bool operator<=(const Rational& o) const { return mpq_cmp(q_, o.q_) <= 0; }
    bool operator>(const Rational& o) const { return mpq_cmp(q_, o.q_) > 0; }
    bool operator>=(const Rational& o) const { return mpq_cmp(q_, o.q_) >= 0; }

    // Exponentiation by an integer (negative allowed for nonzero base).
    Rational pow_int(long e) const;

    // p-adic valuation of a nonzero rational: multiplicity of p in num minus den.
    long adic_val(unsigned long p) const;

    // Largest integer <= this.
    Rational floor() const;

    // Fractional part in [0,1): *this - floor().
    Rational frac() const { return *this - floor(); }

    // Exact n-th root if this is a perfect n-th power (n >= 1), else nullopt
    // semantics via the ok flag.
    bool nth_root(unsigned long n, Rational& out) const;

    // C(n, k) as an exact integer rational.
    static Rational binomial(unsigned long n, unsigned long k);

    std::size_t hash() const;

  private:
    mpq_t q_;
};

inline Rational operator*(long n, const Rational& r) { return Rational(n) * r; }

}  // namespace valdef

#endif
