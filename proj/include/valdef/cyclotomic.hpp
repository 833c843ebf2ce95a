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

#ifndef VALDEF_CYCLOTOMIC_HPP
#define VALDEF_CYCLOTOMIC_HPP

#include <optional>
#include <vector>

#include "valdef/fp.hpp"
#include "valdef/rational.hpp"
#include "valdef/value.hpp"

namespace valdef {

// Element of Q(zeta_p), stored as p-1 rational coordinates of
// c_0 + c_1 zeta + ... + c_{p-2} zeta^{p-2} (reduced mod the p-th cyclotomic
// polynomial).  For p = 2 this degenerates to a single rational coordinate.
class CycElem {
  public:
    CycElem(unsigned long p, Rational c0);
    static CycElem zero(unsigned long p) { return CycElem(p, Rational(0)); }
    static CycElem one(unsigned long p) { return CycElem(p, Rational(1)); }
    static CycElem zeta(unsigned long p);
    static CycElem from_coords(unsigned long p, std::vector<Rational> coords);

    unsigned long prime() const { return p_; }
    const std::vector<Rational>& coords() const { return c_; }
    bool is_zero() const;

    // True when all coordinates above the constant one vanish.
    bool is_rational() const;
    const Rational& rational_part() const { return c_[0]; }

    CycElem operator+(const CycElem& o) const;
    CycElem operator-(const CycElem& o) const;
    CycElem operator*(const CycElem& o) const;
    CycElem operator-() const;
    CycElem scale(const Rational& r) const;

    bool operator==(const CycElem& o) const;
    bool operator!=(const CycElem& o) const { return !(*this == o); }

    // The p-adic valuation extended to Q(zeta_p), normalized so v(p) = 1:
    // v(c) = v_p(Norm(c)) / (p-1), with the norm computed exactly as a
    // resultant with the cyclotomic polynomial.  v(0) = infinity.
    Value val() const;

    // Exact p'-th root when the element is a rational perfect power.
    std::optional<CycElem> perfect_root(unsigned long n) const;

    // Field norm to Q.
    Rational norm() const;

  private:
    void check(const CycElem& o) const {
        if (p_ != o.p_) throw invariant_error("cyclotomic arithmetic across different primes");
    }
    unsigned long p_;
    std::vector<Rational> c_;  // size p-1
};

}  // namespace valdef

#endif
