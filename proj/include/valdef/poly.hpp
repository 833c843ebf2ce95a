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

#ifndef VALDEF_POLY_HPP
#define VALDEF_POLY_HPP

#include <set>
#include <vector>

#include "valdef/series.hpp"

namespace valdef {

// Dense polynomial over the series field.  Exact zero coefficients are
// trimmed from the top; a lazy coefficient is never assumed zero, so leading
// coefficients of polynomials fed to division must be exact.
class Poly {
  public:
    explicit Poly(BackendCfg cfg) : cfg_(std::move(cfg)) {}
    Poly(BackendCfg cfg, std::vector<SeriesElem> coeffs);

    static Poly zero(const BackendCfg& cfg) { return Poly(cfg); }
    static Poly constant(SeriesElem c);
    static Poly x(const BackendCfg& cfg);
    static Poly x_pow(const BackendCfg& cfg, int k);

    const BackendCfg& cfg() const { return cfg_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const SeriesElem& coeff(int i) const;
    const std::vector<SeriesElem>& coeffs() const { return c_; }

    bool is_monic() const;
    bool is_constant() const { return c_.size() <= 1; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly pow(unsigned k) const;
    Poly scale(const SeriesElem& s) const;
    Poly scale_int(long n) const;
    Poly shift(int k) const;  // multiply by x^k

    // Structural equality; requires exact coefficients.
    bool equal_exact(const Poly& o) const;

    std::string str() const;

  private:
    void trim();
    BackendCfg cfg_;
    std::vector<SeriesElem> c_;
};

// Euclidean division by a monic polynomial: f = quotient * Q + remainder with
// deg(remainder) < deg(Q).  Exact.
std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& Q);

// f = sum over i of coeffs[i] * Q^i, deg coeffs[i] < deg Q.  support is the
// index set of nonzero coefficients.
struct QExpansion {
    Poly base;
    std::vector<Poly> coeffs;
    std::set<int> support;

    Poly reconstruct() const;
};

QExpansion q_expansion(const Poly& f, const Poly& Q);

// Polynomial in an auxiliary variable X whose coefficients live in K[x];
// index = X-degree.
using XPoly = std::vector<Poly>;

// All Hasse derivatives d_0 L, ..., d_D L with respect to X; in equal
// characteristic the binomial factors reduce mod p (Lucas), in mixed
// characteristic they stay exact integers.
std::vector<XPoly> hasse_derivatives(const XPoly& L, const BackendCfg& cfg);

XPoly xpoly_from_expansion(const QExpansion& e);
Poly xpoly_eval(const XPoly& L, const Poly& at);

// Coefficients [L(h), d_1 L(h), ..., d_D L(h)] of the Taylor expansion of F
// with respect to h = Q - Q_rho, where L is the Q-expansion of F.  Verifies
// the reconstruction sum d_i L(h) Q_rho^i = F and aborts on mismatch.
std::vector<Poly> taylor_expand(const Poly& F, const Poly& Q_rho, const Poly& h_rho);

// Evaluation at a point of K.  Exact data evaluates by Horner; lazy data uses
// the power form so certified errors stay sharp under Frobenius.
SeriesElem poly_eval(const Poly& f, const SeriesElem& at, int budget = kDefaultBudget);

// C(n, k) in the coefficient field of the backend.
Coeff binomial_coeff(const BackendCfg& cfg, unsigned long n, unsigned long k);

}  // namespace valdef

#endif
