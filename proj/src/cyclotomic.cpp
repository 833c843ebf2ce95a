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

#include "valdef/cyclotomic.hpp"

#include <algorithm>

namespace valdef {

CycElem::CycElem(unsigned long p, Rational c0) : p_(p), c_(p - 1, Rational(0)) {
    if (p < 2) throw config_error("cyclotomic field needs p >= 2");
    c_[0] = std::move(c0);
}

CycElem CycElem::zeta(unsigned long p) {
    if (p == 2) return CycElem(2, Rational(-1));  // zeta_2 = -1
    CycElem z = zero(p);
    z.c_[1] = Rational(1);
    return z;
}

CycElem CycElem::from_coords(unsigned long p, std::vector<Rational> coords) {
    if (coords.size() != p - 1) throw config_error("cyclotomic coordinate count mismatch");
    CycElem z = zero(p);
    z.c_ = std::move(coords);
    return z;
}

bool CycElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool CycElem::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

CycElem CycElem::operator+(const CycElem& o) const {
    check(o);
    CycElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CycElem CycElem::operator-(const CycElem& o) const {
    check(o);
    CycElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CycElem CycElem::operator-() const {
    CycElem r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycElem CycElem::scale(const Rational& s) const {
    CycElem r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

CycElem CycElem::operator*(const CycElem& o) const {
    check(o);
    std::size_t n = c_.size();  // p-1 coordinates
    std::vector<Rational> prod(2 * n - 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (o.c_[j].is_zero()) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    // reduce using zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
    for (std::size_t d = prod.size(); d-- > n;) {
        if (prod[d].is_zero()) continue;
        Rational coeff = prod[d];
        prod[d] = Rational(0);
        for (std::size_t j = 0; j < n; ++j) prod[d - n + j] -= coeff;
    }
    prod.resize(n);
    CycElem r = zero(p_);
    r.c_ = std::move(prod);
    return r;
}

bool CycElem::operator==(const CycElem& o) const {
    if (p_ != o.p_) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

// Determinant of a square rational matrix by fraction-aware Gaussian
// elimination; matrices here are at most (2p-3) x (2p-3).
static Rational determinant(std::vector<std::vector<Rational>> m) {
    std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational inv = Rational(1) / m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col].is_zero()) continue;
            Rational f = m[row][col] * inv;
            for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
        }
    }
    return det;
}

Rational CycElem::norm() const {
    if (is_zero()) return Rational(0);
    // Norm = product of c over all primitive p-th roots of unity
    //      = Res(Phi_p, c-as-polynomial) since Phi_p is monic.
    std::vector<Rational> g;
    for (const auto& x : c_) g.push_back(x);
    while (g.size() > 1 && g.back().is_zero()) g.pop_back();
    std::size_t dg = g.size() - 1;
    std::size_t df = p_ - 1;  // deg Phi_p
    if (dg == 0) return g[0].pow_int(static_cast<long>(df));
    // Sylvester matrix of Phi_p (all-ones coefficients) and g.
    std::size_t n = df + dg;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t row = 0; row < dg; ++row)
        for (std::size_t k = 0; k <= df; ++k) m[row][row + k] = Rational(1);
    for (std::size_t row = 0; row < df; ++row)
        for (std::size_t k = 0; k <= dg; ++k) m[dg + row][row + k] = g[dg - k];
    return determinant(std::move(m));
}

Value CycElem::val() const {
    if (is_zero()) return Value::infinity();
    Rational nrm = norm();
    if (nrm.is_zero()) throw invariant_error("zero norm for nonzero cyclotomic element");
    long vp = nrm.adic_val(p_);
    return Value(Rational(vp) / Rational(static_cast<long>(p_ - 1)));
}

std::optional<CycElem> CycElem::perfect_root(unsigned long n) const {
    if (!is_rational()) return std::nullopt;
    Rational root;
    if (!c_[0].nth_root(n, root)) return std::nullopt;
    return CycElem(p_, root);
}

}  // namespace valdef
