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

#include "valdef/poly.hpp"

#include <algorithm>

namespace valdef {

Poly::Poly(BackendCfg cfg, std::vector<SeriesElem> coeffs)
    : cfg_(std::move(cfg)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (c.cfg() != cfg_) throw invariant_error("polynomial coefficient backend mismatch");
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

Poly Poly::constant(SeriesElem c) {
    BackendCfg cfg = c.cfg();
    return Poly(cfg, {std::move(c)});
}

Poly Poly::x(const BackendCfg& cfg) { return x_pow(cfg, 1); }

Poly Poly::x_pow(const BackendCfg& cfg, int k) {
    std::vector<SeriesElem> c(static_cast<std::size_t>(k) + 1, SeriesElem::zero(cfg));
    c.back() = SeriesElem::one(cfg);
    return Poly(cfg, std::move(c));
}

const SeriesElem& Poly::coeff(int i) const {
    static const SeriesElem* dummy = nullptr;
    (void)dummy;
    if (i < 0 || i >= static_cast<int>(c_.size()))
        throw invariant_error("polynomial coefficient index out of range");
    return c_[static_cast<std::size_t>(i)];
}

bool Poly::is_monic() const {
    if (c_.empty()) return false;
    const SeriesElem& l = c_.back();
    if (!l.is_exact()) return false;
    return l.exact() == FiniteSum::monomial(Rational(0), Coeff::one(cfg_));
}

Poly Poly::operator+(const Poly& o) const {
    if (cfg_ != o.cfg_) throw invariant_error("polynomial arithmetic across backends");
    std::vector<SeriesElem> out;
    std::size_t n = std::max(c_.size(), o.c_.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < c_.size() && i < o.c_.size())
            out.push_back(ser_add(c_[i], o.c_[i]));
        else if (i < c_.size())
            out.push_back(c_[i]);
        else
            out.push_back(o.c_[i]);
    }
    return Poly(cfg_, std::move(out));
}

Poly Poly::operator-() const {
    std::vector<SeriesElem> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(ser_neg(c));
    return Poly(cfg_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (cfg_ != o.cfg_) throw invariant_error("polynomial arithmetic across backends");
    if (is_zero() || o.is_zero()) return zero(cfg_);
    std::vector<SeriesElem> out(c_.size() + o.c_.size() - 1, SeriesElem::zero(cfg_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_exact_zero()) continue;
            out[i + j] = ser_add(out[i + j], ser_mul(c_[i], o.c_[j]));
        }
    }
    return Poly(cfg_, std::move(out));
}

Poly Poly::pow(unsigned k) const {
    Poly acc = constant(SeriesElem::one(cfg_));
    Poly base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Poly Poly::scale(const SeriesElem& s) const {
    std::vector<SeriesElem> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(ser_mul(c, s));
    return Poly(cfg_, std::move(out));
}

Poly Poly::scale_int(long n) const { return scale(SeriesElem::from_int(cfg_, n)); }

Poly Poly::shift(int k) const {
    if (is_zero()) return *this;
    std::vector<SeriesElem> out(static_cast<std::size_t>(k), SeriesElem::zero(cfg_));
    out.insert(out.end(), c_.begin(), c_.end());
    return Poly(cfg_, std::move(out));
}

bool Poly::equal_exact(const Poly& o) const {
    if (degree() != o.degree()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!ser_equal_exact(c_[i], o.c_[i])) return false;
    return true;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const SeriesElem& c = c_[static_cast<std::size_t>(i)];
        if (c.is_exact_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string cs = c.str();
        bool is_one = c.is_exact() && c.exact() == FiniteSum::monomial(Rational(0), Coeff::one(cfg_));
        if (i == 0) {
            s += (c.is_exact() && c.exact().size() > 1) ? "(" + cs + ")" : cs;
        } else {
            if (!is_one) s += ((c.is_exact() && c.exact().size() > 1) ? "(" + cs + ")" : cs) + "*";
            s += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& Q) {
    if (!Q.is_monic() || Q.degree() < 1)
        throw invariant_error("division requires a monic divisor of degree >= 1");
    BackendCfg cfg = f.cfg();
    std::vector<SeriesElem> rem(f.coeffs());
    int dq = Q.degree();
    int df = static_cast<int>(rem.size()) - 1;
    if (df < dq) return {Poly::zero(cfg), f};
    std::vector<SeriesElem> quot(static_cast<std::size_t>(df - dq) + 1, SeriesElem::zero(cfg));
    for (int i = df; i >= dq; --i) {
        SeriesElem lead = rem[static_cast<std::size_t>(i)];
        if (lead.is_exact_zero()) continue;
        quot[static_cast<std::size_t>(i - dq)] = lead;
        // subtract lead * x^(i-dq) * Q
        for (int j = 0; j <= dq; ++j) {
            const SeriesElem& qc = Q.coeff(j);
            if (qc.is_exact_zero()) continue;
            std::size_t idx = static_cast<std::size_t>(i - dq + j);
            rem[idx] = ser_sub(rem[idx], ser_mul(lead, qc));
        }
        if (!rem[static_cast<std::size_t>(i)].is_exact_zero())
            throw invariant_error("division requires exact leading coefficients");
    }
    rem.erase(rem.begin() + dq, rem.end());
    return {Poly(cfg, std::move(quot)), Poly(cfg, std::move(rem))};
}

QExpansion q_expansion(const Poly& f, const Poly& Q) {
    QExpansion e{Q, {}, {}};
    Poly rest = f;
    int i = 0;
    while (!rest.is_zero()) {
        if (rest.degree() < Q.degree()) {
            e.coeffs.push_back(rest);
            e.support.insert(i);
            break;
        }
        auto [q, r] = poly_divmod(rest, Q);
        e.coeffs.push_back(r);
        if (!r.is_zero()) e.support.insert(i);
        rest = q;
        ++i;
    }
    return e;
}

Poly QExpansion::reconstruct() const {
    BackendCfg cfg = base.cfg();
    Poly acc = Poly::zero(cfg);
    Poly qp = Poly::constant(SeriesElem::one(cfg));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        acc = acc + coeffs[i] * qp;
        if (i + 1 < coeffs.size()) qp = qp * base;
    }
    return acc;
}

Coeff binomial_coeff(const BackendCfg& cfg, unsigned long n, unsigned long k) {
    if (cfg.kind == FieldKind::mixed_char)
        return Coeff::from_cyc(CycElem(cfg.p.get(), Rational::binomial(n, k)));
    // Lucas: C(n,k) mod p is the product of digitwise binomials base p.
    unsigned long p = cfg.p.get();
    unsigned long acc = 1;
    while (n || k) {
        unsigned long nd = n % p, kd = k % p;
        if (kd > nd) return Coeff::from_fp(FpElem(0, p));
        unsigned long c = 1;
        for (unsigned long i = 0; i < kd; ++i) c = c * (nd - i) / (i + 1);
        acc = (acc * (c % p)) % p;
        n /= p;
        k /= p;
    }
    return Coeff::from_fp(FpElem(static_cast<long>(acc), p));
}

std::vector<XPoly> hasse_derivatives(const XPoly& L, const BackendCfg& cfg) {
    int D = static_cast<int>(L.size()) - 1;
    while (D >= 0 && L[static_cast<std::size_t>(D)].is_zero()) --D;
    std::vector<XPoly> out;
    for (int i = 0; i <= std::max(D, 0); ++i) {
        XPoly di;
        for (int n = i; n <= D; ++n) {
            Coeff b = binomial_coeff(cfg, static_cast<unsigned long>(n), static_cast<unsigned long>(i));
            Poly term = L[static_cast<std::size_t>(n)].scale(
                SeriesElem::monomial(cfg, Rational(0), b));
            di.push_back(term);
        }
        if (di.empty()) di.push_back(Poly::zero(cfg));
        out.push_back(std::move(di));
    }
    return out;
}

XPoly xpoly_from_expansion(const QExpansion& e) { return e.coeffs; }

Poly xpoly_eval(const XPoly& L, const Poly& at) {
    BackendCfg cfg = at.cfg();
    Poly acc = Poly::zero(cfg);
    for (std::size_t i = L.size(); i-- > 0;) {
        acc = acc * at + L[i];
    }
    return acc;
}

std::vector<Poly> taylor_expand(const Poly& F, const Poly& Q_rho, const Poly& h_rho) {
    BackendCfg cfg = F.cfg();
    Poly Q = Q_rho + h_rho;
    if (!Q.is_monic()) throw invariant_error("taylor expansion base must be monic");
    if (h_rho.degree() >= Q_rho.degree())
        throw invariant_error("taylor expansion needs deg(h) < deg(Q_rho)");
    QExpansion e = q_expansion(F, Q);
    XPoly L = xpoly_from_expansion(e);
    std::vector<XPoly> derivs = hasse_derivatives(L, cfg);
    std::vector<Poly> out;
    out.reserve(derivs.size());
    for (const auto& d : derivs) out.push_back(xpoly_eval(d, h_rho));
    // reconstruction check: sum out[i] * Q_rho^i == F
    Poly acc = Poly::zero(cfg);
    Poly qp = Poly::constant(SeriesElem::one(cfg));
    for (std::size_t i = 0; i < out.size(); ++i) {
        acc = acc + out[i] * qp;
        if (i + 1 < out.size()) qp = qp * Q_rho;
    }
    Poly diff = acc - F;
    for (int i = 0; i <= diff.degree(); ++i)
        if (!ser_probably_zero(diff.coeff(i)))
            throw invariant_error("taylor expansion reconstruction mismatch");
    return out;
}

SeriesElem poly_eval(const Poly& f, const SeriesElem& at, int budget) {
    BackendCfg cfg = f.cfg();
    if (f.is_zero()) return SeriesElem::zero(cfg);
    bool all_exact = at.is_exact();
    for (int i = 0; i <= f.degree() && all_exact; ++i) all_exact = f.coeff(i).is_exact();
    if (all_exact) {
        SeriesElem acc = SeriesElem::zero(cfg);
        for (int i = f.degree(); i >= 0; --i) acc = ser_add(ser_mul(acc, at, budget), f.coeff(i));
        return acc;
    }
    // power form keeps lazy certificates sharp (Frobenius powers stay exact)
    SeriesElem acc = SeriesElem::zero(cfg);
    for (int i = 0; i <= f.degree(); ++i) {
        const SeriesElem& c = f.coeff(i);
        if (c.is_exact_zero()) continue;
        SeriesElem term = (i == 0) ? c : ser_mul(c, ser_pow(at, static_cast<unsigned long>(i), budget), budget);
        acc = ser_add(acc, term);
    }
    return acc;
}

}  // namespace valdef
