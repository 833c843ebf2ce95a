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

#include "valdef/valuation.hpp"

namespace valdef {

NuOracle NuOracle::root_eval(Poly g, SeriesElem eta, int budget) {
    NuOracle o(std::move(g), budget);
    o.root_ = true;
    o.eta_ = std::move(eta);
    return o;
}

NuOracle NuOracle::shortcut(Poly g, ExtCase kase, int budget) {
    if (!g.is_monic()) throw invariant_error("shortcut oracle requires monic g");
    NuOracle o(std::move(g), budget);
    o.root_ = false;
    o.case_ = kase;
    return o;
}

Value NuOracle::nu(const Poly& f) const {
    // nu is defined through the g-expansion: reduce first, and flag nu(g) = infinity
    // symbolically rather than evaluating at the root.
    Poly r = f;
    if (r.degree() >= g_.degree()) r = poly_divmod(r, g_).second;
    if (r.is_zero()) return Value::infinity();
    if (r.degree() == 0) return ser_val(r.coeff(0), budget_);
    if (root_) return ser_val(poly_eval(r, *eta_, budget_), budget_);
    // shortcut mode handles monic degree-1 queries through the g identity
    if (r.degree() == 1 && r.coeff(1).is_exact() &&
        r.coeff(1).exact() == FiniteSum::monomial(Rational(0), Coeff::one(r.cfg()))) {
        SeriesElem b = ser_neg(r.coeff(0));
        if (!b.is_exact())
            throw invariant_error("shortcut oracle needs exact approximants");
        return nu_xb_via_g(b.exact(), g_, *case_, budget_);
    }
    throw invariant_error("shortcut oracle cannot evaluate degree >= 1 non-key polynomials");
}

Value kummer_alpha(const BackendCfg& cfg) {
    if (cfg.kind != FieldKind::mixed_char)
        throw invariant_error("alpha is only defined in mixed characteristic");
    long p = static_cast<long>(cfg.p.get());
    // v(p) = 1 under the fixed normalization; checked where alpha is used.
    return Value(Rational(1) / Rational(p - 1));
}

Value nu_xb_via_g(const FiniteSum& b, const Poly& g, ExtCase kase, int budget) {
    if (!g.is_monic()) throw invariant_error("shortcut needs monic g");
    long p = g.degree();
    BackendCfg cfg = g.cfg();
    if (!Prime::is_prime(static_cast<unsigned long>(p)))
        throw invariant_error("shortcut needs deg(g) = p prime");
    SeriesElem gb = poly_eval(g, SeriesElem(cfg, b), budget);
    Value v = ser_val(gb, budget);
    if (v.is_infinite())
        throw invariant_error("shortcut hit an exact root of g");
    Value result = v.div(p);
    if (kase == ExtCase::artin_schreier) {
        if (!(result < Value(Rational(0))))
            throw invariant_error("shortcut radius exceeded: nu(x-b) = " + result.str() +
                                  " is not < 0 in the Artin-Schreier case");
    } else {
        Value alpha = kummer_alpha(cfg);
        Value vb = SeriesElem(cfg, b).is_exact_zero() ? Value::infinity()
                                                      : b.val(cfg);
        if (vb != Value(Rational(0)))
            throw invariant_error("shortcut requires v(b) = 0 in the Kummer case, got " + vb.str());
        if (!(result < alpha))
            throw invariant_error("shortcut radius exceeded: nu(x-b) = " + result.str() +
                                  " is not < alpha = " + alpha.str());
    }
    return result;
}

TruncResult nu_trunc(const Poly& f, const Poly& Q, const Value& gammaQ, const NuOracle& oracle) {
    if (!Q.is_monic() || Q.degree() < 1)
        throw invariant_error("truncation base must be monic of degree >= 1");
    QExpansion e = q_expansion(f, Q);
    if (gammaQ.is_infinite()) throw invariant_error("nu(Q) must be finite for truncation");
    TruncResult out{Value::infinity(), {}};
    for (int i : e.support) {
        Value v = oracle.nu(e.coeffs[static_cast<std::size_t>(i)]);
        if (i > 0) v = v + Value::scale(i, gammaQ);
        if (v < out.value) {
            out.value = v;
            out.argmin = {i};
        } else if (v == out.value) {
            out.argmin.insert(i);
        }
    }
    if (out.argmin.empty()) throw invariant_error("truncation of the zero polynomial");
    return out;
}

int deg_wrt(const Poly& f, const Poly& Q, const Value& gammaQ, const NuOracle& oracle) {
    TruncResult t = nu_trunc(f, Q, gammaQ, oracle);
    return *t.argmin.rbegin();
}

NewtonPolygon newton_polygon(const Poly& f, const Poly& Q, const NuOracle& oracle) {
    QExpansion e = q_expansion(f, Q);
    NewtonPolygon out;
    int top = static_cast<int>(e.coeffs.size()) - 1;
    for (int i = 0; i <= top; ++i) {
        Value v = e.coeffs[static_cast<std::size_t>(i)].is_zero()
                      ? Value::infinity()
                      : oracle.nu(e.coeffs[static_cast<std::size_t>(i)]);
        out.points.emplace_back(i, v);
    }
    // exact lower hull over the finite points
    std::vector<std::pair<int, Value>> finite;
    for (const auto& pt : out.points)
        if (pt.second.is_finite()) finite.push_back(pt);
    auto orient = [](const std::pair<int, Value>& a, const std::pair<int, Value>& b,
                     const std::pair<int, Value>& c) {
        // sign of (b-a) x (c-a)
        Rational bx(b.first - a.first), cx(c.first - a.first);
        Rational by = b.second.finite() - a.second.finite();
        Rational cy = c.second.finite() - a.second.finite();
        Rational cross = bx * cy - by * cx;
        return cross.sgn();
    };
    for (const auto& pt : finite) {
        while (out.vertices.size() >= 2 &&
               orient(out.vertices[out.vertices.size() - 2], out.vertices.back(), pt) <= 0)
            out.vertices.pop_back();
        out.vertices.push_back(pt);
    }
    return out;
}

bool pi_member(int k, const Value& beta_k, const PiLine& line) {
    if (k < 1 || k > line.defect_degree - 1)
        throw invariant_error("pi membership index out of range");
    if (beta_k.is_infinite()) return false;
    Value expected = line.Bbar + Value(-(line.B.finite() * Rational(k)));
    return beta_k == expected;
}

}  // namespace valdef
