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

#include "valdef/classify.hpp"

namespace valdef {

static bool coeff_equals_int(const SeriesElem& c, long n) {
    if (!c.is_exact()) return false;
    return c.exact() == SeriesElem::from_int(c.cfg(), n).exact();
}

SeriesElem extract_as_a(const Poly& g) {
    const BackendCfg& cfg = g.cfg();
    long p = g.degree();
    if (cfg.kind != FieldKind::equal_char)
        throw config_error("Artin-Schreier case requires the equal-characteristic backend");
    if (!g.is_monic() || p < 2 || !Prime::is_prime(static_cast<unsigned long>(p)) ||
        static_cast<long>(cfg.p.get()) != p)
        throw config_error("Artin-Schreier case needs monic g of degree p");
    if (!coeff_equals_int(g.coeff(1), -1))
        throw config_error("g does not have the Artin-Schreier shape x^p - x - a");
    for (int i = 2; i < g.degree(); ++i)
        if (!g.coeff(i).is_exact_zero())
            throw config_error("g does not have the Artin-Schreier shape x^p - x - a");
    return ser_neg(g.coeff(0));
}

SeriesElem extract_kummer_a(const Poly& g) {
    const BackendCfg& cfg = g.cfg();
    long p = g.degree();
    if (cfg.kind != FieldKind::mixed_char)
        throw config_error("Kummer case requires the mixed-characteristic backend");
    if (!g.is_monic() || p < 2 || !Prime::is_prime(static_cast<unsigned long>(p)) ||
        static_cast<long>(cfg.p.get()) != p)
        throw config_error("Kummer case needs monic g of degree p");
    for (int i = 1; i < g.degree(); ++i)
        if (!g.coeff(i).is_exact_zero())
            throw config_error("g does not have the Kummer shape x^p - a");
    return ser_neg(g.coeff(0));
}

ClassifyResult classify_degree_p(const Poly& g, ExtCase kase, const StageRun& stage,
                                 const NuOracle& oracle, int window) {
    const BackendCfg& cfg = g.cfg();
    long p = g.degree();
    ClassifyResult res(cfg);
    res.kase = kase;

    if (stage.fam.degree() != 1)
        throw config_error("degree-p classification runs on a degree-1 approximant family");

    if (kase == ExtCase::artin_schreier) {
        extract_as_a(g);  // shape check
    } else {
        SeriesElem a = extract_kummer_a(g);
        Value va = ser_val(a, oracle.budget());
        if (va != Value(Rational(0)))
            throw config_error("Kummer case requires v(a) = 0, got " + va.str());
        // normalization check: v(p) = 1
        Value vp = CycElem(cfg.p.get(), Rational(static_cast<long>(p))).val();
        if (vp != Value(Rational(1)))
            throw invariant_error("valuation normalization violated: v(p) = " + vp.str());
        res.alpha = kummer_alpha(cfg);
    }

    PlateauStats stats = plateau_stats(stage.fam, g, oracle, stage.gamma_hint);
    if (stats.B.is_infinite()) throw invariant_error("plateau bound B must be finite");
    if (stats.D != p) throw invariant_error("degree-p run must have D = p");

    // per-member bound and shortcut-identity checks
    Value zero(Rational(0));
    Cut delta{Value::scale(p, stats.B), false};
    for (int rho = 1; rho <= stage.fam.limit(); ++rho) {
        FamilyMember m = stage.fam.member(rho);
        if (kase == ExtCase::artin_schreier) {
            if (!(m.gamma < zero))
                throw invariant_error("AS bound violated: gamma_rho = " + m.gamma.str());
        } else {
            if (!(m.gamma < *res.alpha))
                throw invariant_error("Kummer bound violated: gamma_rho = " + m.gamma.str());
        }
        // nu_{x-b}(g) = v(g(b)) = p * nu(x-b), all strictly inside the delta cut
        Value vg = ser_val(poly_eval(g, ser_neg(m.Q.coeff(0)), oracle.budget()), oracle.budget());
        Value nq = nu_trunc(g, m.Q, m.gamma, oracle).value;
        Value pg = Value::scale(p, m.gamma);
        if (vg != pg || nq != pg)
            throw invariant_error("shortcut identity failed at rho = " + std::to_string(rho) +
                                  ": v(g(b)) = " + vg.str() + ", nu_Q(g) = " + nq.str() +
                                  ", p*gamma = " + pg.str());
        if (cut_compare(delta, nq) != CutPosition::inside_lower_set)
            throw invariant_error("nu_{x-b}(g) escaped the delta cut at rho = " +
                                  std::to_string(rho));
    }

    BSetResult bres = b_set(g, stage.fam, stats, oracle, window);
    for (int k : bres.B_n) {
        int j = 0;
        for (long t = k; t > 1; t /= p) ++j;
        res.I1.insert(j);
    }

    bool route1;
    if (kase == ExtCase::artin_schreier)
        route1 = (stats.B == zero);
    else
        route1 = (stats.B == *res.alpha);
    bool route2 = (res.I1 == std::set<int>{0});
    res.independent = route1;
    res.routes_agree = (route1 == route2);

    res.gamma = Cut{stats.B, false};
    res.delta = delta;

    res.plateau.n = 1;
    res.plateau.B = stats.B;
    res.plateau.Bbar = stats.Bbar;
    res.plateau.D = stats.D;
    res.plateau.d = stats.d;
    res.plateau.J_history = bres.J_history;
    res.plateau.B_n = bres.B_n;
    res.plateau.I = res.I1;
    res.plateau.stabilization_index = bres.stabilization_index;
    res.plateau.F = g;
    res.plateau.F_reduced = reduced_limit_kp(g, stage.fam, bres.stabilization_index, bres.B_n,
                                             stats, oracle, /*verify=*/true);
    plateau_defect(g, stage.fam, stats, oracle);
    return res;
}

}  // namespace valdef
