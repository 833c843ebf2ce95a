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

#include "valdef/plateau.hpp"

#include <algorithm>

#include "valdef/series_parse.hpp"

namespace valdef {

ApproxFamily::ApproxFamily(int degree, int limit, std::function<FamilyMember(int)> gen,
                           std::optional<Value> sup_hint, std::string label)
    : degree_(degree), limit_(limit), st_(std::make_shared<State>()) {
    if (limit < 1) throw invariant_error("approximant family needs at least one member");
    st_->gen = std::move(gen);
    st_->sup = std::move(sup_hint);
    st_->label = std::move(label);
}

FamilyMember ApproxFamily::member(int rho) const {
    if (rho < 1) throw invariant_error("family index must be >= 1");
    std::lock_guard<std::mutex> lock(st_->mu);
    auto it = st_->memo.find(rho);
    if (it != st_->memo.end()) return it->second;
    FamilyMember m = st_->gen(rho);
    if (m.Q.degree() != degree_) throw invariant_error("family member degree mismatch");
    if (!m.Q.is_monic()) throw invariant_error("family members must be monic");
    auto lo = st_->memo.lower_bound(rho);
    if (lo != st_->memo.begin()) {
        auto prev = std::prev(lo);
        if (!(prev->second.gamma < m.gamma))
            throw stepper_error(stepper_error::Kind::stalled,
                                "stalled: family values not strictly increasing in " + st_->label);
    }
    if (lo != st_->memo.end() && !(m.gamma < lo->second.gamma))
        throw stepper_error(stepper_error::Kind::stalled,
                            "stalled: family values not strictly increasing in " + st_->label);
    st_->memo.emplace(rho, m);
    return m;
}

// ---------------------------------------------------------------------------
// sup detection from an exactly geometric difference pattern

// Values e_0 < e_1 < ... with differences in exact geometric progression of
// ratio q in (0,1) determine sup e = e_last + delta_last * q/(1-q).  Returns
// nullopt unless the pattern is verified across all computed differences.
static std::optional<Value> geometric_sup(const std::vector<Value>& e) {
    if (e.size() < 3) return std::nullopt;
    std::vector<Rational> deltas;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        if (e[i].is_infinite() || e[i + 1].is_infinite()) return std::nullopt;
        deltas.push_back(e[i + 1].finite() - e[i].finite());
        if (deltas.back().sgn() <= 0) return std::nullopt;
    }
    Rational q = deltas[1] / deltas[0];
    if (!(Rational(0) < q) || !(q < Rational(1))) return std::nullopt;
    for (std::size_t i = 1; i + 1 < deltas.size(); ++i)
        if (deltas[i + 1] != deltas[i] * q) return std::nullopt;
    Rational tail = deltas.back() * q / (Rational(1) - q);
    return Value(e.back().finite() + tail);
}

// ---------------------------------------------------------------------------
// Artin-Schreier stepper

namespace {

struct ASState {
    SeriesElem a;
    int budget;
    // step data; index k >= 1
    std::vector<FiniteSum> b;        // b[k]
    std::vector<FiniteSum> acc;      // acc[k] = b[k] - b[k]^p, so residual_k = a + acc[k]
    std::vector<Value> e;            // e[k] = v(residual_k); e[0] = v(a)
    std::mutex mu;

    ASState(SeriesElem a_, int budget_) : a(std::move(a_)), budget(budget_) {
        b.push_back(FiniteSum());
        acc.push_back(FiniteSum());
        e.push_back(ser_val(a, budget));
    }

    void ensure(int k) {
        std::lock_guard<std::mutex> lock(mu);
        const BackendCfg& cfg = a.cfg();
        unsigned long p = cfg.p.get();
        while (static_cast<int>(b.size()) - 1 < k) {
            SeriesElem residual = ser_add(a, SeriesElem(cfg, acc.back()));
            Term lead = ser_val_leading_term(residual, budget);
            Value ev = Value(lead.exponent);
            if (ev > Value(Rational(0)))
                throw stepper_error(stepper_error::Kind::root_found,
                                    "residual has positive value: the root lies in K");
            if (ev == Value(Rational(0))) {
                // z^p - z = c0 has no solution in F_p for c0 != 0
                throw stepper_error(stepper_error::Kind::residue_unsolvable,
                                    "residue equation unsolvable: nonzero constant residue term");
            }
            auto root = lead.coeff.perfect_root(p);
            if (!root)
                throw stepper_error(stepper_error::Kind::coefficient_root_unavailable,
                                    "leading coefficient has no p-th root");
            FiniteSum s = FiniteSum::monomial(lead.exponent / Rational(static_cast<long>(p)), *root);
            FiniteSum sp = s.frobenius(cfg);
            b.push_back(b.back() + s);
            acc.push_back(acc.back() + s - sp);
            SeriesElem next = ser_add(a, SeriesElem(cfg, acc.back()));
            e.push_back(ser_val(next, budget));
        }
    }
};

}  // namespace

StepperOut as_root_stepper(const SeriesElem& a, int R, std::optional<Value> declared_sup_gamma,
                           const Poly* lift, int budget) {
    const BackendCfg& cfg = a.cfg();
    if (cfg.kind != FieldKind::equal_char)
        throw invariant_error("as_root_stepper requires the equal-characteristic backend");
    long p = static_cast<long>(cfg.p.get());
    Value va = ser_val(a, budget);
    if (!(va < Value(Rational(0)))) {
        if (va == Value(Rational(0)))
            throw stepper_error(stepper_error::Kind::residue_unsolvable,
                                "residue equation unsolvable: nonzero constant residue term");
        throw stepper_error(stepper_error::Kind::root_found,
                            "v(a) > 0: the root lies in K");
    }
    auto st = std::make_shared<ASState>(a, budget);
    st->ensure(R);

    // gamma_k = e_k / p
    std::vector<Value> evals(st->e.begin(), st->e.end());
    std::optional<Value> sup_e = geometric_sup(evals);
    std::optional<Value> sup_gamma;
    if (sup_e) sup_gamma = sup_e->div(p);
    if (declared_sup_gamma) {
        if (sup_gamma && *sup_gamma != *declared_sup_gamma)
            throw invariant_error("hint inconsistent: declared sup " + declared_sup_gamma->str() +
                                  " vs detected " + sup_gamma->str());
        sup_gamma = declared_sup_gamma;
    }
    if (!sup_gamma)
        throw stepper_error(stepper_error::Kind::pattern_undetected,
                            "pattern undetected: no sup hint available after " + std::to_string(R) +
                                " steps");

    Poly lift_poly = lift ? *lift : Poly::x(cfg);
    if (!lift_poly.is_monic()) throw invariant_error("family lift must be monic");
    std::string label = "as_root(" + a.str() + ")";

    auto gen = [st, lift_poly, cfg, p](int rho) -> FamilyMember {
        st->ensure(rho);
        Poly Q = lift_poly - Poly::constant(SeriesElem(cfg, st->b[static_cast<std::size_t>(rho)]));
        return FamilyMember{Q, st->e[static_cast<std::size_t>(rho)].div(p)};
    };
    ApproxFamily fam(lift_poly.degree(), R, gen, sup_gamma, label);

    auto eta_gen = [st, p](int n) -> Approx {
        st->ensure(n);
        return Approx{st->b[static_cast<std::size_t>(n)],
                      st->e[static_cast<std::size_t>(n)].div(p)};
    };
    LazySeries eta(eta_gen, sup_gamma, label);
    return StepperOut{SeriesElem(cfg, eta), fam};
}

// ---------------------------------------------------------------------------
// Kummer digit stepper

ApproxFamily newton_stepper(const Poly& g, const FiniteSum& b0, int R,
                            std::optional<Value> declared_sup_gamma, int budget) {
    const BackendCfg& cfg = g.cfg();
    if (cfg.kind != FieldKind::mixed_char)
        throw invariant_error("newton_stepper requires the mixed-characteristic backend");
    long p = g.degree();
    if (!Prime::is_prime(static_cast<unsigned long>(p)))
        throw invariant_error("newton_stepper needs deg(g) = p prime");
    if (!g.is_monic()) throw invariant_error("newton_stepper needs monic g");
    for (int i = 1; i < g.degree(); ++i)
        if (!g.coeff(i).is_exact_zero())
            throw invariant_error("newton_stepper needs the Kummer shape x^p - a");
    SeriesElem gp0 = poly_eval(g, SeriesElem(cfg, b0), budget);
    if (gp0.is_exact_zero())
        throw stepper_error(stepper_error::Kind::root_found, "root found: g(b0) = 0 exactly");

    std::vector<FiniteSum> bs{b0};
    std::vector<Value> evals;  // v(g(b_k))
    std::optional<Value> prev_gamma;
    for (int k = 0; k < R; ++k) {
        const FiniteSum& b = bs.back();
        SeriesElem gb = poly_eval(g, SeriesElem(cfg, b), budget);
        if (gb.is_exact_zero())
            throw stepper_error(stepper_error::Kind::root_found, "root found: g(b) = 0 exactly");
        Value gamma = nu_xb_via_g(b, g, ExtCase::kummer, budget);
        if (prev_gamma && !(*prev_gamma < gamma))
            throw stepper_error(stepper_error::Kind::stalled,
                                "stalled: gamma did not increase (" + gamma.str() + ")");
        prev_gamma = gamma;
        evals.push_back(Value::scale(p, gamma));
        // next digit: p-th root of the value-leading term of (a - b^p) = -g(b)
        Term lead = ser_val_leading_term(ser_neg(gb), budget);
        auto root = lead.coeff.perfect_root(static_cast<unsigned long>(p));
        if (!root)
            throw stepper_error(stepper_error::Kind::coefficient_root_unavailable,
                                "digit coefficient has no exact p-th root: " + lead.coeff.str());
        FiniteSum s = FiniteSum::monomial(lead.exponent / Rational(p), *root);
        // the digit must sit exactly at the current distance
        if (SeriesElem(cfg, s).is_exact_zero() || s.val(cfg) != gamma)
            throw invariant_error("digit value mismatch: expected " + gamma.str());
        bs.push_back(b + s);
    }

    std::optional<Value> sup_e = geometric_sup(evals);
    std::optional<Value> sup_gamma;
    if (sup_e) sup_gamma = sup_e->div(p);
    if (declared_sup_gamma) {
        if (sup_gamma && *sup_gamma != *declared_sup_gamma)
            throw invariant_error("hint inconsistent: declared sup " + declared_sup_gamma->str() +
                                  " vs detected " + sup_gamma->str());
        sup_gamma = declared_sup_gamma;
    }
    if (!sup_gamma)
        throw stepper_error(stepper_error::Kind::pattern_undetected,
                            "pattern undetected: no sup hint available after " + std::to_string(R) +
                                " steps");

    auto gens = std::make_shared<std::vector<FamilyMember>>();
    for (int rho = 1; rho <= R; ++rho) {
        const FiniteSum& b = bs[static_cast<std::size_t>(rho - 1)];
        Poly Q = Poly::x(cfg) - Poly::constant(SeriesElem(cfg, b));
        gens->push_back(FamilyMember{Q, evals[static_cast<std::size_t>(rho - 1)].div(p)});
    }
    // lookahead members for verification beyond R reuse the last digits
    auto g_copy = g;
    auto bs_copy = std::make_shared<std::vector<FiniteSum>>(bs);
    auto gen = [gens, g_copy, bs_copy, cfg, p, budget](int rho) -> FamilyMember {
        if (rho <= static_cast<int>(gens->size())) return (*gens)[static_cast<std::size_t>(rho - 1)];
        // extend deterministically
        while (static_cast<int>(bs_copy->size()) < rho) {
            const FiniteSum& b = bs_copy->back();
            SeriesElem gb = poly_eval(g_copy, SeriesElem(cfg, b), budget);
            Term lead = ser_val_leading_term(ser_neg(gb), budget);
            auto root = lead.coeff.perfect_root(static_cast<unsigned long>(p));
            if (!root)
                throw stepper_error(stepper_error::Kind::coefficient_root_unavailable,
                                    "digit coefficient has no exact p-th root");
            bs_copy->push_back(b + FiniteSum::monomial(lead.exponent / Rational(p), *root));
        }
        const FiniteSum& b = (*bs_copy)[static_cast<std::size_t>(rho - 1)];
        Poly Q = Poly::x(cfg) - Poly::constant(SeriesElem(cfg, b));
        return FamilyMember{Q, nu_xb_via_g(b, g_copy, ExtCase::kummer, budget)};
    };
    return ApproxFamily(1, R, gen, sup_gamma, "newton(" + g.str() + ")");
}

// ---------------------------------------------------------------------------
// plateau statistics and the J/B machinery

PlateauStats plateau_stats(const ApproxFamily& fam, const Poly& F, const NuOracle& oracle,
                           std::optional<Value> gamma_hint) {
    if (fam.limit() < 2) throw invariant_error("plateau statistics need >= 2 family members");
    std::optional<Value> B = gamma_hint;
    if (!B) B = fam.sup_hint();
    if (!B) throw invariant_error("B unknown: no generator sup hint and no user gamma hint");
    if (gamma_hint && fam.sup_hint() && *gamma_hint != *fam.sup_hint())
        throw invariant_error("hint inconsistent: user gamma hint " + gamma_hint->str() +
                              " vs generator sup " + fam.sup_hint()->str());
    int n = fam.degree();
    if (F.degree() < n) throw invariant_error("limit key polynomial degree below stage degree");
    int D = F.degree() / n;
    unsigned long p = F.cfg().p.get();
    int d = 0;
    for (long t = D; t > 1; t /= static_cast<long>(p), ++d)
        if (t % static_cast<long>(p) != 0)
            throw invariant_error("expansion length D = " + std::to_string(D) +
                                  " is not a power of p");
    Value Bbar = Value::scale(D, *B);
    for (int rho = 1; rho <= fam.limit(); ++rho) {
        FamilyMember m = fam.member(rho);
        if (!(m.gamma < *B))
            throw invariant_error("hint inconsistent: gamma_" + std::to_string(rho) + " = " +
                                  m.gamma.str() + " is not below B = " + B->str());
        Value lhs = nu_trunc(F, m.Q, m.gamma, oracle).value;
        if (lhs != Value::scale(D, m.gamma))
            throw invariant_error("nu_Q(F) = D nu(Q) cross-check failed at rho = " +
                                  std::to_string(rho) + ": " + lhs.str() + " vs D*gamma = " +
                                  Value::scale(D, m.gamma).str());
    }
    return PlateauStats{*B, Bbar, D, d};
}

std::set<int> j_set(const Poly& F, const Poly& Q_rho, const Value& gamma_rho, const Value& Bbar,
                    const NuOracle& oracle) {
    QExpansion e = q_expansion(F, Q_rho);
    int top = F.degree() / Q_rho.degree();
    std::set<int> J;
    for (int j = 1; j <= top; ++j) {
        Value v = Value::infinity();
        if (e.support.count(j))
            v = oracle.nu(e.coeffs[static_cast<std::size_t>(j)]) + Value::scale(j, gamma_rho);
        if (v > Bbar) J.insert(j);
    }
    return J;
}

static bool is_subset(const std::set<int>& a, const std::set<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

BSetResult b_set(const Poly& F, const ApproxFamily& fam, const PlateauStats& stats,
                 const NuOracle& oracle, int window) {
    if (window < 1) throw invariant_error("stabilization window must be >= 1");
    int R = fam.limit();
    if (R < window + 3)
        throw invariant_error("family too short: need >= 3 members beyond the stabilization window");
    std::vector<std::set<int>> history;
    for (int rho = 1; rho <= R; ++rho) {
        FamilyMember m = fam.member(rho);
        std::set<int> J = j_set(F, m.Q, m.gamma, stats.Bbar, oracle);
        if (!history.empty() && !is_subset(history.back(), J))
            throw invariant_error("J-monotonicity violated at rho = " + std::to_string(rho));
        history.push_back(J);
        if (rho < window) continue;
        bool stable = true;
        for (int w = 1; w < window; ++w)
            if (history[static_cast<std::size_t>(rho - 1 - w)] != J) stable = false;
        if (!stable) continue;
        // candidate stabilization: cross-check against the pi line
        std::set<int> Bn;
        for (int k = 1; k <= stats.D - 1; ++k)
            if (!J.count(k)) Bn.insert(k);
        PiLine line{stats.D, stats.d, stats.B, stats.Bbar};
        QExpansion e = q_expansion(F, m.Q);
        for (int k = 1; k <= stats.D - 1; ++k) {
            Value beta = e.support.count(k)
                             ? oracle.nu(e.coeffs[static_cast<std::size_t>(k)])
                             : Value::infinity();
            bool on_line = pi_member(k, beta, line);
            if (on_line != static_cast<bool>(Bn.count(k)))
                throw invariant_error("pi-line disagreement at k = " + std::to_string(k) +
                                      ": beta = " + beta.str());
        }
        unsigned long p = F.cfg().p.get();
        for (int k : Bn) {
            long t = k;
            while (t % static_cast<long>(p) == 0) t /= static_cast<long>(p);
            if (t != 1)
                throw invariant_error("non-p-power member of B_n: " + std::to_string(k));
        }
        return BSetResult{Bn, rho, history};
    }
    throw invariant_error("J sets not stabilized within R = " + std::to_string(R));
}

Poly reduced_limit_kp(const Poly& F, const ApproxFamily& fam, int rho, const std::set<int>& S,
                      const PlateauStats& stats, const NuOracle& oracle, bool verify) {
    FamilyMember m = fam.member(rho);
    QExpansion e = q_expansion(F, m.Q);
    int D = stats.D;
    if (static_cast<int>(e.coeffs.size()) - 1 != D)
        throw invariant_error("expansion length mismatch in reduced limit key polynomial");
    const Poly& top = e.coeffs[static_cast<std::size_t>(D)];
    if (!(top.degree() == 0 && top.coeff(0).is_exact() &&
          top.coeff(0).exact() == FiniteSum::monomial(Rational(0), Coeff::one(F.cfg()))))
        throw invariant_error("leading expansion coefficient a_D(F) != 1");
    for (int s : S)
        if (s < 1 || s > D - 1) throw invariant_error("reduction set S not inside {1..D-1}");
    Poly out = e.coeffs[0];
    for (int s : S) {
        if (!e.support.count(s)) continue;  // zero coefficient contributes nothing
        out = out + e.coeffs[static_cast<std::size_t>(s)] * m.Q.pow(static_cast<unsigned>(s));
    }
    out = out + m.Q.pow(static_cast<unsigned>(D));
    if (verify) {
        for (int next = rho + 1; next <= rho + 3; ++next) {
            FamilyMember mn = fam.member(next);
            Value lhs = nu_trunc(out, mn.Q, mn.gamma, oracle).value;
            Value rhs = nu_trunc(F, mn.Q, mn.gamma, oracle).value;
            if (lhs != rhs)
                throw invariant_error("verification failed: nu_Q(F_S) = " + lhs.str() +
                                      " differs from nu_Q(F) = " + rhs.str() + " at rho = " +
                                      std::to_string(next));
        }
    }
    return out;
}

int plateau_defect(const Poly& F, const ApproxFamily& fam, const PlateauStats& stats,
                   const NuOracle& oracle) {
    int n = fam.degree();
    if (F.degree() % n != 0)
        throw invariant_error("deg(F) not divisible by the stage degree");
    int D = F.degree() / n;
    if (D != stats.D) throw invariant_error("defect disagrees with expansion length");
    for (int rho = std::max(1, fam.limit() - 2); rho <= fam.limit(); ++rho) {
        FamilyMember m = fam.member(rho);
        int dq = deg_wrt(F, m.Q, m.gamma, oracle);
        if (dq != D)
            throw invariant_error("deg_Q(F) = " + std::to_string(dq) + " != deg(F)/deg(Q) = " +
                                  std::to_string(D) + " at rho = " + std::to_string(rho));
    }
    return D;
}

DefectReport analyze_extension(const Poly& g, const std::vector<StageRun>& stages,
                               const NuOracle& oracle, int window) {
    if (stages.empty()) throw config_error("no stages supplied");
    for (std::size_t i = 0; i + 1 < stages.size(); ++i)
        if (!(stages[i].fam.degree() < stages[i + 1].fam.degree()))
            throw config_error("stage degrees must strictly increase");
    unsigned long p = g.cfg().p.get();
    DefectReport report;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        try {
        const StageRun& st = stages[i];
        Poly F = (i + 1 < stages.size())
                     ? stages[i + 1].fam.member(stages[i + 1].limit_index).Q
                     : g;
        PlateauStats stats = plateau_stats(st.fam, F, oracle, st.gamma_hint);
        BSetResult bres = b_set(F, st.fam, stats, oracle, window);
        PlateauRecord rec(g.cfg());
        rec.n = st.fam.degree();
        rec.B = stats.B;
        rec.Bbar = stats.Bbar;
        rec.D = stats.D;
        rec.d = stats.d;
        rec.J_history = bres.J_history;
        rec.B_n = bres.B_n;
        rec.stabilization_index = bres.stabilization_index;
        rec.F = F;
        for (int k : bres.B_n) {
            int j = 0;
            for (long t = k; t > 1; t /= static_cast<long>(p)) ++j;
            rec.I.insert(j);
        }
        // Theorem-style containment: p^{I} subset of L_Q(F) at the certified window
        for (int rho = bres.stabilization_index;
             rho <= std::min(bres.stabilization_index + 2, st.fam.limit()); ++rho) {
            QExpansion e = q_expansion(F, st.fam.member(rho).Q);
            for (int k : bres.B_n)
                if (!e.support.count(k))
                    throw invariant_error("B_n not contained in L_Q(F) at rho = " +
                                          std::to_string(rho));
        }
        rec.F_reduced = reduced_limit_kp(F, st.fam, bres.stabilization_index, bres.B_n, stats,
                                         oracle, /*verify=*/true);
        int D = plateau_defect(F, st.fam, stats, oracle);
        (void)D;
        report.plateaus.push_back(std::move(rec));
        report.total_defect_exponent += stats.d;
        } catch (const stepper_error&) {
            throw;
        } catch (const precision_error& e) {
            throw precision_error("stage " + std::to_string(i + 1) + ": " + e.what());
        } catch (const invariant_error& e) {
            throw invariant_error("stage " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    report.total_defect = 1;
    for (int i = 0; i < report.total_defect_exponent; ++i)
        report.total_defect *= static_cast<long>(p);
    return report;
}

void register_plateau_builtins() {
    register_builtin("as_root",
                     [](const std::vector<std::string>& args, const BackendCfg& cfg, int budget) {
                         if (args.size() != 1)
                             throw parse_error("as_root expects one series argument", 0);
                         if (cfg.kind != FieldKind::equal_char)
                             throw parse_error("as_root requires the equal-characteristic backend", 0);
                         SeriesElem a = parse_series(args[0], cfg, budget);
                         Value va = ser_val(a, budget);
                         if (!(va < Value(Rational(0)))) {
                             if (va == Value(Rational(0)))
                                 throw stepper_error(stepper_error::Kind::residue_unsolvable,
                                                     "residue equation unsolvable: v(a) = 0");
                             throw stepper_error(stepper_error::Kind::root_found,
                                                 "v(a) > 0: the root lies in K");
                         }
                         long p = static_cast<long>(cfg.p.get());
                         auto st = std::make_shared<ASState>(a, budget);
                         st->ensure(4);
                         std::optional<Value> sup;
                         if (auto se = geometric_sup(st->e)) sup = se->div(p);
                         std::string label = "as_root(" + a.str() + ")";
                         auto eta_gen = [st, p](int n) -> Approx {
                             st->ensure(n);
                             return Approx{st->b[static_cast<std::size_t>(n)],
                                           st->e[static_cast<std::size_t>(n)].div(p)};
                         };
                         return SeriesElem(cfg, LazySeries(eta_gen, sup, label));
                     });
}

}  // namespace valdef
