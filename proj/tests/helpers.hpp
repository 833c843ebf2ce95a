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

#ifndef VALDEF_TESTS_HELPERS_HPP
#define VALDEF_TESTS_HELPERS_HPP

#include <random>

#include "valdef/classify.hpp"
#include "valdef/plateau.hpp"
#include "valdef/series_parse.hpp"

namespace vt {

using namespace valdef;

inline BackendCfg eq(unsigned long p) { return BackendCfg{FieldKind::equal_char, Prime(p)}; }
inline BackendCfg mx(unsigned long p) { return BackendCfg{FieldKind::mixed_char, Prime(p)}; }

inline void ensure_builtins() {
    static bool done = [] {
        register_plateau_builtins();
        return true;
    }();
    (void)done;
}

inline Rational rat(const std::string& s) { return Rational::parse(s); }
inline Value val(const std::string& s) {
    if (s == "inf") return Value::infinity();
    return Value(Rational::parse(s));
}

inline SeriesElem ser(const std::string& text, const BackendCfg& cfg) {
    ensure_builtins();
    return parse_series(text, cfg);
}

inline Poly pol(const std::string& text, const BackendCfg& cfg) {
    ensure_builtins();
    return parse_poly(text, cfg);
}

// Deterministic random exact series with small support.
inline SeriesElem random_series(std::mt19937_64& rng, const BackendCfg& cfg, int max_terms = 3,
                                bool allow_zero = true) {
    std::uniform_int_distribution<int> nterms(allow_zero ? 0 : 1, max_terms);
    std::uniform_int_distribution<long> num(-8, 8);
    std::uniform_int_distribution<long> den(1, 6);
    std::uniform_int_distribution<long> cyc_num(-5, 5);
    int n = nterms(rng);
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
        Rational e = Rational(num(rng)) / Rational(den(rng));
        Coeff c = Coeff::one(cfg);
        if (cfg.kind == FieldKind::equal_char) {
            c = Coeff::from_fp(FpElem(num(rng), cfg.p.get()));
        } else {
            std::vector<Rational> coords(cfg.p.get() - 1, Rational(0));
            for (auto& x : coords) x = Rational(cyc_num(rng)) / Rational(den(rng));
            c = Coeff::from_cyc(CycElem::from_coords(cfg.p.get(), coords));
        }
        terms.push_back(Term{e, c});
    }
    FiniteSum s = FiniteSum::from_terms(std::move(terms));
    if (!allow_zero && s.is_zero()) return SeriesElem::one(cfg);
    return SeriesElem(cfg, s);
}

inline Poly random_poly(std::mt19937_64& rng, const BackendCfg& cfg, int max_deg,
                        bool monic = false) {
    std::uniform_int_distribution<int> degd(monic ? 1 : 0, max_deg);
    int d = degd(rng);
    std::vector<SeriesElem> coeffs;
    for (int i = 0; i <= d; ++i) coeffs.push_back(random_series(rng, cfg, 2));
    if (monic)
        coeffs.back() = SeriesElem::one(cfg);
    else if (coeffs.back().is_exact_zero())
        coeffs.back() = SeriesElem::one(cfg);
    return Poly(cfg, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// worked example fixtures

struct DegreePFixture {
    BackendCfg cfg;
    Poly g;
    ApproxFamily fam;
    NuOracle oracle;
    std::optional<SeriesElem> eta;
};

inline DegreePFixture independent_as(unsigned long p, int R = 12) {
    ensure_builtins();
    BackendCfg cfg = eq(p);
    Poly g = pol("x^" + std::to_string(p) + " - x - t^(-1)", cfg);
    SeriesElem a = ser("t^(-1)", cfg);
    StepperOut out = as_root_stepper(a, R);
    NuOracle oracle = NuOracle::root_eval(g, out.eta);
    return DegreePFixture{cfg, g, out.family, oracle, out.eta};
}

inline DegreePFixture dependent_as(int R = 12) {
    ensure_builtins();
    BackendCfg cfg = eq(2);
    Poly g = pol("x^2 + x + geo_tail(-2,0) + geo_tail(-1,1)", cfg);
    SeriesElem a = ser("geo_tail(-2,0) + geo_tail(-1,1)", cfg);
    StepperOut out = as_root_stepper(a, R);
    NuOracle oracle = NuOracle::root_eval(g, out.eta);
    return DegreePFixture{cfg, g, out.family, oracle, out.eta};
}

inline DegreePFixture kummer2(int R = 12) {
    ensure_builtins();
    BackendCfg cfg = mx(2);
    Poly g = pol("x^2 - (1 + geo_tail(1,1))^2", cfg);
    ApproxFamily fam = newton_stepper(g, ser("1", cfg).exact(), R);
    NuOracle oracle = NuOracle::shortcut(g, ExtCase::kummer);
    return DegreePFixture{cfg, g, fam, oracle, std::nullopt};
}

struct TowerFixture {
    BackendCfg cfg;
    Poly g;
    std::vector<StageRun> stages;
    NuOracle oracle;
};

inline TowerFixture tower2(int R = 12) {
    ensure_builtins();
    BackendCfg cfg = eq(2);
    Poly g = pol("(x^2 + x)^2 + (x^2 + x) + t^(-1)", cfg);
    StepperOut st1 = as_root_stepper(ser("as_root(t^(-1))", cfg), R);
    Poly lift = pol("x^2 + x", cfg);
    StepperOut st2 = as_root_stepper(ser("t^(-1)", cfg), R, std::nullopt, &lift);
    NuOracle oracle = NuOracle::root_eval(g, st1.eta);
    std::vector<StageRun> stages;
    stages.push_back(StageRun{st1.family, std::nullopt, 0});
    stages.push_back(StageRun{st2.family, std::nullopt, 2 * R + 5});
    return TowerFixture{cfg, g, std::move(stages), oracle};
}

}  // namespace vt

#endif
