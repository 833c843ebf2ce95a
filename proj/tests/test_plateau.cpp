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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace vt;

TEST_CASE("AS stepper on the independent example") {
    auto cfg = eq(2);
    StepperOut out = as_root_stepper(ser("t^(-1)", cfg), 12);
    CHECK(out.eta.lazy().at(1).sum == ser("t^(-1/2)", cfg).exact());
    CHECK(out.eta.lazy().at(2).sum == ser("t^(-1/2) + t^(-1/4)", cfg).exact());
    for (int k = 1; k <= 12; ++k) {
        FamilyMember m = out.family.member(k);
        CHECK(m.gamma == Value(rat("-1") / rat("2").pow_int(k + 1)));
    }
    REQUIRE(out.family.sup_hint().has_value());
    CHECK(*out.family.sup_hint() == val("0"));
}

TEST_CASE("AS stepper for p = 3 and p = 5") {
    StepperOut o3 = as_root_stepper(ser("t^(-1)", eq(3)), 8);
    CHECK(o3.eta.lazy().at(1).sum == ser("t^(-1/3)", eq(3)).exact());
    CHECK(o3.family.member(1).gamma == val("-1/9"));
    StepperOut o5 = as_root_stepper(ser("t^(-1)", eq(5)), 6);
    CHECK(o5.family.member(1).gamma == val("-1/25"));
    CHECK(*o5.family.sup_hint() == val("0"));
}

TEST_CASE("AS stepper rejects residual and trivial extensions") {
    auto cfg = eq(2);
    CHECK_THROWS_AS(as_root_stepper(ser("1", cfg), 4), stepper_error);
    try {
        as_root_stepper(ser("1", cfg), 4);
    } catch (const stepper_error& e) {
        CHECK(e.kind == stepper_error::Kind::residue_unsolvable);
    }
    try {
        as_root_stepper(ser("t^(1)", cfg), 4);
    } catch (const stepper_error& e) {
        CHECK(e.kind == stepper_error::Kind::root_found);
    }
    // v(a) < 0 but the residue appears mid-run: a = (t^-2 + t^-1) + 1, the
    // negative part cancels after one step and leaves the constant 1
    try {
        as_root_stepper(ser("t^(-2) + t^(-1) + 1", cfg), 8);
        CHECK(false);
    } catch (const stepper_error& e) {
        CHECK(e.kind == stepper_error::Kind::residue_unsolvable);
    }
}

TEST_CASE("AS stepper on the dependent tail pattern") {
    DegreePFixture fx = dependent_as(12);
    for (int k = 1; k <= 12; ++k) {
        Value expect(rat("-1") - Rational(1) / rat("2").pow_int(k + 1));
        CHECK(fx.fam.member(k).gamma == expect);
    }
    REQUIRE(fx.fam.sup_hint().has_value());
    CHECK(*fx.fam.sup_hint() == val("-1"));
    // b_1 = t^(-3/2), v(g(b_1)) = -5/2
    Poly Q1 = fx.fam.member(1).Q;
    CHECK(ser_equal_exact(Q1.coeff(0), ser("t^(-3/2)", fx.cfg)));
    // dual route: the shortcut gammas match v(eta - b_rho) from the lazy root
    REQUIRE(fx.eta.has_value());
    for (int k = 1; k <= 8; ++k) {
        FamilyMember m = fx.fam.member(k);
        SeriesElem b(fx.cfg, ser_neg(m.Q.coeff(0)).exact());
        CHECK(ser_val(ser_sub(*fx.eta, b)) == m.gamma);
    }
}

TEST_CASE("newton stepper on the Kummer fixture") {
    DegreePFixture fx = kummer2(12);
    for (int rho = 1; rho <= 12; ++rho) {
        // member rho is b after rho-1 digits: gamma = 1 - 1/2^rho
        Value expect(rat("1") - Rational(1) / rat("2").pow_int(rho));
        CHECK(fx.fam.member(rho).gamma == expect);
        CHECK(fx.fam.member(rho).gamma < val("1"));
    }
    REQUIRE(fx.fam.sup_hint().has_value());
    CHECK(*fx.fam.sup_hint() == val("1"));
}

TEST_CASE("newton stepper halts on an exact root") {
    auto cfg = mx(2);
    Poly g = pol("x^2 - 9", cfg);
    try {
        newton_stepper(g, ser("3", cfg).exact(), 4);
        CHECK(false);
    } catch (const stepper_error& e) {
        CHECK(e.kind == stepper_error::Kind::root_found);
    }
}

TEST_CASE("irregular residual pattern needs a user hint") {
    auto cfg = eq(2);
    // residual exponents -1, -1/2, -1/3, -1/4, ... have non-geometric gaps
    SeriesElem a = ser("t^(-1) + t^(-1/3)", cfg);
    try {
        as_root_stepper(a, 6);
        CHECK(false);
    } catch (const stepper_error& e) {
        CHECK(e.kind == stepper_error::Kind::pattern_undetected);
    }
    // a declared sup makes the family usable, checked against every gamma
    StepperOut out = as_root_stepper(a, 6, val("0"));
    REQUIRE(out.family.sup_hint().has_value());
    CHECK(*out.family.sup_hint() == val("0"));
    for (int rho = 1; rho <= 6; ++rho) CHECK(out.family.member(rho).gamma < val("0"));
}

TEST_CASE("non-increasing family values report a stall") {
    auto cfg = eq(2);
    auto gen = [cfg](int) -> FamilyMember {
        return FamilyMember{pol("x + t^(1)", cfg), val("1/2")};
    };
    ApproxFamily fam(1, 4, gen, std::nullopt, "stall test");
    fam.member(1);
    CHECK_THROWS_AS(fam.member(2), stepper_error);
}

TEST_CASE("plateau statistics for the worked fixtures") {
    DegreePFixture ind = independent_as(2);
    PlateauStats s1 = plateau_stats(ind.fam, ind.g, ind.oracle);
    CHECK(s1.B == val("0"));
    CHECK(s1.Bbar == val("0"));
    CHECK(s1.D == 2);
    CHECK(s1.d == 1);

    DegreePFixture dep = dependent_as();
    PlateauStats s2 = plateau_stats(dep.fam, dep.g, dep.oracle);
    CHECK(s2.B == val("-1"));
    CHECK(s2.Bbar == val("-2"));
    CHECK(s2.D == 2);

    TowerFixture tw = tower2(8);
    PlateauStats s3 = plateau_stats(tw.stages[1].fam, tw.g, tw.oracle);
    CHECK(s3.B == val("0"));
    CHECK(s3.Bbar == val("0"));
    CHECK(s3.D == 2);
}

TEST_CASE("plateau statistics reject inconsistent hints") {
    DegreePFixture ind = independent_as(2, 8);
    CHECK_THROWS_AS(plateau_stats(ind.fam, ind.g, ind.oracle, val("-1/4")), invariant_error);
}

TEST_CASE("J sets on the fixtures") {
    DegreePFixture ind = independent_as(2);
    FamilyMember m2 = ind.fam.member(2);
    CHECK(m2.gamma == val("-1/8"));
    CHECK(j_set(ind.g, m2.Q, m2.gamma, val("0"), ind.oracle).empty());

    DegreePFixture dep = dependent_as();
    FamilyMember d2 = dep.fam.member(2);
    CHECK(d2.gamma == val("-9/8"));
    CHECK(j_set(dep.g, d2.Q, d2.gamma, val("-2"), dep.oracle) == std::set<int>{1});

    // F = Q^D: all inner indices are missing, hence inside J by convention
    auto cfg = eq(2);
    Poly Q = pol("x + t^(-1/2)", cfg);
    CHECK(j_set(Q.pow(2), Q, val("-1/4"), val("0"), ind.oracle) == std::set<int>{1});
}

TEST_CASE("B_n computation with stabilization and pi cross-check") {
    DegreePFixture ind = independent_as(2);
    PlateauStats si = plateau_stats(ind.fam, ind.g, ind.oracle);
    BSetResult bi = b_set(ind.g, ind.fam, si, ind.oracle);
    CHECK(bi.B_n == std::set<int>{1});
    CHECK(bi.stabilization_index == 3);
    for (const auto& J : bi.J_history) CHECK(J.empty());

    DegreePFixture dep = dependent_as();
    PlateauStats sd = plateau_stats(dep.fam, dep.g, dep.oracle);
    BSetResult bd = b_set(dep.g, dep.fam, sd, dep.oracle);
    CHECK(bd.B_n.empty());
    for (const auto& J : bd.J_history) CHECK(J == std::set<int>{1});

    DegreePFixture kum = kummer2();
    PlateauStats sk = plateau_stats(kum.fam, kum.g, kum.oracle);
    CHECK(sk.B == val("1"));
    CHECK(sk.Bbar == val("2"));
    BSetResult bk = b_set(kum.g, kum.fam, sk, kum.oracle);
    CHECK(bk.B_n == std::set<int>{1});
}

TEST_CASE("J sets are monotone along every fixture run") {
    for (auto fx : {independent_as(2), dependent_as(), kummer2()}) {
        PlateauStats st = plateau_stats(fx.fam, fx.g, fx.oracle);
        std::set<int> prev;
        for (int rho = 1; rho <= fx.fam.limit(); ++rho) {
            FamilyMember m = fx.fam.member(rho);
            std::set<int> J = j_set(fx.g, m.Q, m.gamma, st.Bbar, fx.oracle);
            CHECK(std::includes(J.begin(), J.end(), prev.begin(), prev.end()));
            prev = J;
        }
    }
}

TEST_CASE("tower stage 1 brute force over at least six members") {
    TowerFixture tw = tower2(10);
    Poly F1 = tw.stages[1].fam.member(tw.stages[1].limit_index).Q;
    CHECK(F1.degree() == 2);
    PlateauStats s1 = plateau_stats(tw.stages[0].fam, F1, tw.oracle);
    CHECK(s1.B == val("0"));
    CHECK(s1.D == 2);
    for (int rho = 1; rho <= 8; ++rho) {
        FamilyMember m = tw.stages[0].fam.member(rho);
        CHECK(m.gamma == Value(rat("-1") / rat("4").pow_int(rho + 1)));
        CHECK(j_set(F1, m.Q, m.gamma, s1.Bbar, tw.oracle).empty());
    }
    BSetResult b1 = b_set(F1, tw.stages[0].fam, s1, tw.oracle);
    CHECK(b1.B_n == std::set<int>{1});
}

TEST_CASE("reduced limit key polynomial with verification") {
    // dependent: F_empty = Q^2 + g(b) = x^2 + b + a, accepted at the next 3
    DegreePFixture dep = dependent_as();
    PlateauStats sd = plateau_stats(dep.fam, dep.g, dep.oracle);
    BSetResult bd = b_set(dep.g, dep.fam, sd, dep.oracle);
    Poly fred = reduced_limit_kp(dep.g, dep.fam, bd.stabilization_index, bd.B_n, sd, dep.oracle,
                                 true);
    CHECK(fred.degree() == 2);
    CHECK(fred.coeff(1).is_exact_zero());
    // constant coefficient approximates b_rho + a
    FiniteSum b_rho = ser_neg(dep.fam.member(bd.stabilization_index).Q.coeff(0)).exact();
    SeriesElem a = ser("geo_tail(-2,0) + geo_tail(-1,1)", dep.cfg);
    for (int n = 2; n <= 5; ++n)
        CHECK(fred.coeff(0).lazy().at(n).sum == (b_rho + a.lazy().at(n).sum));

    // independent: keeping S = B_1 reassembles g itself
    DegreePFixture ind = independent_as(2);
    PlateauStats si = plateau_stats(ind.fam, ind.g, ind.oracle);
    BSetResult bi = b_set(ind.g, ind.fam, si, ind.oracle);
    Poly fri = reduced_limit_kp(ind.g, ind.fam, bi.stabilization_index, bi.B_n, si, ind.oracle,
                                true);
    CHECK(fri.equal_exact(ind.g));

    // negative control: S = {} strictly below B_1 fails verification
    CHECK_THROWS_AS(
        reduced_limit_kp(ind.g, ind.fam, bi.stabilization_index, {}, si, ind.oracle, true),
        invariant_error);
    // and without verification it differs from nu_Q(g) at some later member
    Poly fr0 = reduced_limit_kp(ind.g, ind.fam, bi.stabilization_index, {}, si, ind.oracle, false);
    bool differs = false;
    for (int next = bi.stabilization_index + 1; next <= bi.stabilization_index + 3; ++next) {
        FamilyMember m = ind.fam.member(next);
        if (nu_trunc(fr0, m.Q, m.gamma, ind.oracle).value !=
            nu_trunc(ind.g, m.Q, m.gamma, ind.oracle).value)
            differs = true;
    }
    CHECK(differs);
}

TEST_CASE("B_n is independent of the limit key polynomial used") {
    DegreePFixture dep = dependent_as();
    PlateauStats sd = plateau_stats(dep.fam, dep.g, dep.oracle);
    BSetResult bd = b_set(dep.g, dep.fam, sd, dep.oracle);
    Poly fred = reduced_limit_kp(dep.g, dep.fam, bd.stabilization_index, bd.B_n, sd, dep.oracle,
                                 true);
    PlateauStats sr = plateau_stats(dep.fam, fred, dep.oracle);
    BSetResult br = b_set(fred, dep.fam, sr, dep.oracle);
    CHECK(br.B_n == bd.B_n);
}

TEST_CASE("per-plateau defect") {
    DegreePFixture ind2 = independent_as(2);
    PlateauStats s2 = plateau_stats(ind2.fam, ind2.g, ind2.oracle);
    CHECK(plateau_defect(ind2.g, ind2.fam, s2, ind2.oracle) == 2);

    DegreePFixture ind3 = independent_as(3, 8);
    PlateauStats s3 = plateau_stats(ind3.fam, ind3.g, ind3.oracle);
    CHECK(plateau_defect(ind3.g, ind3.fam, s3, ind3.oracle) == 3);

    TowerFixture tw = tower2(8);
    PlateauStats st2 = plateau_stats(tw.stages[1].fam, tw.g, tw.oracle);
    CHECK(plateau_defect(tw.g, tw.stages[1].fam, st2, tw.oracle) == 2);
}

TEST_CASE("full pipeline on the independent example") {
    DegreePFixture ind = independent_as(2);
    std::vector<StageRun> stages{StageRun{ind.fam, std::nullopt, 0}};
    DefectReport rep = analyze_extension(ind.g, stages, ind.oracle);
    REQUIRE(rep.plateaus.size() == 1);
    CHECK(rep.plateaus[0].n == 1);
    CHECK(rep.plateaus[0].d == 1);
    CHECK(rep.plateaus[0].I == std::set<int>{0});
    CHECK(rep.total_defect_exponent == 1);
    CHECK(rep.total_defect == 2);
}

TEST_CASE("full pipeline on the tower") {
    TowerFixture tw = tower2(12);
    DefectReport rep = analyze_extension(tw.g, tw.stages, tw.oracle);
    REQUIRE(rep.plateaus.size() == 2);
    CHECK(rep.plateaus[0].n == 1);
    CHECK(rep.plateaus[1].n == 2);
    CHECK(rep.plateaus[0].d == 1);
    CHECK(rep.plateaus[1].d == 1);
    CHECK(rep.plateaus[0].I == std::set<int>{0});
    CHECK(rep.plateaus[1].I == std::set<int>{0});
    CHECK(rep.total_defect_exponent == 2);
    CHECK(rep.total_defect == 4);
    // deg_Q(F) equals deg(F)/deg(Q) at the three deepest members of each stage
    for (std::size_t s = 0; s < 2; ++s) {
        const auto& rec = rep.plateaus[s];
        const auto& fam = tw.stages[s].fam;
        for (int rho = fam.limit() - 2; rho <= fam.limit(); ++rho) {
            FamilyMember m = fam.member(rho);
            CHECK(deg_wrt(rec.F, m.Q, m.gamma, tw.oracle) == rec.D);
        }
    }
    // the polygon of each stage's limit key polynomial has exactly the two
    // vertices (0, D nu(Q)) and (D, 0) at deep members
    for (std::size_t s = 0; s < 2; ++s) {
        const auto& rec = rep.plateaus[s];
        FamilyMember m = tw.stages[s].fam.member(tw.stages[s].fam.limit());
        NewtonPolygon np = newton_polygon(rec.F, m.Q, tw.oracle);
        REQUIRE(np.vertices.size() == 2);
        CHECK(np.vertices[0] == std::make_pair(0, Value::scale(rec.D, m.gamma)));
        CHECK(np.vertices[1] == std::make_pair(rec.D, val("0")));
    }
}

TEST_CASE("stage-2 route consistency in the tower") {
    TowerFixture tw = tower2(8);
    for (int rho = 1; rho <= 6; ++rho) {
        FamilyMember m = tw.stages[1].fam.member(rho);
        CHECK(tw.oracle.nu(m.Q) == m.gamma);
    }
    for (int rho = 1; rho <= 6; ++rho) {
        FamilyMember m = tw.stages[0].fam.member(rho);
        CHECK(tw.oracle.nu(m.Q) == m.gamma);
    }
}

TEST_CASE("analyze rejects non-increasing stage degrees") {
    DegreePFixture ind = independent_as(2, 8);
    std::vector<StageRun> stages{StageRun{ind.fam, std::nullopt, 0},
                                 StageRun{ind.fam, std::nullopt, 8}};
    CHECK_THROWS_AS(analyze_extension(ind.g, stages, ind.oracle), config_error);
}
