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

namespace {

ClassifyResult run_classify(DegreePFixture& fx, ExtCase kase) {
    StageRun stage{fx.fam, std::nullopt, 0};
    return classify_degree_p(fx.g, kase, stage, fx.oracle);
}

}  // namespace

TEST_CASE("independent Artin-Schreier extensions for p in {2,3,5}") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        DegreePFixture fx = independent_as(p);
        ClassifyResult res = run_classify(fx, ExtCase::artin_schreier);
        CHECK(res.independent);
        CHECK(res.routes_agree);
        CHECK(res.I1 == std::set<int>{0});
        CHECK(res.gamma.bound == val("0"));
        CHECK_FALSE(res.gamma.attained);
        CHECK(res.delta.bound == val("0"));
        CHECK(res.plateau.B_n == std::set<int>{1});
        CHECK(res.plateau.d == 1);
    }
}

TEST_CASE("dependent Artin-Schreier fixture") {
    DegreePFixture fx = dependent_as();
    ClassifyResult res = run_classify(fx, ExtCase::artin_schreier);
    CHECK_FALSE(res.independent);
    CHECK(res.routes_agree);
    CHECK(res.I1.empty());
    CHECK(res.gamma.bound == val("-1"));
    CHECK(res.delta.bound == val("-2"));
    CHECK(res.plateau.B_n.empty());
}

TEST_CASE("independent Kummer fixture") {
    DegreePFixture fx = kummer2();
    ClassifyResult res = run_classify(fx, ExtCase::kummer);
    CHECK(res.independent);
    CHECK(res.routes_agree);
    CHECK(res.I1 == std::set<int>{0});
    REQUIRE(res.alpha.has_value());
    CHECK(*res.alpha == val("1"));
    CHECK(res.gamma.bound == val("1"));
    CHECK(res.delta.bound == val("2"));
}

TEST_CASE("delta = p * gamma in every classified run") {
    {
        DegreePFixture fx = independent_as(3, 8);
        ClassifyResult res = run_classify(fx, ExtCase::artin_schreier);
        CHECK(res.delta.bound == Value::scale(3, res.gamma.bound));
    }
    {
        DegreePFixture fx = dependent_as(8);
        ClassifyResult res = run_classify(fx, ExtCase::artin_schreier);
        CHECK(res.delta.bound == Value::scale(2, res.gamma.bound));
    }
    {
        DegreePFixture fx = kummer2(8);
        ClassifyResult res = run_classify(fx, ExtCase::kummer);
        CHECK(res.delta.bound == Value::scale(2, res.gamma.bound));
    }
}

TEST_CASE("per-member bounds hold strictly") {
    DegreePFixture as = independent_as(2);
    for (int rho = 1; rho <= as.fam.limit(); ++rho)
        CHECK(as.fam.member(rho).gamma < val("0"));
    DegreePFixture ku = kummer2();
    for (int rho = 1; rho <= ku.fam.limit(); ++rho)
        CHECK(ku.fam.member(rho).gamma < kummer_alpha(ku.cfg));
}

TEST_CASE("figure data: polygon endpoints and the pi test") {
    // Artin-Schreier: P1 = (0, p nu(x-b)), P2 = (1, 0), P3 = (p, 0)
    DegreePFixture as = independent_as(2);
    PlateauStats st = plateau_stats(as.fam, as.g, as.oracle);
    for (int rho = 2; rho <= 5; ++rho) {
        FamilyMember m = as.fam.member(rho);
        NewtonPolygon np = newton_polygon(as.g, m.Q, as.oracle);
        REQUIRE(np.points.size() == 3);
        CHECK(np.points[0].second == Value::scale(2, m.gamma));
        CHECK(np.points[1].second == val("0"));
        CHECK(np.points[2].second == val("0"));
        REQUIRE(np.vertices.size() == 2);
        CHECK(np.vertices[0] == std::make_pair(0, Value::scale(2, m.gamma)));
        CHECK(np.vertices[1] == std::make_pair(2, val("0")));
        // independent: (1, beta_1) lies on pi
        PiLine line{st.D, st.d, st.B, st.Bbar};
        CHECK(pi_member(1, np.points[1].second, line));
    }

    DegreePFixture dep = dependent_as();
    PlateauStats sd = plateau_stats(dep.fam, dep.g, dep.oracle);
    for (int rho = 2; rho <= 4; ++rho) {
        FamilyMember m = dep.fam.member(rho);
        NewtonPolygon np = newton_polygon(dep.g, m.Q, dep.oracle);
        REQUIRE(np.vertices.size() == 2);
        CHECK(np.vertices[0] == std::make_pair(0, Value::scale(2, m.gamma)));
        CHECK(np.vertices[1] == std::make_pair(2, val("0")));
        PiLine line{sd.D, sd.d, sd.B, sd.Bbar};
        CHECK_FALSE(pi_member(1, np.points[1].second, line));
    }

    // Kummer: P2 = (1, v(p)) on pi in the independent case
    DegreePFixture ku = kummer2();
    PlateauStats sk = plateau_stats(ku.fam, ku.g, ku.oracle);
    for (int rho = 2; rho <= 4; ++rho) {
        FamilyMember m = ku.fam.member(rho);
        NewtonPolygon np = newton_polygon(ku.g, m.Q, ku.oracle);
        REQUIRE(np.points.size() == 3);
        CHECK(np.points[1].second == val("1"));  // v(2 b) = v(p)
        REQUIRE(np.vertices.size() == 2);
        CHECK(np.vertices[0] == std::make_pair(0, Value::scale(2, m.gamma)));
        CHECK(np.vertices[1] == std::make_pair(2, val("0")));
        PiLine line{sk.D, sk.d, sk.B, sk.Bbar};
        CHECK(pi_member(1, np.points[1].second, line));
    }
}

TEST_CASE("shape validation") {
    auto cfg = eq(2);
    CHECK_THROWS_AS(extract_as_a(pol("x^2 + t^(-1)", cfg)), config_error);
    CHECK_THROWS_AS(extract_as_a(pol("x^3 + x + t^(-1)", cfg)), config_error);
    CHECK(ser_equal_exact(extract_as_a(pol("x^2 + x + t^(-1)", cfg)), ser("t^(-1)", cfg)));
    auto cfgm = mx(2);
    CHECK_THROWS_AS(extract_kummer_a(pol("x^2 + x + 3", cfgm)), config_error);
    CHECK(ser_equal_exact(extract_kummer_a(pol("x^2 - 3", cfgm)), ser("3", cfgm)));
}

TEST_CASE("kummer requires v(a) = 0") {
    auto cfg = mx(2);
    Poly g = pol("x^2 - p^(1)", cfg);
    StepperOut dummy = as_root_stepper(ser("t^(-1)", eq(2)), 6);
    StageRun stage{dummy.family, std::nullopt, 0};
    NuOracle oracle = NuOracle::shortcut(g, ExtCase::kummer);
    CHECK_THROWS_AS(classify_degree_p(g, ExtCase::kummer, stage, oracle), config_error);
}
