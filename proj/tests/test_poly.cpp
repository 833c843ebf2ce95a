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

TEST_CASE("division by a monic polynomial") {
    auto cfg = eq(2);
    Poly f = pol("x^2 + t^(1)*x + t^(3)", cfg);
    Poly Q = pol("x + t^(1)", cfg);
    auto [q, r] = poly_divmod(f, Q);
    CHECK(q.equal_exact(pol("x", cfg)));
    CHECK(r.equal_exact(pol("t^(3)", cfg)));

    Poly g = pol("x^2 + x + t^(-1)", cfg);
    auto [q2, r2] = poly_divmod(g, g);
    CHECK(q2.equal_exact(pol("1", cfg)));
    CHECK(r2.is_zero());

    auto [q3, r3] = poly_divmod(pol("x + t^(1)", cfg), pol("x^2", cfg));
    CHECK(q3.is_zero());
    CHECK(r3.equal_exact(pol("x + t^(1)", cfg)));

    CHECK_THROWS_AS(poly_divmod(f, pol("t^(1)*x + 1", cfg)), invariant_error);
}

TEST_CASE("Q-expansion") {
    auto cfg = eq(2);
    Poly f = pol("x^2 + t^(1)*x + t^(3)", cfg);
    Poly Q = pol("x + t^(1)", cfg);
    QExpansion e = q_expansion(f, Q);
    REQUIRE(e.coeffs.size() == 3);
    CHECK(e.coeffs[0].equal_exact(pol("t^(3)", cfg)));
    CHECK(e.coeffs[1].equal_exact(pol("t^(1)", cfg)));
    CHECK(e.coeffs[2].equal_exact(pol("1", cfg)));
    CHECK(e.support == std::set<int>{0, 1, 2});
    CHECK(e.reconstruct().equal_exact(f));

    // g = Q^2 + Q + g(b) with Q = x + b in characteristic 2
    Poly g = pol("x^2 + x + t^(-1)", cfg);
    Poly Qb = pol("x + t^(-1/2)", cfg);
    QExpansion eb = q_expansion(g, Qb);
    REQUIRE(eb.coeffs.size() == 3);
    CHECK(eb.coeffs[0].equal_exact(pol("t^(-1/2)", cfg)));  // g(b)
    CHECK(eb.coeffs[1].equal_exact(pol("1", cfg)));
    CHECK(eb.coeffs[2].equal_exact(pol("1", cfg)));

    // deg f < deg Q: the expansion is just a_0 = f
    QExpansion es = q_expansion(pol("x + 1", cfg), pol("x^2", cfg));
    REQUIRE(es.coeffs.size() == 1);
    CHECK(es.coeffs[0].equal_exact(pol("x + 1", cfg)));
}

TEST_CASE("expansion round trip on randomized pairs") {
    std::mt19937_64 rng(41);
    for (auto cfg : {eq(2), eq(3), mx(2)}) {
        for (int i = 0; i < 150; ++i) {
            Poly f = random_poly(rng, cfg, 6);
            Poly Q = random_poly(rng, cfg, 3, /*monic=*/true);
            QExpansion e = q_expansion(f, Q);
            CHECK(e.reconstruct().equal_exact(f));
            for (const auto& c : e.coeffs) CHECK(c.degree() < Q.degree());
        }
    }
}

TEST_CASE("hasse derivatives") {
    auto cfg = eq(2);
    // L = X^2 + X + c: d_1 L = 1 since 2X vanishes
    XPoly L = {pol("t^(5)", cfg), pol("1", cfg), pol("1", cfg)};
    auto d = hasse_derivatives(L, cfg);
    REQUIRE(d.size() == 3);
    // d_1 = 1 + 2X = 1
    CHECK(xpoly_eval(d[1], pol("x", cfg)).equal_exact(pol("1", cfg)));
    // d_2(X^2 + ...) = 1
    CHECK(xpoly_eval(d[2], pol("x", cfg)).equal_exact(pol("1", cfg)));
    // d_0 = L
    CHECK(xpoly_eval(d[0], pol("x", cfg))
              .equal_exact(pol("x^2 + x + t^(5)", cfg)));
}

TEST_CASE("hasse composition identity") {
    std::mt19937_64 rng(42);
    for (auto cfg : {eq(2), eq(3), mx(2)}) {
        for (int trial = 0; trial < 40; ++trial) {
            XPoly L;
            int D = 4;
            for (int i = 0; i <= D; ++i) L.push_back(random_poly(rng, cfg, 1));
            auto d1 = hasse_derivatives(L, cfg);
            for (int i = 0; i + 2 <= D; ++i) {
                for (int j = 0; i + j <= D && j <= 2; ++j) {
                    auto dij = hasse_derivatives(d1[static_cast<std::size_t>(j)], cfg);
                    if (static_cast<int>(dij.size()) <= i) continue;
                    // d_i d_j = C(i+j, i) d_{i+j}
                    XPoly lhs = dij[static_cast<std::size_t>(i)];
                    XPoly rhs = hasse_derivatives(L, cfg)[static_cast<std::size_t>(i + j)];
                    Coeff b = binomial_coeff(cfg, static_cast<unsigned long>(i + j),
                                             static_cast<unsigned long>(i));
                    Poly at = Poly::x(cfg) +
                              Poly::constant(SeriesElem::monomial(cfg, rat("1"), Coeff::one(cfg)));
                    Poly lv = xpoly_eval(lhs, at);
                    Poly rv = xpoly_eval(rhs, at).scale(
                        SeriesElem::monomial(cfg, rat("0"), b));
                    CHECK(lv.equal_exact(rv));
                }
            }
        }
    }
}

TEST_CASE("taylor expansion coefficients") {
    auto cfg = eq(2);
    Poly g = pol("x^2 + x + t^(-1)", cfg);
    Poly Qr = pol("x + t^(-1/2)", cfg);
    Poly h = pol("t^(-1/2)", cfg);  // h = x - Q_rho = -b = b in char 2
    auto terms = taylor_expand(g, Qr, h);
    REQUIRE(terms.size() == 3);
    CHECK(terms[0].equal_exact(pol("t^(-1/2)", cfg)));  // g(b)
    CHECK(terms[1].equal_exact(pol("1", cfg)));
    CHECK(terms[2].equal_exact(pol("1", cfg)));

    // F = Q: terms are [h, 1]
    Poly Q2 = pol("x^2 + x", cfg);
    Poly h2 = pol("t^(2)", cfg);
    Poly F2 = Q2 + h2;
    auto t2 = taylor_expand(F2, Q2, h2);
    REQUIRE(t2.size() == 2);
    CHECK(t2[0].equal_exact(h2));
    CHECK(t2[1].equal_exact(pol("1", cfg)));

    // F = Q^2 in characteristic 2: the cross term dies
    Poly base = pol("x^2 + t^(1)", cfg);
    Poly h3 = pol("x + t^(3)", cfg);
    Poly F3 = (base + h3).pow(2);
    auto t3 = taylor_expand(F3, base, h3);
    REQUIRE(t3.size() == 3);
    CHECK(t3[0].equal_exact(h3.pow(2)));
    CHECK(t3[1].is_zero());
    CHECK(t3[2].equal_exact(pol("1", cfg)));
}

TEST_CASE("taylor identity on randomized instances") {
    std::mt19937_64 rng(43);
    for (auto cfg : {eq(2), eq(3), mx(2)}) {
        for (int trial = 0; trial < 60; ++trial) {
            XPoly L;
            int D = 3;
            for (int i = 0; i <= D; ++i) L.push_back(random_poly(rng, cfg, 2));
            Poly a = random_poly(rng, cfg, 2);
            Poly b = random_poly(rng, cfg, 2);
            // L(b) = L(a) + sum d_i L(a) (b-a)^i
            auto d = hasse_derivatives(L, cfg);
            Poly rhs = Poly::zero(cfg);
            Poly diff = b - a;
            for (std::size_t i = 0; i < d.size(); ++i)
                rhs = rhs + xpoly_eval(d[i], a) * diff.pow(static_cast<unsigned>(i));
            CHECK(xpoly_eval(L, b).equal_exact(rhs));
        }
    }
}

TEST_CASE("polynomial evaluation") {
    auto cfg = eq(2);
    Poly g = pol("x^2 + x + t^(-1)", cfg);
    CHECK(ser_equal_exact(poly_eval(g, ser("t^(-1/2)", cfg)), ser("t^(-1/2)", cfg)));
    CHECK(ser_equal_exact(poly_eval(pol("x", cfg), ser("t^(7)", cfg)), ser("t^(7)", cfg)));
    CHECK(ser_equal_exact(poly_eval(g, SeriesElem::zero(cfg)), ser("t^(-1)", cfg)));

    // g(eta) is zero in the field: every approximation is the current
    // residual, its value equals the certificate, and no finite valuation is
    // ever certified
    SeriesElem eta = ser("as_root(t^(-1))", cfg);
    SeriesElem geta = poly_eval(g, eta);
    REQUIRE_FALSE(geta.is_exact());
    for (int n = 1; n <= 5; ++n) {
        Approx a = geta.lazy().at(n);
        Rational expect = rat("-1") / rat("2").pow_int(n);
        CHECK(ser_val(SeriesElem(cfg, a.sum)) == Value(expect));
        CHECK(a.error == Value(expect));
    }
    CHECK_THROWS_AS(ser_val(geta, 16), precision_error);
}

TEST_CASE("frobenius additivity for polynomials") {
    std::mt19937_64 rng(44);
    auto cfg = eq(2);
    for (int i = 0; i < 60; ++i) {
        Poly f = random_poly(rng, cfg, 3);
        Poly g = random_poly(rng, cfg, 3);
        CHECK((f + g).pow(2).equal_exact(f.pow(2) + g.pow(2)));
    }
}

TEST_CASE("polynomial parsing and printing round trip") {
    auto cfg = eq(2);
    for (const char* text : {"x^2 + x + t^(-1)", "(x^2 + x)^2 + (x^2 + x) + t^(-1)",
                             "x^4 + x^2 + x + t^(-1)", "x + t^(-1/2)"}) {
        Poly f = pol(text, cfg);
        Poly g = pol(f.str(), cfg);
        CHECK(f.equal_exact(g));
    }
    auto cfgm = mx(2);
    Poly k = pol("x^2 - (1 + geo_tail(1,1))^2", cfgm);
    CHECK(k.degree() == 2);
    CHECK(k.is_monic());
    CHECK_FALSE(k.coeff(0).is_exact());
}

TEST_CASE("malformed polynomial text") {
    auto cfg = eq(2);
    CHECK_THROWS_AS(pol("x^", cfg), parse_error);
    CHECK_THROWS_AS(pol("x^(1/2)", cfg), parse_error);
    CHECK_THROWS_AS(pol("x + ", cfg), parse_error);
    CHECK_THROWS_AS(pol("y + 1", cfg), parse_error);
}
