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

TEST_CASE("prime construction") {
    CHECK(Prime(2).get() == 2);
    CHECK(Prime(5).get() == 5);
    CHECK_THROWS_AS(Prime(4), config_error);
    CHECK_THROWS_AS(Prime(1), config_error);
}

TEST_CASE("p-th roots in F_p are the identity") {
    CHECK(FpElem(1, 2).pth_root() == FpElem(1, 2));
    CHECK(FpElem(2, 3).pth_root() == FpElem(2, 3));
    CHECK(FpElem(3, 5).pth_root() == FpElem(3, 5));
    for (unsigned long p : {2ul, 3ul, 5ul})
        for (long c = 0; c < static_cast<long>(p); ++c)
            CHECK(FpElem(c, p).pth_root().pow(p) == FpElem(c, p));
}

TEST_CASE("F_p field axioms on exhaustive small tables") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        for (long a = 0; a < static_cast<long>(p); ++a) {
            FpElem fa(a, p);
            if (a != 0) CHECK(fa * fa.inv() == FpElem(1, p));
            for (long b = 0; b < static_cast<long>(p); ++b) {
                FpElem fb(b, p);
                CHECK(fa + fb == fb + fa);
                CHECK(fa * fb == fb * fa);
                CHECK(fa - fb == fa + (-fb));
                for (long c = 0; c < static_cast<long>(p); ++c) {
                    FpElem fc(c, p);
                    CHECK((fa + fb) + fc == fa + (fb + fc));
                    CHECK(fa * (fb + fc) == fa * fb + fa * fc);
                }
            }
        }
    }
}

TEST_CASE("cyclotomic valuation on reference points") {
    // v(3) = 1 under the v(p) = 1 normalization
    CHECK(CycElem(3, rat("3")).val() == val("1"));
    // N(1 - zeta_3) = 3, so v = 1/2
    CycElem one_minus_zeta = CycElem::one(3) - CycElem::zeta(3);
    CHECK(one_minus_zeta.norm() == rat("3"));
    CHECK(one_minus_zeta.val() == val("1/2"));
    CHECK(CycElem(2, rat("0")).val() == Value::infinity());
}

TEST_CASE("v(1 - zeta_p) = 1/(p-1) for supported primes") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        CycElem e = CycElem::one(p) - CycElem::zeta(p);
        CHECK(e.val() == Value(Rational(1) / Rational(static_cast<long>(p - 1))));
    }
}

TEST_CASE("cyclotomic valuation is a valuation") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        for (int i = 0; i < 120; ++i) {
            std::vector<Rational> ca(p - 1), cb(p - 1);
            for (auto& x : ca) x = Rational(num(rng)) / Rational(den(rng));
            for (auto& x : cb) x = Rational(num(rng)) / Rational(den(rng));
            CycElem a = CycElem::from_coords(p, ca);
            CycElem b = CycElem::from_coords(p, cb);
            if (a.is_zero() || b.is_zero()) continue;
            CHECK((a * b).val() == a.val() + b.val());
            CycElem s = a + b;
            if (!s.is_zero()) CHECK(s.val() >= Value::min(a.val(), b.val()));
        }
    }
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<long> num(-5, 5);
    for (unsigned long p : {3ul, 5ul}) {
        for (int i = 0; i < 60; ++i) {
            std::vector<Rational> ca(p - 1), cb(p - 1);
            for (auto& x : ca) x = Rational(num(rng));
            for (auto& x : cb) x = Rational(num(rng));
            CycElem a = CycElem::from_coords(p, ca);
            CycElem b = CycElem::from_coords(p, cb);
            CHECK((a * b).norm() == a.norm() * b.norm());
        }
    }
}

TEST_CASE("zeta_p has multiplicative order p") {
    for (unsigned long p : {3ul, 5ul}) {
        CycElem z = CycElem::zeta(p);
        CycElem acc = CycElem::one(p);
        for (unsigned long k = 0; k < p; ++k) acc = acc * z;
        CHECK(acc == CycElem::one(p));
        CHECK(z.val() == val("0"));
    }
    CHECK(CycElem::zeta(2) * CycElem::zeta(2) == CycElem::one(2));
}

TEST_CASE("perfect roots of rational cyclotomic elements") {
    auto r = CycElem(2, rat("9/4")).perfect_root(2);
    REQUIRE(r.has_value());
    CHECK(r->rational_part() == rat("3/2"));
    CHECK_FALSE(CycElem(2, rat("2")).perfect_root(2).has_value());
    CHECK_FALSE((CycElem::zeta(3)).perfect_root(2).has_value());
}
