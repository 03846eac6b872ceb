/*
   Copyright 2026 The latstretch Authors

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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "certified.hpp"
#include "latstretch/domain.hpp"
#include "latstretch/errors.hpp"
#include "latstretch/measure.hpp"
#include "oracles.hpp"

using namespace latstretch;

namespace {

Membership classify(std::vector<int> w, std::vector<double> a, double t, std::vector<std::int64_t> k,
                    Precision p = Precision::exact)
{
    return membership(Exponents(std::move(w)), StretchFactors::from_values(std::move(a)), t, k, p);
}

} // namespace

TEST_CASE("exponent validation")
{
    CHECK_NOTHROW(Exponents({2, 2}));
    CHECK(Exponents({2, 6, 4}).max() == 6);
    CHECK_THROWS_AS(Exponents({2}), InvalidArgument);
    CHECK_THROWS_AS(Exponents({}), InvalidArgument);
    CHECK_THROWS_AS(Exponents({2, 0}), InvalidArgument);
    CHECK_THROWS_AS(Exponents({2, -2}), InvalidArgument);
    try {
        Exponents({3, 4});
        FAIL("odd exponent accepted");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("exponent 3 is not even") != std::string::npos);
    }
    CHECK_FALSE(Exponents({2, 4}).in_theorem_scope());
    CHECK(Exponents({2, 2, 4}).in_theorem_scope());
}

TEST_CASE("stretch factor normalization")
{
    auto a = StretchFactors::from_values({2.0, 1.0, 0.5});
    CHECK(a.a_star() == doctest::Approx(2.0));
    CHECK(a_star(a) == a.a_star());

    auto b = StretchFactors::from_values({2.0, 1.0, 0.5 * (1.0 + 3e-10)});
    double prod = 1.0;
    for (double v : b.values()) prod *= v;
    CHECK(std::abs(prod - 1.0) <= 1e-12);
    CHECK(b.renormalization() > 0.0);

    CHECK_THROWS_AS(StretchFactors::from_values({2.0, 1.0, 0.6}), InvalidArgument);
    CHECK_THROWS_AS(StretchFactors::from_values({-1.0, -1.0}), InvalidArgument);
    CHECK_THROWS_AS(StretchFactors::from_normalized({2.0, 0.5000001}), InvalidArgument);

    std::vector<double> u{0.3, -0.1};
    auto c = StretchFactors::from_log(u);
    CHECK(c[0] == doctest::Approx(std::exp(0.3)));
    CHECK(c[2] == doctest::Approx(std::exp(-0.2)));
}

TEST_CASE("a_star is at least one on the det-1 manifold")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 500; ++i) {
        std::vector<double> logs{u(rng), u(rng), u(rng)};
        auto a = StretchFactors::from_log(logs);
        CHECK(a.a_star() >= 1.0 - 1e-15);
        double expected = 0.0;
        for (double v : a.values()) expected = std::max(expected, 1.0 / v);
        CHECK(a.a_star() == expected);
    }
    CHECK(StretchFactors::identity(4).a_star() == 1.0);
}

TEST_CASE("membership examples")
{
    CHECK(classify({2, 2, 2}, {1, 1, 1}, 2, {1, 1, 1}) == Membership::inside);
    CHECK(classify({2, 2, 2}, {1, 1, 1}, 2, {2, 0, 0}) == Membership::inside);
    CHECK(classify({2, 2, 2}, {1, 1, 1}, 2, {1, 1, 2}) == Membership::outside);
    CHECK(classify({2, 4}, {1, 1}, 1, {1, 0}) == Membership::inside);
    CHECK(classify({2, 4}, {1, 1}, 1, {1, 1}) == Membership::outside);
    CHECK_THROWS_AS(classify({2, 2, 2}, {1, 1, 1}, 2, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(classify({2, 2, 2}, {1, 1, 1}, 0.0, {0, 0, 0}), InvalidArgument);
}

TEST_CASE("boundary points escalate to exact arithmetic")
{
    // The certified float bound cannot decide a sum that is exactly 1.
    CHECK(classify({2, 2, 2}, {1, 1, 1}, 2, {2, 0, 0}, Precision::certified_float) ==
          Membership::boundary_uncertain);
    CHECK(classify({2, 2, 2}, {1, 1, 1}, 2, {2, 0, 0}, Precision::exact) == Membership::inside);
    // 3-4-5: (3/5)^2 + (4/5)^2 = 1 exactly.
    CHECK(classify({2, 2}, {1, 1}, 5, {3, 4}) == Membership::inside);
    CHECK(classify({2, 2}, {1, 1}, 5, {3, 5}) == Membership::outside);
    CHECK(classify({2, 2}, {1, 1}, std::nextafter(5.0, 0.0), {3, 4}) == Membership::outside);
    CHECK(classify({2, 2}, {1, 1}, std::nextafter(5.0, 10.0), {3, 4}) == Membership::inside);
}

TEST_CASE("membership agrees with an exact integer test")
{
    // For A = I and integer t: inside iff sum k_j^w_j t^(W - w_j) <= t^W.
    const std::vector<int> w{2, 4, 2};
    const Exponents ex(w);
    const auto id = StretchFactors::identity(3);
    for (std::int64_t t = 1; t <= 6; ++t) {
        for (std::int64_t x = -t; x <= t; ++x)
            for (std::int64_t y = -t; y <= t; ++y)
                for (std::int64_t z = -t; z <= t; ++z) {
                    const __int128 lhs = static_cast<__int128>(x * x) * t * t + y * y * y * y +
                                         static_cast<__int128>(z * z) * t * t;
                    const bool inside = lhs <= static_cast<__int128>(t) * t * t * t;
                    std::vector<std::int64_t> k{x, y, z};
                    CHECK((membership(ex, id, static_cast<double>(t), k) == Membership::inside) == inside);
                }
    }
}

TEST_CASE("membership is sign-symmetric and monotone in t")
{
    const Exponents ex({2, 2, 4});
    const auto a = StretchFactors::from_values({1.7, 0.8, 1.0 / (1.7 * 0.8)});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coord(-6, 6);
    std::uniform_real_distribution<double> tt(1.0, 6.0);
    for (int i = 0; i < 2000; ++i) {
        std::vector<std::int64_t> k{coord(rng), coord(rng), coord(rng)};
        const double t = tt(rng);
        const auto m = membership(ex, a, t, k);
        std::vector<std::int64_t> flipped{-k[0], k[1], -k[2]};
        CHECK(membership(ex, a, t, flipped) == m);
        if (m == Membership::inside) CHECK(membership(ex, a, t * 1.25, k) == Membership::inside);
    }
}

TEST_CASE("certified sum never misclassifies")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coord(0, 40);
    std::uniform_real_distribution<double> rr(5.0, 40.0);
    const Exponents ex({2, 4, 6});
    for (int i = 0; i < 3000; ++i) {
        std::vector<double> logs{std::log(rr(rng) / 20.0), std::log(rr(rng) / 20.0)};
        const auto a = StretchFactors::from_log(logs);
        const double t = rr(rng);
        std::vector<std::int64_t> k{coord(rng), coord(rng), coord(rng)};
        const auto fast = membership(ex, a, t, k, Precision::certified_float);
        const auto exact = membership(ex, a, t, k, Precision::exact);
        CHECK(exact != Membership::boundary_uncertain);
        if (fast != Membership::boundary_uncertain) CHECK(fast == exact);
    }
}

TEST_CASE("balanced factors")
{
    auto b = balanced_factors(Exponents({2, 2, 2}));
    for (double v : b.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    b = balanced_factors(Exponents({4, 4, 4}));
    for (double v : b.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    b = balanced_factors(Exponents({2, 2, 4}));
    CHECK(b[0] == doctest::Approx(1.0363).epsilon(1e-4));
    CHECK(b[1] == b[0]);
    CHECK(b[2] == doctest::Approx(0.9312).epsilon(1e-4));
    CHECK(std::abs(b[0] * b[1] * b[2] - 1.0) <= 1e-12);

    // Cross-check against quadrature slice areas: |D_1| = 4 V(2,4), |D_3| = 4 V(2,2).
    const double d1 = 4.0 * oracle::quadrature_octant_volume({2, 4});
    const double d3 = 4.0 * oracle::quadrature_octant_volume({2, 2});
    const double g = std::cbrt(d1 * d1 * d3);
    CHECK(b[0] == doctest::Approx(d1 / g).epsilon(1e-8));
    CHECK(b[2] == doctest::Approx(d3 / g).epsilon(1e-8));
}

TEST_CASE("gamma rate")
{
    CHECK(gamma_rate(Exponents({4, 4, 4})) == Rational{1, 4});
    CHECK(gamma_rate(Exponents({2, 2, 6})) == Rational{1, 6});
    CHECK(gamma_rate(Exponents({2, 2, 2, 2})) == Rational{3, 10});
    CHECK(gamma_rate(Exponents({2, 2, 4})) == Rational{1, 4});
    CHECK(gamma_rate(Exponents({2, 2, 2})).value() == doctest::Approx(0.25));
}

TEST_CASE("exact rational sum")
{
    std::vector<int> w{2, 2};
    std::vector<double> a{1.0, 1.0};
    std::vector<std::int64_t> k{3, 4};
    CHECK(detail::exact_sum_le_one(w, a, 5.0, k));
    k[1] = 5;
    CHECK_FALSE(detail::exact_sum_le_one(w, a, 5.0, k));
    // a = (2, 1/2), t = 3: (1/6)^2 + (1.5/1.5)^2 > 1, (0/6)^2 + 1 = 1.
    std::vector<double> b{2.0, 0.5};
    std::vector<std::int64_t> edge{0, 1};
    CHECK_FALSE(detail::exact_sum_le_one(w, b, 2.0, std::vector<std::int64_t>{1, 1}));
    CHECK(detail::exact_sum_le_one(w, b, 2.0, edge));
}
