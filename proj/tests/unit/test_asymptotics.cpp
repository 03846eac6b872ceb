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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "latstretch/asymptotics.hpp"
#include "latstretch/errors.hpp"

using namespace latstretch;
using std::numbers::pi;

TEST_CASE("two-term predictions for the ball")
{
    const Exponents ball({2, 2, 2});
    const auto id = StretchFactors::identity(3);
    for (double t : {2.0, 10.0, 37.5}) {
        const auto pos = predict(ball, id, t, RegionKind::positive);
        CHECK(pos.leading == doctest::Approx(pi / 6 * t * t * t).epsilon(1e-12));
        CHECK(pos.second == doctest::Approx(-3 * pi / 8 * t * t).epsilon(1e-12));
        const auto nonneg = predict(ball, id, t, RegionKind::nonnegative);
        CHECK(nonneg.leading == pos.leading);
        CHECK(nonneg.second == -pos.second);
        const auto full = predict(ball, id, t, RegionKind::full);
        CHECK(full.leading == doctest::Approx(4 * pi / 3 * t * t * t).epsilon(1e-12));
        CHECK(full.second == 0.0);
        const auto uni = predict(ball, id, t, RegionKind::hyperplane_union);
        CHECK(uni.leading == doctest::Approx(3 * pi * t * t).epsilon(1e-12));
    }
}

TEST_CASE("error budget exponents")
{
    const Exponents quartic({4, 4, 4});
    const auto id = StretchFactors::identity(3);
    // Both envelope terms scale as t^(3/2) when d = 3 and w = 4.
    const double b1 = predict(quartic, id, 10.0, RegionKind::full).error_budget;
    const double b2 = predict(quartic, id, 1000.0, RegionKind::full).error_budget;
    CHECK(std::log(b2 / b1) / std::log(100.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(b1 == doctest::Approx(2.0 * std::pow(10.0, 1.5)).epsilon(1e-12));

    const auto stretched = StretchFactors::from_values({0.5, 1.0, 2.0});
    const auto p = predict(quartic, stretched, 1.5, RegionKind::full);
    CHECK_FALSE(p.in_hypothesis);
    CHECK(predict(quartic, stretched, 2.0, RegionKind::full).in_hypothesis);
}

TEST_CASE("second term is symmetric under relabeling")
{
    const auto a = StretchFactors::from_values({1.3, 0.7, 1.0 / (1.3 * 0.7)});
    const auto b = StretchFactors::from_values({0.7, 1.0 / (1.3 * 0.7), 1.3});
    const auto pa = predict(Exponents({2, 4, 6}), a, 12.0, RegionKind::positive);
    const auto pb = predict(Exponents({4, 6, 2}), b, 12.0, RegionKind::positive);
    CHECK(pa.second == doctest::Approx(pb.second).epsilon(1e-13));
    CHECK(pa.leading == doctest::Approx(pb.leading).epsilon(1e-13));
}

TEST_CASE("balanced factors minimize the boundary term")
{
    const Exponents ex({2, 2, 4});
    const auto b = balanced_factors(ex);
    const double best = predict(ex, b, 20.0, RegionKind::positive).second;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> logs{std::log(b[0]) + u(rng), std::log(b[1]) + u(rng)};
        CHECK(predict(ex, StretchFactors::from_log(logs), 20.0, RegionKind::positive).second <= best + 1e-9);
    }
}

TEST_CASE("remainders")
{
    const Exponents ball({2, 2, 2});
    const auto id = StretchFactors::identity(3);
    CHECK(remainder(ball, id, 2.0, RegionKind::full) == doctest::Approx(33.0 - 32.0 * pi / 3).epsilon(1e-12));
    CHECK(remainder(ball, id, 2.0, RegionKind::full) == doctest::Approx(-0.510).epsilon(1e-3));
    CHECK(remainder(ball, id, 10.0, RegionKind::full) ==
          doctest::Approx(4169.0 - 4000.0 * pi / 3).epsilon(1e-12));
}

TEST_CASE("two-term bound checks")
{
    const Exponents ball({2, 2, 2});
    const auto id = StretchFactors::identity(3);
    CHECK(check_two_term_upper(ball, id, 2.0, 0.01));
    CHECK(check_two_term_lower(ball, id, 2.0, 0.01));
    CHECK_FALSE(check_two_term_upper(ball, id, 2.0, 1.0));
    CHECK_FALSE(check_two_term_lower(ball, id, 2.0, 2.0));
    const auto skew = StretchFactors::from_values({0.25, 2.0, 2.0});
    CHECK_THROWS_AS(check_two_term_upper(ball, skew, 3.0, 0.01), InvalidArgument);
    CHECK_THROWS_AS(check_two_term_lower(ball, skew, 3.0, 0.01), InvalidArgument);
}

TEST_CASE("empirical constants")
{
    const Exponents ball({2, 2, 2});
    std::vector<BoundSample> one{{StretchFactors::identity(3), 2.0}};
    const auto c = estimate_c(ball, one);
    CHECK(c.c_upper == doctest::Approx((8 * pi / 6 - 1.0) / 4.0).epsilon(1e-12));
    CHECK(c.c_lower == doctest::Approx((11.0 - 8 * pi / 6) / 4.0).epsilon(1e-12));
    CHECK(c.c_upper == doctest::Approx(0.797).epsilon(1e-3));
    CHECK(c.c_lower == doctest::Approx(1.703).epsilon(1e-3));

    const Exponents ex({2, 2, 4});
    std::vector<BoundSample> grid;
    for (double t : {5.0, 10.0, 20.0, 50.0}) {
        grid.push_back({StretchFactors::identity(3), t});
        grid.push_back({balanced_factors(ex), t});
    }
    const auto e = estimate_c(ex, grid);
    CHECK(e.c_upper > 0.0);
    CHECK(e.c_lower > 0.0);
    for (const auto& s : grid) {
        CHECK(check_two_term_upper(ex, s.a, s.t, e.c_upper));
        CHECK(check_two_term_lower(ex, s.a, s.t, e.c_lower));
    }
    CHECK(check_two_term_upper(ex, balanced_factors(ex), 50.0, e.c_upper / 2));
    CHECK_THROWS_AS(estimate_c(ex, std::vector<BoundSample>{}), InvalidArgument);
}

TEST_CASE("balanced lemma check")
{
    for (double eps : {1e-2, 1e-4}) {
        const double u = std::acosh(1.0 + eps / 2.0) * (1.0 - 1e-9);
        std::vector<double> s{std::exp(u), std::exp(-u), 1.0};
        CHECK(check_balanced_lemma(s, eps, 2.0));
        CHECK(std::abs(s[0] - 1.0) <= 2.0 * std::sqrt(eps));
    }
    std::vector<double> flat{1.0, 1.0, 1.0};
    CHECK(check_balanced_lemma(flat, 1e-6, 1e-3));
    // Hypothesis violations are errors, not failures.
    std::vector<double> far{2.0, 0.5, 1.0};
    CHECK_THROWS_AS(check_balanced_lemma(far, 1e-2, 10.0), InvalidArgument);
    std::vector<double> off{1.1, 1.0, 1.0};
    CHECK_THROWS_AS(check_balanced_lemma(off, 0.5, 10.0), InvalidArgument);
    CHECK_THROWS_AS(check_balanced_lemma(flat, 0.0, 10.0), InvalidArgument);
    // A tight constant makes the check fail.
    const double u = std::acosh(1.0 + 0.005);
    std::vector<double> edge{std::exp(u), std::exp(-u), 1.0};
    CHECK_FALSE(check_balanced_lemma(edge, 1.1e-2, 0.5));
}
