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

#include "latstretch/verify.hpp"

#include <array>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "latstretch/asymptotics.hpp"
#include "latstretch/counting.hpp"
#include "latstretch/errors.hpp"

namespace latstretch {

std::vector<StretchFactors> random_factors(std::size_t d, int count, double a_star_max, std::uint64_t seed)
{
    if (!(a_star_max > 1.0)) throw InvalidArgument("random_factors: a_star_max must exceed 1");
    std::mt19937_64 rng(seed);
    const double reach = std::log(a_star_max);
    std::uniform_real_distribution<double> dist(-reach, reach);
    std::vector<StretchFactors> out;
    while (static_cast<int>(out.size()) < count) {
        std::vector<double> u(d - 1);
        for (double& v : u) v = dist(rng);
        auto a = StretchFactors::from_log(u);
        if (a.a_star() <= a_star_max) out.push_back(std::move(a));
    }
    return out;
}

std::vector<std::vector<double>> lemma_samples(std::size_t d, double epsilon, int count, std::uint64_t seed)
{
    if (!(epsilon > 0.0 && epsilon <= 1e-2)) throw InvalidArgument("lemma_samples: epsilon must lie in (0, 1e-2]");
    // Every feasible u has |u_j| < 2.4 sqrt(eps) when eps <= 1e-2, so this box
    // holds the whole feasible set.
    const double half_width = 3.0 * std::sqrt(epsilon);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-half_width, half_width);
    std::vector<std::vector<double>> out;
    while (static_cast<int>(out.size()) < count) {
        std::vector<double> s(d);
        double u_sum = 0.0;
        for (std::size_t j = 0; j + 1 < d; ++j) {
            const double u = dist(rng);
            u_sum += u;
            s[j] = std::exp(u);
        }
        s[d - 1] = std::exp(-u_sum);
        double sum = 0.0;
        double log_product = 0.0;
        for (double v : s) {
            sum += v;
            log_product += std::log(v);
        }
        if (sum <= static_cast<double>(d) + epsilon && std::abs(std::expm1(log_product)) <= 1e-12)
            out.push_back(std::move(s));
    }
    return out;
}

namespace {

std::vector<double> half_steps(double t_max)
{
    std::vector<double> ts;
    for (int i = 2; i / 2.0 <= t_max + 1e-12; ++i) ts.push_back(i / 2.0);
    return ts;
}

std::vector<StretchFactors> stretch_family(const Exponents& omegas, const VerifyOptions& options)
{
    std::vector<StretchFactors> family{StretchFactors::identity(omegas.dim()), balanced_factors(omegas)};
    for (auto& a : random_factors(omegas.dim(), options.random_stretches, 2.0, options.seed)) family.push_back(a);
    return family;
}

SuiteResult oracle_suite(const Exponents& omegas, const VerifyOptions& options)
{
    SuiteResult suite;
    suite.name = "oracle_equivalence";
    std::int64_t skipped = 0;
    for (const auto& a : stretch_family(omegas, options)) {
        for (double t : half_steps(options.t_max)) {
            if (brute_force_box_size(a, t) > kBruteForceGuard) {
                ++skipped;
                continue;
            }
            for (auto region : {RegionKind::full, RegionKind::positive, RegionKind::nonnegative,
                                RegionKind::hyperplane_union}) {
                ++suite.cases;
                const auto fast = count(omegas, a, t, region).count;
                const auto slow = brute_force_count(omegas, a, t, region).count;
                if (fast != slow) {
                    ++suite.failures;
                    if (suite.detail.empty())
                        suite.detail = fmt::format("first mismatch: t={} region={} count={} oracle={}", t,
                                                   to_string(region), fast, slow);
                }
            }
        }
    }
    if (suite.detail.empty() && skipped > 0) suite.detail = fmt::format("{} cases above brute-force guard skipped", skipped);
    suite.passed = suite.failures == 0;
    return suite;
}

SuiteResult symmetry_suite(const Exponents& omegas, const VerifyOptions& options)
{
    SuiteResult suite;
    suite.name = "symmetry_identity";
    for (const auto& a : stretch_family(omegas, options)) {
        for (double t : half_steps(options.t_max)) {
            ++suite.cases;
            if (!symmetry_decomposition_check(omegas, a, t)) {
                ++suite.failures;
                if (suite.detail.empty()) suite.detail = fmt::format("first failure at t={}", t);
            }
        }
    }
    suite.passed = suite.failures == 0;
    return suite;
}

SuiteResult two_term_suite(const Exponents& omegas, const VerifyOptions& options)
{
    SuiteResult suite;
    suite.name = "two_term_bounds";
    std::vector<BoundSample> samples;
    for (const auto& a : {StretchFactors::identity(omegas.dim()), balanced_factors(omegas)})
        for (double t = 1.0; t <= options.t_max + 1e-12; t += 1.0)
            if (t / a.a_star() >= 1.0) samples.push_back({a, t});
    if (samples.empty()) {
        suite.detail = "no samples satisfy t/a* >= 1";
        return suite;
    }
    const auto c = estimate_c(omegas, samples);
    suite.cases = static_cast<std::int64_t>(samples.size());
    if (!(c.c_upper > 0.0 && c.c_lower > 0.0)) {
        suite.failures = 1;
    } else {
        for (const auto& s : samples) {
            if (!check_two_term_upper(omegas, s.a, s.t, c.c_upper / 2)) ++suite.failures;
            if (!check_two_term_lower(omegas, s.a, s.t, c.c_lower / 2)) ++suite.failures;
        }
    }
    suite.detail = fmt::format("c_upper={:.6g} c_lower={:.6g}", c.c_upper, c.c_lower);
    suite.passed = suite.failures == 0;
    return suite;
}

SuiteResult lemma_suite(const Exponents& omegas, const VerifyOptions& options)
{
    SuiteResult suite;
    suite.name = "balanced_lemma";
    const std::array<double, 3> epsilons{1e-2, 1e-3, 1e-4};
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const auto samples = lemma_samples(omegas.dim(), epsilons[i], options.lemma_samples_per_epsilon,
                                           options.seed + 1 + i);
        for (const auto& s : samples) {
            ++suite.cases;
            if (!check_balanced_lemma(s, epsilons[i], options.lemma_constant)) ++suite.failures;
        }
    }
    suite.detail = fmt::format("C={}", options.lemma_constant);
    suite.passed = suite.failures == 0;
    return suite;
}

} // namespace

VerifyReport run_verification(const Exponents& omegas, const VerifyOptions& options)
{
    if (!(options.t_max >= 1.0)) throw InvalidArgument("verify: t_max must be >= 1");
    VerifyReport report;
    report.suites.push_back(oracle_suite(omegas, options));
    report.suites.push_back(symmetry_suite(omegas, options));
    report.suites.push_back(two_term_suite(omegas, options));
    report.suites.push_back(lemma_suite(omegas, options));
    return report;
}

} // namespace latstretch
