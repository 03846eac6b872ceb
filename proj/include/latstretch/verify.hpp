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

#pragma once

// Seeded property suites run by the `verify` command.

#include <cstdint>
#include <string>
#include <vector>

#include "latstretch/domain.hpp"

namespace latstretch {

/// `count` seeded det-1 stretches with a* <= a_star_max.
std::vector<StretchFactors> random_factors(std::size_t d, int count, double a_star_max, std::uint64_t seed);

/// `count` rejection-sampled vectors s = exp(u), sum u = 0, with
/// sum s <= d + epsilon (0 < epsilon <= 1e-2).
std::vector<std::vector<double>> lemma_samples(std::size_t d, double epsilon, int count, std::uint64_t seed);

struct VerifyOptions {
    double t_max = 6.0;
    std::uint64_t seed = 7;
    int random_stretches = 5;
    int lemma_samples_per_epsilon = 10000;
    double lemma_constant = 10.0;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::int64_t cases = 0;
    std::int64_t failures = 0;
    std::string detail;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;

    bool passed() const
    {
        for (const auto& s : suites)
            if (!s.passed) return false;
        return true;
    }
};

/// Oracle equivalence, symmetry identity, two-term bounds with estimated
/// constants, and the balanced-sum lemma, all driven by `options.seed`.
VerifyReport run_verification(const Exponents& omegas, const VerifyOptions& options);

} // namespace latstretch
