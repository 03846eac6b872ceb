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

// Convergence experiments: optimize over a grid of dilations, regress the
// log deviation from the balanced stretch against log t, and write results.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "latstretch/domain.hpp"
#include "latstretch/optimizer.hpp"

namespace latstretch {

struct SweepRecord {
    double t = 0.0;
    OptimizationResult result;
    /// max_j |best_j - balanced_j|.
    double max_deviation = 0.0;
    std::int64_t count_observed = 0;
    /// Two-term prediction for the objective's region at the best stretch.
    double count_predicted = 0.0;
    double error_budget = 0.0;
};

struct RateFit {
    /// Fewer than two records above the resolution floor; slope is not reported.
    bool saturated = true;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::int64_t points_used = 0;
    /// Records whose max_deviation did not exceed the search resolution.
    std::int64_t censored = 0;
    Rational gamma_theoretical;
};

/// `points` logarithmically spaced values from t_min to t_max inclusive.
std::vector<double> log_spaced(double t_min, double t_max, int points);

/// One independent optimization per t. Throws InvalidArgument for an empty or
/// non-increasing grid or any t < 1.
std::vector<SweepRecord> run_sweep(const Exponents& omegas, const std::vector<double>& t_grid,
                                   Objective objective, const SearchConfig& config = {});

/// Least-squares fit of log(max_deviation) on log(t) over records with
/// max_deviation > resolution.
RateFit fit_rate(const std::vector<SweepRecord>& records, Rational gamma);

/// Records with |count_observed - count_predicted| > factor * error_budget.
std::vector<double> envelope_violations(const std::vector<SweepRecord>& records, double factor = 3.0);

enum class EmitFormat { csv, json, svg };
EmitFormat parse_format(std::string_view name);

std::string to_csv(const std::vector<SweepRecord>& records);
std::string to_json(const std::vector<SweepRecord>& records, const RateFit& fit);
std::string to_svg(const std::vector<SweepRecord>& records, const RateFit& fit);

struct SweepData {
    std::vector<SweepRecord> records;
    RateFit fit;
};

/// Inverse of to_json. Throws InvalidArgument on malformed input.
SweepData parse_sweep_json(std::string_view text);

/// Writes one of the formats above. Throws IoError naming the path.
void emit(const std::vector<SweepRecord>& records, const RateFit& fit, EmitFormat format,
          const std::filesystem::path& destination);

} // namespace latstretch
