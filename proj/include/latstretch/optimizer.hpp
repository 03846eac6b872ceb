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

// Search for det-1 diagonal stretches maximizing #(N^d in tAD) or minimizing
// #(Z_+^d in tAD). The objective is a step function of the log-factors, so
// the search is a deterministic nested grid refinement rather than a
// gradient method. Results are the best point found at the final grid
// resolution, not a certified global optimum.

#include <cstdint>
#include <string_view>
#include <vector>

#include "latstretch/counting.hpp"
#include "latstretch/domain.hpp"

namespace latstretch {

enum class Objective { maximize_positive, minimize_nonnegative };

std::string_view to_string(Objective objective);
/// Accepts "max-positive"/"maximize_positive" and "min-nonnegative"/"minimize_nonnegative".
Objective parse_objective(std::string_view name);
RegionKind objective_region(Objective objective);

struct SearchConfig {
    int levels = 7;
    int grid_per_axis = 17;
    double initial_radius = 0.5;
    int keep_top = 5;
    int expand_limit = 3;

    /// Throws InvalidArgument unless levels >= 1, grid_per_axis is odd and
    /// >= 3, initial_radius > 0, keep_top >= 1 and expand_limit >= 0.
    void validate() const;
};

struct OptimizationResult {
    double t = 0.0;
    Objective objective = Objective::maximize_positive;
    StretchFactors best = StretchFactors::identity(2);
    std::int64_t value = 0;
    /// Every final-level grid point achieving `value`, plus their images under
    /// swaps of equal-exponent axes and the identity when it ties, in
    /// lexicographic log order.
    std::vector<StretchFactors> ties;
    /// Final log-space grid spacing.
    double resolution = 0.0;
    /// best_j - balanced_j.
    std::vector<double> deviations;
    /// Number of boundary-triggered radius doublings.
    int expansions = 0;
    /// Largest log-space radius searched around any center.
    double max_radius = 0.0;
    /// The best point sat on the edge of a fully expanded level.
    bool boundary_warning = false;
    /// Stretches evaluated, counting the identity reference once.
    std::int64_t evaluations = 0;
};

/// count(positive) or count(nonnegative) depending on the objective.
std::int64_t evaluate_objective(const Exponents& omegas, double t, Objective objective,
                                const StretchFactors& a);

/// Throws InvalidArgument when t < 1 or the config is invalid.
OptimizationResult optimize(const Exponents& omegas, double t, Objective objective,
                            const SearchConfig& config = {});

} // namespace latstretch
