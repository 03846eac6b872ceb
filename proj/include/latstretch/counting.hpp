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

#include <cstdint>
#include <string_view>

#include "latstretch/domain.hpp"

namespace latstretch {

enum class RegionKind {
    full,             ///< Z^d in tAD
    positive,         ///< N^d in tAD (all coordinates >= 1)
    nonnegative,      ///< Z_+^d in tAD (all coordinates >= 0)
    hyperplane_union, ///< Z^d in tA(D_1 u ... u D_d)
};

std::string_view to_string(RegionKind region);
/// Accepts "full", "positive", "nonnegative", "hyperplane_union" (or "union").
RegionKind parse_region(std::string_view name);

struct LatticeCount {
    RegionKind region = RegionKind::full;
    double t = 0.0;
    StretchFactors a = StretchFactors::identity(2);
    std::int64_t count = 0;
    /// Boundary-uncertain classifications resolved in exact arithmetic.
    std::int64_t boundary_escalations = 0;
};

/// Exact count. Iterates the first d-1 axes (largest a_j t closed last) and
/// closes the last coordinate analytically with a certified +-1 correction.
/// hyperplane_union uses exact inclusion-exclusion over coordinate subspaces.
/// Parallelizes over the outermost axis; the result is thread-count independent.
LatticeCount count(const Exponents& omegas, const StretchFactors& a, double t, RegionKind region);

/// Largest box size brute_force_count will enumerate.
inline constexpr double kBruteForceGuard = 1e8;

/// Point-by-point enumeration of the bounding box. Throws GuardExceeded when
/// prod_j (2 floor(a_j t) + 1) exceeds kBruteForceGuard.
LatticeCount brute_force_count(const Exponents& omegas, const StretchFactors& a, double t,
                               RegionKind region);

/// prod_j (2 floor(a_j t) + 1), the brute-force box size.
double brute_force_box_size(const StretchFactors& a, double t);

/// count(full) == 2^d count(positive) + count(hyperplane_union).
bool symmetry_decomposition_check(const Exponents& omegas, const StretchFactors& a, double t);

} // namespace latstretch
