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

// Closed-form measures of D and its coordinate sections.

#include <cstddef>
#include <span>
#include <vector>

#include "latstretch/domain.hpp"

namespace latstretch {

/// Volume of { x >= 0 : sum_l x_l^w_l <= 1 }:
///   V(w_1..w_m) = (sum_l prod_k w_k / w_l)^-1 * prod_l Gamma(1/w_l) / Gamma(sum_l 1/w_l).
/// Throws InvalidArgument for an empty list or an invalid exponent.
double octant_volume(std::span<const int> omegas);

struct MeasureTable {
    double volume_full = 0.0;
    double octant_volume = 0.0;
    /// sections[j] = |D_j|, the (d-1)-measure of D cut by x_j = 0.
    std::vector<double> sections;
    /// double_sections[j][k] = |D_{j,k}| for j != k; diagonal is 0. Empty when d = 2.
    std::vector<std::vector<double>> double_sections;
};

MeasureTable measure_table(const Exponents& omegas);

/// (d-1)-measure of the slice of D at x_j = x, for 0 <= x. Zero for x >= 1.
double parallel_section(const Exponents& omegas, std::size_t axis, double x);

} // namespace latstretch
