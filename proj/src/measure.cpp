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

#include "latstretch/measure.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "latstretch/errors.hpp"

namespace latstretch {

namespace {

// sum_l prod_{k != l} w_k, which is the integer prod_k w_k * sum_l 1/w_l.
std::uint64_t volume_prefactor(std::span<const int> omegas)
{
    std::uint64_t total = 0;
    for (std::size_t l = 0; l < omegas.size(); ++l) {
        std::uint64_t product = 1;
        for (std::size_t k = 0; k < omegas.size(); ++k) {
            if (k == l) continue;
            if (__builtin_mul_overflow(product, static_cast<std::uint64_t>(omegas[k]), &product))
                throw InvalidArgument("exponent list too large for exact volume prefactor");
        }
        if (__builtin_add_overflow(total, product, &total))
            throw InvalidArgument("exponent list too large for exact volume prefactor");
    }
    return total;
}

std::vector<int> without(std::span<const int> omegas, std::size_t skip_a,
                         std::size_t skip_b = std::numeric_limits<std::size_t>::max())
{
    std::vector<int> rest;
    rest.reserve(omegas.size());
    for (std::size_t l = 0; l < omegas.size(); ++l)
        if (l != skip_a && l != skip_b) rest.push_back(omegas[l]);
    return rest;
}

} // namespace

double octant_volume(std::span<const int> omegas)
{
    if (omegas.empty()) throw InvalidArgument("octant_volume: empty exponent list");
    validate_exponent_list(omegas);

    double log_numerator = 0.0;
    double inverse_sum = 0.0;
    for (int w : omegas) {
        log_numerator += std::lgamma(1.0 / w);
        inverse_sum += 1.0 / w;
    }
    const double log_value = log_numerator - std::lgamma(inverse_sum)
                             - std::log(static_cast<double>(volume_prefactor(omegas)));
    return std::exp(log_value);
}

MeasureTable measure_table(const Exponents& omegas)
{
    const std::size_t d = omegas.dim();
    const auto w = omegas.values();

    MeasureTable table;
    table.octant_volume = octant_volume(w);
    table.volume_full = std::ldexp(table.octant_volume, static_cast<int>(d));
    table.sections.resize(d);
    for (std::size_t j = 0; j < d; ++j)
        table.sections[j] = std::ldexp(octant_volume(without(w, j)), static_cast<int>(d - 1));

    if (d >= 3) {
        table.double_sections.assign(d, std::vector<double>(d, 0.0));
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = j + 1; k < d; ++k) {
                const double m =
                    std::ldexp(octant_volume(without(w, j, k)), static_cast<int>(d - 2));
                table.double_sections[j][k] = m;
                table.double_sections[k][j] = m;
            }
        }
    }
    return table;
}

double parallel_section(const Exponents& omegas, std::size_t axis, double x)
{
    const std::size_t d = omegas.dim();
    if (axis >= d)
        throw InvalidArgument("parallel_section: axis " + std::to_string(axis) + " out of range");
    if (!(x >= 0.0)) throw InvalidArgument("parallel_section: x must be >= 0");
    if (x >= 1.0) return 0.0;

    const auto rest = without(omegas.values(), axis);
    double exponent = 0.0;
    for (int w : rest) exponent += 1.0 / w;
    const double base = std::ldexp(octant_volume(rest), static_cast<int>(d - 1));
    return base * std::pow(1.0 - std::pow(x, omegas[axis]), exponent);
}

} // namespace latstretch
