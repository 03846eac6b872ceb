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

// Test-only oracles. None of these route through the library's closed forms
// or its counting kernel.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace latstretch::oracle {

// Octant measure of { y >= 0 : sum_{l >= level} y_l^w_l <= budget } as an
// iterated adaptive Gauss-Kronrod integral. The substitution
// y = Y (1 - v^2) softens the (budget - y^w)^alpha endpoint behaviour.
inline double iterated_octant(const std::vector<int>& omegas, std::size_t level, double budget, double tol)
{
    using boost::math::quadrature::gauss_kronrod;
    if (budget <= 0.0) return 0.0;
    const double reach = std::pow(budget, 1.0 / omegas[level]);
    if (level + 1 == omegas.size()) return reach;
    auto integrand = [&](double v) {
        const double y = reach * (1.0 - v * v);
        const double rest = budget - std::pow(y, omegas[level]);
        return 2.0 * reach * v * iterated_octant(omegas, level + 1, rest, tol);
    };
    return gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 12, tol);
}

inline double quadrature_octant_volume(const std::vector<int>& omegas, double tol = 1e-9)
{
    return iterated_octant(omegas, 0, 1.0, tol);
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

inline MonteCarloEstimate monte_carlo_octant_volume(const std::vector<int>& omegas, std::int64_t samples,
                                                    std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        double s = 0.0;
        for (int w : omegas) {
            const double x = unit(rng);
            double p = 1.0;
            for (int e = 0; e < w; ++e) p *= x;
            s += p;
        }
        if (s <= 1.0) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

// Exact count for A = I and integer t: k is inside iff
// sum_j |k_j|^w_j t^(W - w_j) <= t^W with W = max w_j, all in integers.
// `keep` filters points (e.g. positive orthant).
inline std::int64_t integer_identity_count(const std::vector<int>& omegas, std::int64_t t,
                                           const std::function<bool(const std::vector<std::int64_t>&)>& keep)
{
    int top = 0;
    for (int w : omegas) top = std::max(top, w);
    auto ipow = [](__int128 b, int e) {
        __int128 r = 1;
        while (e-- > 0) r *= b;
        return r;
    };
    const __int128 limit = ipow(t, top);
    const std::size_t d = omegas.size();
    std::vector<std::int64_t> k(d, -t);
    std::int64_t total = 0;
    while (true) {
        __int128 s = 0;
        for (std::size_t j = 0; j < d; ++j) s += ipow(k[j] < 0 ? -k[j] : k[j], omegas[j]) * ipow(t, top - omegas[j]);
        if (s <= limit && keep(k)) ++total;
        std::size_t j = 0;
        while (j < d && k[j] == t) k[j++] = -t;
        if (j == d) break;
        ++k[j];
    }
    return total;
}

} // namespace latstretch::oracle
