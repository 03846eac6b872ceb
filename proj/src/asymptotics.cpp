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

#include "latstretch/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <tbb/parallel_for.h>

#include "latstretch/errors.hpp"

namespace latstretch {

Prediction predict(const MeasureTable& measures, const Exponents& omegas, const StretchFactors& a,
                   double t, RegionKind region)
{
    const double d = static_cast<double>(omegas.dim());
    const double w = omegas.max();
    const double astar = a.a_star();

    double boundary = 0.0; // sum_j a_j^-1 |D_j| t^(d-1)
    for (std::size_t j = 0; j < omegas.dim(); ++j) boundary += measures.sections[j] / a[j];
    boundary *= std::pow(t, d - 1.0);
    const double bulk = measures.volume_full * std::pow(t, d);
    const double orthant = std::ldexp(1.0, -static_cast<int>(omegas.dim()));

    Prediction p;
    p.region = region;
    switch (region) {
    case RegionKind::full: p.leading = bulk; break;
    case RegionKind::positive:
        p.leading = orthant * bulk;
        p.second = -orthant * boundary;
        break;
    case RegionKind::nonnegative:
        p.leading = orthant * bulk;
        p.second = orthant * boundary;
        break;
    case RegionKind::hyperplane_union: p.leading = boundary; break;
    }
    p.error_budget = std::pow(astar, 1.0 + (d - 1.0) / w) * std::pow(t, (d - 1.0) * (1.0 - 1.0 / w))
                     + std::pow(astar, 2.0 - 2.0 / (d + 1.0)) * std::pow(t, d - 2.0 + 2.0 / (d + 1.0));
    p.in_hypothesis = t / astar >= 1.0;
    return p;
}

Prediction predict(const Exponents& omegas, const StretchFactors& a, double t, RegionKind region)
{
    if (a.dim() != omegas.dim()) throw InvalidArgument("predict: dimension mismatch");
    if (!(t > 0.0)) throw InvalidArgument("predict: t must be positive");
    return predict(measure_table(omegas), omegas, a, t, region);
}

double remainder(const Exponents& omegas, const StretchFactors& a, double t, RegionKind region)
{
    const auto observed = count(omegas, a, t, region).count;
    return static_cast<double>(observed) - predict(omegas, a, t, region).value();
}

namespace {

void require_hypothesis(const StretchFactors& a, double t)
{
    if (!(t / a.a_star() >= 1.0))
        throw InvalidArgument("two-term bound requires t/a* >= 1 (t = " + std::to_string(t)
                              + ", a* = " + std::to_string(a.a_star()) + ")");
}

double orthant_volume_term(const MeasureTable& measures, std::size_t d, double t)
{
    return std::ldexp(measures.volume_full, -static_cast<int>(d)) * std::pow(t, static_cast<double>(d));
}

double scale_term(const StretchFactors& a, std::size_t d, double t)
{
    return a.a_star() * std::pow(t, static_cast<double>(d) - 1.0);
}

} // namespace

bool check_two_term_upper(const Exponents& omegas, const StretchFactors& a, double t, double c)
{
    require_hypothesis(a, t);
    const auto measures = measure_table(omegas);
    const double bound = orthant_volume_term(measures, omegas.dim(), t) - c * scale_term(a, omegas.dim(), t);
    return static_cast<double>(count(omegas, a, t, RegionKind::positive).count) <= bound;
}

bool check_two_term_lower(const Exponents& omegas, const StretchFactors& a, double t, double c)
{
    require_hypothesis(a, t);
    const auto measures = measure_table(omegas);
    const double bound = orthant_volume_term(measures, omegas.dim(), t) + c * scale_term(a, omegas.dim(), t);
    return static_cast<double>(count(omegas, a, t, RegionKind::nonnegative).count) >= bound;
}

TwoTermConstants estimate_c(const Exponents& omegas, std::span<const BoundSample> samples)
{
    if (samples.empty()) throw InvalidArgument("estimate_c: empty sample list");
    for (const auto& s : samples) {
        if (s.a.dim() != omegas.dim()) throw InvalidArgument("estimate_c: dimension mismatch");
        require_hypothesis(s.a, s.t);
    }

    const auto measures = measure_table(omegas);
    const std::size_t d = omegas.dim();
    std::vector<TwoTermConstants> per_sample(samples.size());
    tbb::parallel_for(std::size_t{0}, samples.size(), [&](std::size_t i) {
        const auto& s = samples[i];
        const double volume = orthant_volume_term(measures, d, s.t);
        const double scale = scale_term(s.a, d, s.t);
        const auto positive = static_cast<double>(count(omegas, s.a, s.t, RegionKind::positive).count);
        const auto nonnegative =
            static_cast<double>(count(omegas, s.a, s.t, RegionKind::nonnegative).count);
        per_sample[i] = TwoTermConstants{(volume - positive) / scale, (nonnegative - volume) / scale};
    });

    TwoTermConstants out{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (const auto& c : per_sample) {
        out.c_upper = std::min(out.c_upper, c.c_upper);
        out.c_lower = std::min(out.c_lower, c.c_lower);
    }
    return out;
}

bool check_balanced_lemma(std::span<const double> s, double epsilon, double constant)
{
    if (s.empty()) throw InvalidArgument("check_balanced_lemma: empty list");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("check_balanced_lemma: epsilon must lie in (0,1)");
    if (!(constant > 0.0)) throw InvalidArgument("check_balanced_lemma: C must be positive");

    double log_product = 0.0;
    double sum = 0.0;
    for (double v : s) {
        if (!(v > 0.0)) throw InvalidArgument("check_balanced_lemma: entries must be positive");
        log_product += std::log(v);
        sum += v;
    }
    if (std::abs(std::expm1(log_product)) > 1e-12)
        throw InvalidArgument("check_balanced_lemma: product of s differs from 1");
    if (sum > static_cast<double>(s.size()) + epsilon)
        throw InvalidArgument("check_balanced_lemma: sum of s exceeds d + epsilon");

    double deviation = 0.0;
    for (double v : s) deviation = std::max(deviation, std::abs(v - 1.0));
    return deviation <= constant * std::sqrt(epsilon);
}

} // namespace latstretch
