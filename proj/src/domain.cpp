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

#include "latstretch/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "certified.hpp"
#include "latstretch/errors.hpp"
#include "latstretch/measure.hpp"

namespace latstretch {

void validate_exponent_list(std::span<const int> omegas)
{
    for (int w : omegas) {
        if (w < 2 || w % 2 != 0)
            throw InvalidArgument("exponent " + std::to_string(w)
                                  + (w % 2 != 0 ? " is not even" : " is smaller than 2"));
    }
}

Exponents::Exponents(std::vector<int> omegas) : omegas_(std::move(omegas))
{
    if (omegas_.size() < 2)
        throw InvalidArgument("dimension must be at least 2, got " + std::to_string(omegas_.size()));
    validate_exponent_list(omegas_);
    max_ = *std::max_element(omegas_.begin(), omegas_.end());
}

StretchFactors::StretchFactors(std::vector<double> a) : a_(std::move(a))
{
    a_star_ = 0.0;
    for (double v : a_) a_star_ = std::max(a_star_, 1.0 / v);
}

StretchFactors StretchFactors::from_values(std::vector<double> a, double tolerance)
{
    if (a.empty()) throw InvalidArgument("stretch factors: empty list");
    double log_product = 0.0;
    for (double v : a) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidArgument("stretch factor " + std::to_string(v) + " is not a positive finite number");
        log_product += std::log(v);
    }
    const double product = std::exp(log_product);
    if (std::abs(product - 1.0) > tolerance)
        throw InvalidArgument("stretch factors must have product 1 (got " + std::to_string(product) + ")");

    const double scale = std::exp(-log_product / static_cast<double>(a.size()));
    double correction = 0.0;
    if (scale != 1.0) {
        for (double& v : a) v *= scale;
        correction = std::abs(scale - 1.0);
    }
    StretchFactors out(std::move(a));
    out.renormalization_ = correction;
    return out;
}

StretchFactors StretchFactors::from_log(std::span<const double> free_logs)
{
    std::vector<double> a;
    a.reserve(free_logs.size() + 1);
    double sum = 0.0;
    for (double u : free_logs) {
        a.push_back(std::exp(u));
        sum += u;
    }
    a.push_back(std::exp(-sum));
    return StretchFactors(std::move(a));
}

StretchFactors StretchFactors::from_normalized(std::vector<double> a)
{
    if (a.empty()) throw InvalidArgument("stretch factors: empty list");
    double log_product = 0.0;
    for (double v : a) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidArgument("stretch factor " + std::to_string(v) + " is not a positive finite number");
        log_product += std::log(v);
    }
    if (std::abs(std::expm1(log_product)) > 1e-12)
        throw InvalidArgument("stretch factors are not normalized to unit product");
    return StretchFactors(std::move(a));
}

StretchFactors StretchFactors::identity(std::size_t d)
{
    return StretchFactors(std::vector<double>(d, 1.0));
}

double a_star(const StretchFactors& a) { return a.a_star(); }

Membership membership(const Exponents& omegas, const StretchFactors& a, double t,
                      std::span<const std::int64_t> k, Precision precision)
{
    const std::size_t d = omegas.dim();
    if (k.size() != d || a.dim() != d)
        throw InvalidArgument("membership: dimension mismatch (exponents " + std::to_string(d)
                              + ", factors " + std::to_string(a.dim()) + ", point "
                              + std::to_string(k.size()) + ")");
    if (!(t > 0.0)) throw InvalidArgument("membership: t must be positive");

    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        if (k[j] == 0) continue;
        const double inv_r = 1.0 / (a[j] * t);
        s += detail::ipow(static_cast<double>(k[j] < 0 ? -k[j] : k[j]) * inv_r, omegas[j]);
    }
    const Membership m = detail::SumCertifier(omegas.max(), d).classify(s);
    if (m != Membership::boundary_uncertain || precision == Precision::certified_float) return m;
    return detail::exact_sum_le_one(omegas.values(), a.values(), t, k) ? Membership::inside
                                                                       : Membership::outside;
}

StretchFactors balanced_factors(const Exponents& omegas)
{
    const auto table = measure_table(omegas);
    double log_mean = 0.0;
    for (double m : table.sections) log_mean += std::log(m);
    log_mean /= static_cast<double>(omegas.dim());

    std::vector<double> b;
    b.reserve(omegas.dim());
    for (double m : table.sections) b.push_back(std::exp(std::log(m) - log_mean));
    return StretchFactors::from_values(std::move(b), 1e-9);
}

Rational gamma_rate(const Exponents& omegas)
{
    const auto d = static_cast<std::int64_t>(omegas.dim());
    // Compare (d-1)/(2w) with (d-1)/(2d+2): the smaller has the larger denominator.
    const std::int64_t den = std::max<std::int64_t>(2 * omegas.max(), 2 * d + 2);
    const std::int64_t num = d - 1;
    const std::int64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

} // namespace latstretch
