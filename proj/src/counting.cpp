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

#include "latstretch/counting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <tbb/blocked_range.h>
#include <tbb/parallel_reduce.h>

#include "certified.hpp"
#include "latstretch/errors.hpp"

namespace latstretch {

namespace {

struct Tally {
    std::int64_t count = 0;
    std::int64_t escalations = 0;

    void add(std::int64_t v)
    {
        if (__builtin_add_overflow(count, v, &count))
            throw CountOverflow("lattice count exceeds 64-bit accumulator");
    }

    Tally& operator+=(const Tally& o)
    {
        add(o.count);
        escalations += o.escalations;
        return *this;
    }
};

enum class Orthant { symmetric, positive, nonnegative };

std::int64_t checked_mul(std::int64_t x, std::int64_t y)
{
    std::int64_t out = 0;
    if (__builtin_mul_overflow(x, y, &out))
        throw CountOverflow("lattice count exceeds 64-bit accumulator");
    return out;
}

// Counts lattice points of { sum_j (k_j / (a_j t))^w_j <= 1 } for arbitrary
// positive a_j, restricted to an orthant pattern. Axes are reordered so the
// largest a_j t is the analytically closed last axis.
class Kernel {
public:
    Kernel(std::span<const int> omegas, std::span<const double> a, double t, Orthant orthant)
        : n_(omegas.size()), t_(t), orthant_(orthant),
          certifier_(omegas.empty() ? 2 : *std::max_element(omegas.begin(), omegas.end()),
                     omegas.size())
    {
        std::vector<std::size_t> order(n_);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return a[x] < a[y]; });
        for (std::size_t j : order) {
            omegas_.push_back(omegas[j]);
            a_.push_back(a[j]);
            const double r = a[j] * t;
            r_.push_back(r);
            inv_r_.push_back(1.0 / r);
        }
    }

    Tally run() const
    {
        if (n_ == 0) return Tally{1, 0};
        std::vector<std::int64_t> k(n_, 0);
        if (n_ == 1) {
            Tally tally;
            close(0.0, 1, k.data(), tally);
            return tally;
        }

        const std::int64_t first = start();
        const auto last = static_cast<std::int64_t>(std::floor(r_[0])) + 2;
        if (last < first) return Tally{};
        return tbb::parallel_reduce(
            tbb::blocked_range<std::int64_t>(first, last + 1), Tally{},
            [&](const tbb::blocked_range<std::int64_t>& range, Tally acc) {
                std::vector<std::int64_t> local(n_, 0);
                for (std::int64_t k0 = range.begin(); k0 != range.end(); ++k0) {
                    const double s = term(0, k0);
                    if (certifier_.certainly_outside(s)) break;
                    local[0] = k0;
                    walk(1, s, weight_for(k0), local.data(), acc);
                }
                return acc;
            },
            [](Tally x, const Tally& y) {
                x += y;
                return x;
            });
    }

private:
    std::int64_t start() const { return orthant_ == Orthant::positive ? 1 : 0; }

    std::int64_t weight_for(std::int64_t k) const
    {
        return orthant_ == Orthant::symmetric && k != 0 ? 2 : 1;
    }

    double term(std::size_t axis, std::int64_t k) const
    {
        return detail::ipow(static_cast<double>(k) * inv_r_[axis], omegas_[axis]);
    }

    void walk(std::size_t axis, double s, std::int64_t weight, std::int64_t* k, Tally& acc) const
    {
        if (axis + 1 == n_) {
            close(s, weight, k, acc);
            return;
        }
        for (std::int64_t kj = start();; ++kj) {
            const double s2 = s + term(axis, kj);
            if (certifier_.certainly_outside(s2)) break;
            k[axis] = kj;
            walk(axis + 1, s2, weight * weight_for(kj), k, acc);
        }
        k[axis] = 0;
    }

    bool inside(double prefix, std::int64_t m, std::int64_t* k, Tally& acc) const
    {
        if (m < 0) return false;
        const std::size_t last = n_ - 1;
        const Membership verdict = certifier_.classify(prefix + term(last, m));
        if (verdict != Membership::boundary_uncertain) return verdict == Membership::inside;
        ++acc.escalations;
        k[last] = m;
        const bool in = detail::exact_sum_le_one(omegas_, a_, t_, std::span<const std::int64_t>(k, n_));
        k[last] = 0;
        return in;
    }

    void close(double prefix, std::int64_t weight, std::int64_t* k, Tally& acc) const
    {
        const std::size_t last = n_ - 1;
        const double beta = r_[last] * detail::root_of_remainder(prefix, omegas_[last]);
        auto m = static_cast<std::int64_t>(std::floor(beta));
        while (m >= 0 && !inside(prefix, m, k, acc)) --m;
        while (inside(prefix, m + 1, k, acc)) ++m;
        if (m < 0) return;

        std::int64_t along = 0;
        switch (orthant_) {
        case Orthant::symmetric: along = 2 * m + 1; break;
        case Orthant::positive: along = m; break;
        case Orthant::nonnegative: along = m + 1; break;
        }
        acc.add(checked_mul(weight, along));
    }

    std::size_t n_;
    double t_;
    Orthant orthant_;
    detail::SumCertifier certifier_;
    std::vector<int> omegas_;
    std::vector<double> a_;
    std::vector<double> r_;
    std::vector<double> inv_r_;
};

Tally hyperplane_union(const Exponents& omegas, const StretchFactors& a, double t)
{
    const std::size_t d = omegas.dim();
    Tally total;
    std::int64_t signed_sum = 0;
    // Bit j of `zeroed` set means coordinate j is fixed to 0.
    for (std::uint32_t zeroed = 1; zeroed < (1u << d); ++zeroed) {
        std::vector<int> sub_omegas;
        std::vector<double> sub_a;
        for (std::size_t j = 0; j < d; ++j) {
            if (zeroed & (1u << j)) continue;
            sub_omegas.push_back(omegas[j]);
            sub_a.push_back(a[j]);
        }
        const Tally part = Kernel(sub_omegas, sub_a, t, Orthant::symmetric).run();
        total.escalations += part.escalations;
        const std::int64_t signed_part = (std::popcount(zeroed) % 2 == 1) ? part.count : -part.count;
        if (__builtin_add_overflow(signed_sum, signed_part, &signed_sum))
            throw CountOverflow("lattice count exceeds 64-bit accumulator");
    }
    total.count = signed_sum;
    return total;
}

void check_inputs(const Exponents& omegas, const StretchFactors& a, double t)
{
    if (a.dim() != omegas.dim())
        throw InvalidArgument("dimension mismatch: " + std::to_string(omegas.dim()) + " exponents, "
                              + std::to_string(a.dim()) + " stretch factors");
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be a positive finite number");
}

} // namespace

std::string_view to_string(RegionKind region)
{
    switch (region) {
    case RegionKind::full: return "full";
    case RegionKind::positive: return "positive";
    case RegionKind::nonnegative: return "nonnegative";
    case RegionKind::hyperplane_union: return "hyperplane_union";
    }
    return "unknown";
}

RegionKind parse_region(std::string_view name)
{
    if (name == "full") return RegionKind::full;
    if (name == "positive") return RegionKind::positive;
    if (name == "nonnegative") return RegionKind::nonnegative;
    if (name == "hyperplane_union" || name == "union") return RegionKind::hyperplane_union;
    throw InvalidArgument("unknown region '" + std::string(name) + "'");
}

LatticeCount count(const Exponents& omegas, const StretchFactors& a, double t, RegionKind region)
{
    check_inputs(omegas, a, t);
    Tally tally;
    switch (region) {
    case RegionKind::full:
        tally = Kernel(omegas.values(), a.values(), t, Orthant::symmetric).run();
        break;
    case RegionKind::positive:
        tally = Kernel(omegas.values(), a.values(), t, Orthant::positive).run();
        break;
    case RegionKind::nonnegative:
        tally = Kernel(omegas.values(), a.values(), t, Orthant::nonnegative).run();
        break;
    case RegionKind::hyperplane_union: tally = hyperplane_union(omegas, a, t); break;
    }
    return LatticeCount{region, t, a, tally.count, tally.escalations};
}

double brute_force_box_size(const StretchFactors& a, double t)
{
    double size = 1.0;
    for (double v : a.values()) size *= 2.0 * std::floor(v * t) + 1.0;
    return size;
}

LatticeCount brute_force_count(const Exponents& omegas, const StretchFactors& a, double t,
                               RegionKind region)
{
    check_inputs(omegas, a, t);
    const double box = brute_force_box_size(a, t);
    if (box > kBruteForceGuard)
        throw GuardExceeded("brute-force box has " + std::to_string(box) + " points (limit "
                            + std::to_string(kBruteForceGuard) + "); use a smaller t");

    const std::size_t d = omegas.dim();
    std::vector<std::int64_t> lo(d);
    std::vector<std::int64_t> hi(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto bound = static_cast<std::int64_t>(std::floor(a[j] * t)) + 1;
        hi[j] = bound;
        lo[j] = region == RegionKind::positive ? 1 : region == RegionKind::nonnegative ? 0 : -bound;
    }

    const detail::SumCertifier certifier(omegas.max(), d);
    std::vector<double> inv_r(d);
    for (std::size_t j = 0; j < d; ++j) inv_r[j] = 1.0 / (a[j] * t);

    LatticeCount result{region, t, a, 0, 0};
    std::vector<std::int64_t> k = lo;
    while (true) {
        bool eligible = true;
        if (region == RegionKind::hyperplane_union)
            eligible = std::find(k.begin(), k.end(), 0) != k.end();
        if (eligible) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const auto mag = static_cast<double>(k[j] < 0 ? -k[j] : k[j]);
                s += detail::ipow(mag * inv_r[j], omegas[j]);
            }
            Membership verdict = certifier.classify(s);
            if (verdict == Membership::boundary_uncertain) {
                ++result.boundary_escalations;
                verdict = detail::exact_sum_le_one(omegas.values(), a.values(), t, k)
                              ? Membership::inside
                              : Membership::outside;
            }
            if (verdict == Membership::inside) ++result.count;
        }

        std::size_t j = 0;
        while (j < d && k[j] == hi[j]) {
            k[j] = lo[j];
            ++j;
        }
        if (j == d) break;
        ++k[j];
    }
    return result;
}

bool symmetry_decomposition_check(const Exponents& omegas, const StretchFactors& a, double t)
{
    const std::int64_t full = count(omegas, a, t, RegionKind::full).count;
    const std::int64_t positive = count(omegas, a, t, RegionKind::positive).count;
    const std::int64_t on_planes = count(omegas, a, t, RegionKind::hyperplane_union).count;
    return full == (positive << omegas.dim()) + on_planes;
}

} // namespace latstretch
