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

#include "latstretch/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include <tbb/parallel_for.h>

#include "latstretch/errors.hpp"

namespace latstretch {

std::string_view to_string(Objective objective)
{
    return objective == Objective::maximize_positive ? "maximize_positive" : "minimize_nonnegative";
}

Objective parse_objective(std::string_view name)
{
    if (name == "max-positive" || name == "maximize_positive") return Objective::maximize_positive;
    if (name == "min-nonnegative" || name == "minimize_nonnegative") return Objective::minimize_nonnegative;
    throw InvalidArgument("unknown objective '" + std::string(name) + "'");
}

RegionKind objective_region(Objective objective)
{
    return objective == Objective::maximize_positive ? RegionKind::positive : RegionKind::nonnegative;
}

void SearchConfig::validate() const
{
    if (levels < 1 || levels > 40) throw InvalidArgument("levels must lie in [1, 40]");
    if (grid_per_axis < 3 || grid_per_axis % 2 == 0)
        throw InvalidArgument("grid_per_axis must be odd and >= 3");
    if (!(initial_radius > 0.0) || !std::isfinite(initial_radius))
        throw InvalidArgument("initial_radius must be positive");
    if (keep_top < 1) throw InvalidArgument("keep_top must be >= 1");
    if (expand_limit < 0) throw InvalidArgument("expand_limit must be >= 0");
}

std::int64_t evaluate_objective(const Exponents& omegas, double t, Objective objective,
                                const StretchFactors& a)
{
    return count(omegas, a, t, objective_region(objective)).count;
}

namespace {

// Grid points live on an integer lattice n in Z^(d-1); the free log-factors
// are u = center + n * unit, where unit is the finest spacing.
using Node = std::vector<std::int64_t>;

class GridSearch {
public:
    GridSearch(const Exponents& omegas, double t, Objective objective, const SearchConfig& config)
        : omegas_(omegas), t_(t), objective_(objective), config_(config),
          half_(config.grid_per_axis / 2),
          unit_(2.0 * config.initial_radius / (config.grid_per_axis - 1)
                / std::ldexp(1.0, config.levels - 1)),
          balanced_(balanced_factors(omegas))
    {
        for (std::size_t j = 0; j + 1 < omegas.dim(); ++j) center_.push_back(std::log(balanced_[j]));
    }

    OptimizationResult run()
    {
        const std::size_t free_dims = omegas_.dim() - 1;
        std::vector<Node> centers{Node(free_dims, 0)};
        OptimizationResult result;
        result.t = t_;
        result.objective = objective_;

        std::int64_t level_one_reach = 0;
        std::vector<Node> ranked;
        std::int64_t step = 0;
        for (int level = 1; level <= config_.levels; ++level) {
            step = std::int64_t{1} << (config_.levels - level);
            while (true) {
                ranked = evaluate_level(centers, step);
                if (level != 1 || result.expansions >= config_.expand_limit
                    || !on_edge(ranked.front(), centers, step))
                    break;
                step *= 2;
                ++result.expansions;
            }
            if (level == 1) level_one_reach = step * half_;
            result.max_radius = std::max(result.max_radius, static_cast<double>(step * half_) * unit_);

            centers.assign(ranked.begin(),
                           ranked.begin() + std::min<std::ptrdiff_t>(config_.keep_top,
                                                                     static_cast<std::ptrdiff_t>(ranked.size())));
        }

        complete_ties(ranked);
        const Node& best = ranked.front();
        result.value = cache_.at(best);
        result.best = factors(best);
        result.resolution = static_cast<double>(step) * unit_;
        for (const Node& n : ranked) {
            if (cache_.at(n) != result.value) continue;
            result.ties.push_back(factors(n));
        }
        for (std::int64_t c : best)
            if (std::abs(c) >= level_one_reach) result.boundary_warning = true;
        consider_identity(result);
        for (std::size_t j = 0; j < omegas_.dim(); ++j)
            result.deviations.push_back(result.best[j] - balanced_[j]);
        result.evaluations = static_cast<std::int64_t>(cache_.size()) + 1;
        return result;
    }

private:
    StretchFactors factors(const Node& n) const
    {
        std::vector<double> u(n.size());
        for (std::size_t j = 0; j < n.size(); ++j) u[j] = center_[j] + static_cast<double>(n[j]) * unit_;
        return StretchFactors::from_log(u);
    }

    bool better(const Node& x, const Node& y) const
    {
        const std::int64_t vx = cache_.at(x);
        const std::int64_t vy = cache_.at(y);
        if (vx != vy) return objective_ == Objective::maximize_positive ? vx > vy : vx < vy;
        return x < y;
    }

    // The identity is rarely a grid node but must never beat the result.
    // It enters the ranking by the same (value, lexicographic log) rule.
    void consider_identity(OptimizationResult& result) const
    {
        const auto identity = StretchFactors::identity(omegas_.dim());
        const std::int64_t v = evaluate_objective(omegas_, t_, objective_, identity);
        const bool wins = objective_ == Objective::maximize_positive ? v > result.value : v < result.value;
        if (wins) {
            result.value = v;
            result.best = identity;
            result.ties.assign(1, identity);
            result.boundary_warning = false;
            return;
        }
        if (v != result.value) return;
        // Log-factors of the identity are all zero; find its lexicographic slot.
        auto precedes = [&](const StretchFactors& a) {
            for (std::size_t j = 0; j + 1 < a.dim(); ++j) {
                const double u = std::log(a[j]);
                if (u != 0.0) return u > 0.0;
            }
            return false;
        };
        auto slot = std::find_if(result.ties.begin(), result.ties.end(), precedes);
        if (slot != result.ties.end() && *slot == identity) return;
        const bool first = slot == result.ties.begin();
        result.ties.insert(slot, identity);
        if (first) {
            result.best = identity;
            result.boundary_warning = false;
        }
    }

    // Node of the log-factors with equal-exponent axes permuted; the last
    // axis carries -(n_1 + ... + n_{d-1}) implicitly.
    Node permuted(const Node& n, const std::vector<std::size_t>& perm) const
    {
        Node full(n);
        std::int64_t last = 0;
        for (std::int64_t c : n) last -= c;
        full.push_back(last);
        Node out(n.size());
        for (std::size_t j = 0; j < n.size(); ++j) out[j] = full[perm[j]];
        return out;
    }

    // Adds the images of every best-valued point under permutations of axes
    // sharing an exponent, so the tie set respects the domain's symmetry.
    void complete_ties(std::vector<Node>& ranked)
    {
        const std::int64_t top = cache_.at(ranked.front());
        std::vector<std::size_t> perm(omegas_.dim());
        std::set<Node> images;
        for (const Node& n : ranked) {
            if (cache_.at(n) != top) break;
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            do {
                bool allowed = true;
                for (std::size_t j = 0; j < perm.size(); ++j)
                    if (omegas_[perm[j]] != omegas_[j]) allowed = false;
                if (allowed) images.insert(permuted(n, perm));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        std::vector<Node> fresh;
        for (const Node& p : images)
            if (!cache_.contains(p)) fresh.push_back(p);
        if (fresh.empty()) return;
        evaluate(fresh);
        ranked.insert(ranked.end(), fresh.begin(), fresh.end());
        std::sort(ranked.begin(), ranked.end(), [this](const Node& x, const Node& y) { return better(x, y); });
    }

    void evaluate(const std::vector<Node>& fresh)
    {
        std::vector<std::int64_t> values(fresh.size());
        tbb::parallel_for(std::size_t{0}, fresh.size(), [&](std::size_t i) {
            values[i] = evaluate_objective(omegas_, t_, objective_, factors(fresh[i]));
        });
        for (std::size_t i = 0; i < fresh.size(); ++i) cache_.emplace(fresh[i], values[i]);
    }

    // Grid points of every center, evaluated and ranked best first.
    std::vector<Node> evaluate_level(const std::vector<Node>& centers, std::int64_t step)
    {
        std::set<Node> points;
        const std::size_t free_dims = centers.front().size();
        for (const Node& c : centers) {
            std::vector<std::int64_t> offset(free_dims, -half_);
            while (true) {
                Node p(free_dims);
                for (std::size_t j = 0; j < free_dims; ++j) p[j] = c[j] + offset[j] * step;
                points.insert(std::move(p));
                std::size_t j = 0;
                while (j < free_dims && offset[j] == half_) offset[j++] = -half_;
                if (j == free_dims) break;
                ++offset[j];
            }
        }

        std::vector<Node> fresh;
        for (const Node& p : points)
            if (!cache_.contains(p)) fresh.push_back(p);
        evaluate(fresh);

        std::vector<Node> ranked(points.begin(), points.end());
        std::sort(ranked.begin(), ranked.end(), [this](const Node& x, const Node& y) { return better(x, y); });
        return ranked;
    }

    // True unless some center's grid holds p strictly inside.
    bool on_edge(const Node& p, const std::vector<Node>& centers, std::int64_t step) const
    {
        const std::int64_t reach = half_ * step;
        for (const Node& c : centers) {
            bool interior = true;
            for (std::size_t j = 0; j < p.size(); ++j)
                if (std::abs(p[j] - c[j]) >= reach) interior = false;
            if (interior) return false;
        }
        return true;
    }

    const Exponents& omegas_;
    double t_;
    Objective objective_;
    SearchConfig config_;
    std::int64_t half_;
    double unit_;
    StretchFactors balanced_;
    std::vector<double> center_;
    std::map<Node, std::int64_t> cache_;
};

} // namespace

OptimizationResult optimize(const Exponents& omegas, double t, Objective objective, const SearchConfig& config)
{
    config.validate();
    if (!(t >= 1.0) || !std::isfinite(t)) throw InvalidArgument("optimize: t must be >= 1");
    return GridSearch(omegas, t, objective, config).run();
}

} // namespace latstretch
