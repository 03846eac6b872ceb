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

#include "latstretch/latstretch.h"

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <tbb/global_control.h>
#include <tbb/task_arena.h>

#include "latstretch/asymptotics.hpp"
#include "latstretch/counting.hpp"
#include "latstretch/domain.hpp"
#include "latstretch/errors.hpp"
#include "latstretch/measure.hpp"
#include "latstretch/optimizer.hpp"
#include "latstretch/sweep.hpp"
#include "latstretch/verify.hpp"

using namespace latstretch;

struct ls_context {
    int threads;
    std::optional<tbb::global_control> workers;
    tbb::task_arena arena;

    explicit ls_context(int n) : threads(n), arena(n)
    {
        // The default worker pool is sized to the hardware; allow an explicit
        // request for more threads than cores.
        if (static_cast<unsigned>(n) > std::max(1u, std::thread::hardware_concurrency()))
            workers.emplace(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(n));
    }
};

struct ls_domain {
    Exponents omegas;
    MeasureTable measures;
    StretchFactors balanced;
};

struct ls_optimization {
    OptimizationResult result;
};

struct ls_sweep {
    std::vector<SweepRecord> records;
    RateFit fit;
};

struct ls_report {
    VerifyReport report;
};

namespace {

thread_local std::string last_error;

ls_status fail(ls_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

template <class F>
ls_status guarded(F&& body)
{
    try {
        body();
        last_error.clear();
        return LS_OK;
    } catch (const InvalidArgument& e) {
        return fail(LS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const GuardExceeded& e) {
        return fail(LS_ERR_GUARD, e.what());
    } catch (const CountOverflow& e) {
        return fail(LS_ERR_OVERFLOW, e.what());
    } catch (const IoError& e) {
        return fail(LS_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(LS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LS_ERR_INTERNAL, "unknown error");
    }
}

// Runs `body` inside the context's arena so nested parallel loops use its
// thread budget.
template <class F>
ls_status run_in(ls_context* ctx, F&& body)
{
    if (ctx == nullptr) return guarded(body);
    ls_status status = LS_OK;
    ctx->arena.execute([&] { status = guarded(body); });
    return status;
}

void require(bool condition, const char* message)
{
    if (!condition) throw InvalidArgument(message);
}

void require_domain(const ls_domain* domain) { require(domain != nullptr, "null domain handle"); }

StretchFactors factors_for(const ls_domain* domain, const double* a)
{
    require_domain(domain);
    if (a == nullptr) return StretchFactors::identity(domain->omegas.dim());
    return StretchFactors::from_values(std::vector<double>(a, a + domain->omegas.dim()));
}

void copy_out(std::span<const double> values, double* out, std::size_t len)
{
    require(out != nullptr, "null output buffer");
    require(len >= values.size(), "output buffer too small");
    std::copy(values.begin(), values.end(), out);
}

RegionKind region_of(ls_region region)
{
    switch (region) {
    case LS_REGION_FULL: return RegionKind::full;
    case LS_REGION_POSITIVE: return RegionKind::positive;
    case LS_REGION_NONNEGATIVE: return RegionKind::nonnegative;
    case LS_REGION_HYPERPLANE_UNION: return RegionKind::hyperplane_union;
    }
    throw InvalidArgument("unknown region");
}

Objective objective_of(ls_objective objective)
{
    switch (objective) {
    case LS_MAXIMIZE_POSITIVE: return Objective::maximize_positive;
    case LS_MINIMIZE_NONNEGATIVE: return Objective::minimize_nonnegative;
    }
    throw InvalidArgument("unknown objective");
}

SearchConfig config_of(const ls_search_config* config)
{
    SearchConfig c;
    if (config != nullptr) {
        c.levels = config->levels;
        c.grid_per_axis = config->grid_per_axis;
        c.initial_radius = config->initial_radius;
        c.keep_top = config->keep_top;
        c.expand_limit = config->expand_limit;
    }
    c.validate();
    return c;
}

void fill_count(const LatticeCount& c, ls_count_result* out)
{
    out->count = c.count;
    out->boundary_escalations = c.boundary_escalations;
}

} // namespace

extern "C" {

const char* ls_last_error(void) { return last_error.c_str(); }

const char* ls_version(void) { return "1.0.0"; }

ls_status ls_context_create(int threads, ls_context** out)
{
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        *out = new ls_context(n);
    });
}

void ls_context_destroy(ls_context* ctx) { delete ctx; }

int ls_context_threads(const ls_context* ctx) { return ctx != nullptr ? ctx->threads : 0; }

ls_status ls_domain_create(const int* omegas, size_t d, ls_domain** out)
{
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        require(omegas != nullptr || d == 0, "null exponent array");
        Exponents e(std::vector<int>(omegas, omegas + d));
        auto table = measure_table(e);
        auto balanced = balanced_factors(e);
        *out = new ls_domain{std::move(e), std::move(table), std::move(balanced)};
    });
}

void ls_domain_destroy(ls_domain* domain) { delete domain; }

size_t ls_domain_dim(const ls_domain* domain) { return domain != nullptr ? domain->omegas.dim() : 0; }

int ls_domain_omega_max(const ls_domain* domain) { return domain != nullptr ? domain->omegas.max() : 0; }

int ls_domain_in_theorem_scope(const ls_domain* domain)
{
    return domain != nullptr && domain->omegas.in_theorem_scope() ? 1 : 0;
}

ls_status ls_octant_volume(const int* omegas, size_t m, double* out)
{
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        require(omegas != nullptr || m == 0, "null exponent array");
        *out = octant_volume(std::span<const int>(omegas, m));
    });
}

ls_status ls_domain_volume(const ls_domain* domain, double* volume_full, double* octant)
{
    return guarded([&] {
        require_domain(domain);
        if (volume_full != nullptr) *volume_full = domain->measures.volume_full;
        if (octant != nullptr) *octant = domain->measures.octant_volume;
    });
}

ls_status ls_domain_sections(const ls_domain* domain, double* out, size_t len)
{
    return guarded([&] {
        require_domain(domain);
        copy_out(domain->measures.sections, out, len);
    });
}

ls_status ls_domain_double_sections(const ls_domain* domain, double* out, size_t len)
{
    return guarded([&] {
        require_domain(domain);
        const auto& table = domain->measures.double_sections;
        require(!table.empty(), "double sections are undefined for d = 2");
        std::vector<double> flat;
        for (const auto& row : table) flat.insert(flat.end(), row.begin(), row.end());
        copy_out(flat, out, len);
    });
}

ls_status ls_parallel_section(const ls_domain* domain, size_t axis, double x, double* out)
{
    return guarded([&] {
        require_domain(domain);
        require(out != nullptr, "null output pointer");
        *out = parallel_section(domain->omegas, axis, x);
    });
}

ls_status ls_balanced_factors(const ls_domain* domain, double* out, size_t len)
{
    return guarded([&] {
        require_domain(domain);
        copy_out(domain->balanced.values(), out, len);
    });
}

ls_status ls_gamma_rate(const ls_domain* domain, int64_t* num, int64_t* den)
{
    return guarded([&] {
        require_domain(domain);
        require(num != nullptr && den != nullptr, "null output pointer");
        const auto g = gamma_rate(domain->omegas);
        *num = g.num;
        *den = g.den;
    });
}

ls_status ls_normalize_factors(const double* a, size_t d, double tolerance, double* out, double* correction)
{
    return guarded([&] {
        require(a != nullptr, "null factor array");
        const auto f = StretchFactors::from_values(std::vector<double>(a, a + d), tolerance);
        copy_out(f.values(), out, d);
        if (correction != nullptr) *correction = f.renormalization();
    });
}

ls_status ls_a_star(const double* a, size_t d, double* out)
{
    return guarded([&] {
        require(a != nullptr && out != nullptr, "null pointer argument");
        *out = a_star(StretchFactors::from_values(std::vector<double>(a, a + d)));
    });
}

ls_status ls_classify_point(const ls_domain* domain, const double* a, double t, const int64_t* k, size_t d,
                        int exact, ls_membership* out)
{
    return guarded([&] {
        require(k != nullptr && out != nullptr, "null pointer argument");
        const auto f = factors_for(domain, a);
        const auto m = membership(domain->omegas, f, t, std::span<const std::int64_t>(k, d),
                                  exact ? Precision::exact : Precision::certified_float);
        *out = m == Membership::inside ? LS_INSIDE : m == Membership::outside ? LS_OUTSIDE : LS_BOUNDARY_UNCERTAIN;
    });
}

ls_status ls_count(ls_context* ctx, const ls_domain* domain, const double* a, double t, ls_region region,
                   ls_count_result* out)
{
    return run_in(ctx, [&] {
        require(out != nullptr, "null output pointer");
        fill_count(count(domain->omegas, factors_for(domain, a), t, region_of(region)), out);
    });
}

ls_status ls_brute_force_count(ls_context* ctx, const ls_domain* domain, const double* a, double t,
                               ls_region region, ls_count_result* out)
{
    return run_in(ctx, [&] {
        require(out != nullptr, "null output pointer");
        fill_count(brute_force_count(domain->omegas, factors_for(domain, a), t, region_of(region)), out);
    });
}

ls_status ls_symmetry_check(ls_context* ctx, const ls_domain* domain, const double* a, double t, int* holds)
{
    return run_in(ctx, [&] {
        require(holds != nullptr, "null output pointer");
        *holds = symmetry_decomposition_check(domain->omegas, factors_for(domain, a), t) ? 1 : 0;
    });
}

ls_status ls_predict(const ls_domain* domain, const double* a, double t, ls_region region, ls_prediction* out)
{
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        require(t > 0.0, "t must be positive");
        const auto p = predict(domain->measures, domain->omegas, factors_for(domain, a), t, region_of(region));
        *out = ls_prediction{p.leading, p.second, p.error_budget, p.in_hypothesis ? 1 : 0};
    });
}

ls_status ls_remainder(ls_context* ctx, const ls_domain* domain, const double* a, double t, ls_region region,
                       double* out)
{
    return run_in(ctx, [&] {
        require(out != nullptr, "null output pointer");
        *out = remainder(domain->omegas, factors_for(domain, a), t, region_of(region));
    });
}

ls_status ls_check_two_term(ls_context* ctx, const ls_domain* domain, const double* a, double t, double c,
                            int upper, int* holds)
{
    return run_in(ctx, [&] {
        require(holds != nullptr, "null output pointer");
        const auto f = factors_for(domain, a);
        const bool ok = upper ? check_two_term_upper(domain->omegas, f, t, c)
                              : check_two_term_lower(domain->omegas, f, t, c);
        *holds = ok ? 1 : 0;
    });
}

ls_status ls_estimate_c(ls_context* ctx, const ls_domain* domain, const double* factors, const double* ts,
                        size_t n, double* c_upper, double* c_lower)
{
    return run_in(ctx, [&] {
        require_domain(domain);
        require(factors != nullptr && ts != nullptr, "null sample arrays");
        require(c_upper != nullptr && c_lower != nullptr, "null output pointer");
        const std::size_t d = domain->omegas.dim();
        std::vector<BoundSample> samples;
        for (std::size_t i = 0; i < n; ++i)
            samples.push_back({factors_for(domain, factors + i * d), ts[i]});
        const auto c = estimate_c(domain->omegas, samples);
        *c_upper = c.c_upper;
        *c_lower = c.c_lower;
    });
}

ls_status ls_check_balanced_lemma(const double* s, size_t d, double epsilon, double constant, int* holds)
{
    return guarded([&] {
        require(s != nullptr && holds != nullptr, "null pointer argument");
        *holds = check_balanced_lemma(std::span<const double>(s, d), epsilon, constant) ? 1 : 0;
    });
}

void ls_search_config_default(ls_search_config* config)
{
    if (config == nullptr) return;
    const SearchConfig c;
    *config = ls_search_config{c.levels, c.grid_per_axis, c.initial_radius, c.keep_top, c.expand_limit};
}

ls_status ls_evaluate_objective(ls_context* ctx, const ls_domain* domain, double t, ls_objective objective,
                                const double* a, int64_t* out)
{
    return run_in(ctx, [&] {
        require(out != nullptr, "null output pointer");
        require(t > 0.0, "t must be positive");
        *out = evaluate_objective(domain->omegas, t, objective_of(objective), factors_for(domain, a));
    });
}

ls_status ls_optimize(ls_context* ctx, const ls_domain* domain, double t, ls_objective objective,
                      const ls_search_config* config, ls_optimization** out)
{
    return run_in(ctx, [&] {
        require_domain(domain);
        require(out != nullptr, "null output pointer");
        auto result = optimize(domain->omegas, t, objective_of(objective), config_of(config));
        *out = new ls_optimization{std::move(result)};
    });
}

void ls_optimization_destroy(ls_optimization* result) { delete result; }

ls_status ls_optimization_get_info(const ls_optimization* result, ls_optimization_info* out)
{
    return guarded([&] {
        require(result != nullptr && out != nullptr, "null pointer argument");
        const auto& r = result->result;
        *out = ls_optimization_info{r.t,          r.value,       r.ties.size(),
                                    r.resolution, r.expansions,  r.max_radius,
                                    r.boundary_warning ? 1 : 0, r.evaluations, r.best.a_star()};
    });
}

ls_status ls_optimization_best(const ls_optimization* result, double* out, size_t len)
{
    return guarded([&] {
        require(result != nullptr, "null optimization handle");
        copy_out(result->result.best.values(), out, len);
    });
}

ls_status ls_optimization_deviations(const ls_optimization* result, double* out, size_t len)
{
    return guarded([&] {
        require(result != nullptr, "null optimization handle");
        copy_out(result->result.deviations, out, len);
    });
}

ls_status ls_optimization_tie(const ls_optimization* result, size_t index, double* out, size_t len)
{
    return guarded([&] {
        require(result != nullptr, "null optimization handle");
        require(index < result->result.ties.size(), "tie index out of range");
        copy_out(result->result.ties[index].values(), out, len);
    });
}

ls_status ls_log_spaced(double t_min, double t_max, int points, double* out, size_t len)
{
    return guarded([&] { copy_out(log_spaced(t_min, t_max, points), out, len); });
}

ls_status ls_sweep_run(ls_context* ctx, const ls_domain* domain, const double* t_grid, size_t n,
                       ls_objective objective, const ls_search_config* config, ls_sweep** out)
{
    return run_in(ctx, [&] {
        require_domain(domain);
        require(out != nullptr, "null output pointer");
        require(t_grid != nullptr || n == 0, "null t grid");
        std::vector<double> grid(t_grid, t_grid + n);
        auto records = run_sweep(domain->omegas, grid, objective_of(objective), config_of(config));
        auto fit = fit_rate(records, gamma_rate(domain->omegas));
        *out = new ls_sweep{std::move(records), fit};
    });
}

void ls_sweep_destroy(ls_sweep* sweep) { delete sweep; }

size_t ls_sweep_size(const ls_sweep* sweep) { return sweep != nullptr ? sweep->records.size() : 0; }

ls_status ls_sweep_record(const ls_sweep* sweep, size_t index, ls_sweep_record_info* out)
{
    return guarded([&] {
        require(sweep != nullptr && out != nullptr, "null pointer argument");
        require(index < sweep->records.size(), "record index out of range");
        const auto& r = sweep->records[index];
        *out = ls_sweep_record_info{r.t,           r.max_deviation,     r.count_observed,
                                    r.count_predicted, r.error_budget, r.result.resolution,
                                    r.result.boundary_warning ? 1 : 0};
    });
}

ls_status ls_sweep_best(const ls_sweep* sweep, size_t index, double* out, size_t len)
{
    return guarded([&] {
        require(sweep != nullptr, "null sweep handle");
        require(index < sweep->records.size(), "record index out of range");
        copy_out(sweep->records[index].result.best.values(), out, len);
    });
}

ls_status ls_sweep_fit(const ls_sweep* sweep, ls_rate_fit* out)
{
    return guarded([&] {
        require(sweep != nullptr && out != nullptr, "null pointer argument");
        const auto& f = sweep->fit;
        *out = ls_rate_fit{f.saturated ? 1 : 0, f.slope,    f.intercept,
                           f.r_squared,        f.points_used, f.censored,
                           f.gamma_theoretical.num, f.gamma_theoretical.den};
    });
}

ls_status ls_sweep_envelope_violations(const ls_sweep* sweep, double factor, size_t* out)
{
    return guarded([&] {
        require(sweep != nullptr && out != nullptr, "null pointer argument");
        *out = envelope_violations(sweep->records, factor).size();
    });
}

ls_status ls_sweep_emit(const ls_sweep* sweep, ls_format format, const char* path)
{
    return guarded([&] {
        require(sweep != nullptr && path != nullptr, "null pointer argument");
        EmitFormat f = EmitFormat::csv;
        switch (format) {
        case LS_FORMAT_CSV: f = EmitFormat::csv; break;
        case LS_FORMAT_JSON: f = EmitFormat::json; break;
        case LS_FORMAT_SVG: f = EmitFormat::svg; break;
        default: throw InvalidArgument("unknown format");
        }
        emit(sweep->records, sweep->fit, f, path);
    });
}

void ls_verify_options_default(ls_verify_options* options)
{
    if (options == nullptr) return;
    const VerifyOptions o;
    *options = ls_verify_options{o.t_max, o.seed, o.random_stretches, o.lemma_samples_per_epsilon,
                                 o.lemma_constant};
}

ls_status ls_verify(ls_context* ctx, const ls_domain* domain, const ls_verify_options* options, ls_report** out)
{
    return run_in(ctx, [&] {
        require_domain(domain);
        require(out != nullptr, "null output pointer");
        VerifyOptions o;
        if (options != nullptr) {
            o.t_max = options->t_max;
            o.seed = options->seed;
            o.random_stretches = options->random_stretches;
            o.lemma_samples_per_epsilon = options->lemma_samples_per_epsilon;
            o.lemma_constant = options->lemma_constant;
        }
        *out = new ls_report{run_verification(domain->omegas, o)};
    });
}

void ls_report_destroy(ls_report* report) { delete report; }

size_t ls_report_size(const ls_report* report) { return report != nullptr ? report->report.suites.size() : 0; }

ls_status ls_report_suite(const ls_report* report, size_t index, ls_suite_info* out)
{
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null pointer argument");
        require(index < report->report.suites.size(), "suite index out of range");
        const auto& s = report->report.suites[index];
        *out = ls_suite_info{s.name.c_str(), s.passed ? 1 : 0, s.cases, s.failures, s.detail.c_str()};
    });
}

int ls_report_passed(const ls_report* report) { return report != nullptr && report->report.passed() ? 1 : 0; }

} // extern "C"
