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

// Command-line front end. Every subcommand is a thin wrapper over the C API.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latstretch/latstretch.h"

using nlohmann::json;

namespace {

enum ExitCode { kSuccess = 0, kValidation = 1, kGuard = 2, kVerification = 3 };

struct Failure {
    int code;
    std::string message;
};

void check(ls_status status)
{
    if (status == LS_OK) return;
    throw Failure{status == LS_ERR_GUARD ? kGuard : kValidation, ls_last_error()};
}

struct ContextDeleter {
    void operator()(ls_context* c) const { ls_context_destroy(c); }
};
struct DomainDeleter {
    void operator()(ls_domain* d) const { ls_domain_destroy(d); }
};
struct OptimizationDeleter {
    void operator()(ls_optimization* o) const { ls_optimization_destroy(o); }
};
struct SweepDeleter {
    void operator()(ls_sweep* s) const { ls_sweep_destroy(s); }
};
struct ReportDeleter {
    void operator()(ls_report* r) const { ls_report_destroy(r); }
};

using Context = std::unique_ptr<ls_context, ContextDeleter>;
using Domain = std::unique_ptr<ls_domain, DomainDeleter>;

std::vector<std::string> split(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) parts.push_back(item);
    return parts;
}

std::vector<int> parse_omegas(const std::string& text)
{
    std::vector<int> out;
    for (const auto& item : split(text)) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw Failure{kValidation, "exponent '" + item + "' is not an integer"};
        out.push_back(value);
    }
    if (out.empty()) throw Failure{kValidation, "--omega is empty"};
    return out;
}

std::vector<double> parse_reals(const std::string& text, const char* what)
{
    std::vector<double> out;
    for (const auto& item : split(text)) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw Failure{kValidation, std::string(what) + " entry '" + item + "' is not a number"};
        out.push_back(value);
    }
    return out;
}

ls_region parse_region(const std::string& name)
{
    if (name == "full") return LS_REGION_FULL;
    if (name == "positive") return LS_REGION_POSITIVE;
    if (name == "nonnegative") return LS_REGION_NONNEGATIVE;
    if (name == "hyperplane_union" || name == "union") return LS_REGION_HYPERPLANE_UNION;
    throw Failure{kValidation, "unknown region '" + name + "'"};
}

const char* region_name(ls_region region)
{
    switch (region) {
    case LS_REGION_FULL: return "full";
    case LS_REGION_POSITIVE: return "positive";
    case LS_REGION_NONNEGATIVE: return "nonnegative";
    case LS_REGION_HYPERPLANE_UNION: return "hyperplane_union";
    }
    return "unknown";
}

ls_objective parse_objective(const std::string& name)
{
    if (name == "max-positive" || name == "maximize_positive") return LS_MAXIMIZE_POSITIVE;
    if (name == "min-nonnegative" || name == "minimize_nonnegative") return LS_MINIMIZE_NONNEGATIVE;
    throw Failure{kValidation, "unknown objective '" + name + "'"};
}

const char* objective_name(ls_objective objective)
{
    return objective == LS_MAXIMIZE_POSITIVE ? "maximize_positive" : "minimize_nonnegative";
}

struct Options {
    std::string omega;
    double t = 0.0;
    double t_min = 20.0;
    double t_max = 0.0;
    int points = 25;
    std::string region = "full";
    std::string objective = "max-positive";
    std::string factors;
    bool oracle = false;
    std::string out = "sweep";
    std::vector<std::string> formats;
    int threads = 0;
    std::uint64_t seed = 7;
    ls_search_config search{};
};

Domain make_domain(const Options& o)
{
    const auto omegas = parse_omegas(o.omega);
    ls_domain* raw = nullptr;
    check(ls_domain_create(omegas.data(), omegas.size(), &raw));
    return Domain(raw);
}

Context make_context(const Options& o)
{
    ls_context* raw = nullptr;
    check(ls_context_create(o.threads, &raw));
    return Context(raw);
}

// Decimal factors rarely multiply to exactly 1; rescale with a warning when
// the correction is visible.
std::vector<double> factors_or_identity(const Options& o, std::size_t d)
{
    if (o.factors.empty()) return std::vector<double>(d, 1.0);
    auto a = parse_reals(o.factors, "--a");
    if (a.size() != d)
        throw Failure{kValidation, "--a has " + std::to_string(a.size()) + " entries, expected " + std::to_string(d)};
    std::vector<double> normalized(d);
    double correction = 0.0;
    check(ls_normalize_factors(a.data(), d, 1e-2, normalized.data(), &correction));
    if (correction > 1e-6)
        std::cerr << "warning: stretch factors rescaled by " << correction << " to unit determinant\n";
    return normalized;
}

json scope_fields(const ls_domain* domain, const Options& o)
{
    return json{{"omega", parse_omegas(o.omega)}, {"theorem_scope", ls_domain_in_theorem_scope(domain) == 1}};
}

void print(const json& j) { std::cout << j.dump(2) << std::endl; }

int cmd_volume(const Options& o)
{
    auto domain = make_domain(o);
    const std::size_t d = ls_domain_dim(domain.get());
    double full = 0.0;
    double octant = 0.0;
    check(ls_domain_volume(domain.get(), &full, &octant));
    std::vector<double> sections(d);
    check(ls_domain_sections(domain.get(), sections.data(), d));
    std::vector<double> balanced(d);
    check(ls_balanced_factors(domain.get(), balanced.data(), d));
    json out = scope_fields(domain.get(), o);
    out["volume_full"] = full;
    out["octant_volume"] = octant;
    out["sections"] = sections;
    json doubles = json::array();
    if (d >= 3) {
        std::vector<double> flat(d * d);
        check(ls_domain_double_sections(domain.get(), flat.data(), flat.size()));
        for (std::size_t j = 0; j < d; ++j)
            doubles.push_back(std::vector<double>(flat.begin() + j * d, flat.begin() + (j + 1) * d));
    }
    out["double_sections"] = doubles;
    out["balanced_factors"] = balanced;
    std::int64_t num = 0;
    std::int64_t den = 1;
    check(ls_gamma_rate(domain.get(), &num, &den));
    out["gamma"] = {{"num", num}, {"den", den}, {"value", static_cast<double>(num) / static_cast<double>(den)}};
    print(out);
    return kSuccess;
}

json prediction_json(const ls_prediction& p)
{
    return json{{"leading", p.leading},
                {"second", p.second},
                {"value", p.leading + p.second},
                {"error_budget", p.error_budget},
                {"in_hypothesis", p.in_hypothesis == 1}};
}

int cmd_count(const Options& o)
{
    auto domain = make_domain(o);
    auto ctx = make_context(o);
    const std::size_t d = ls_domain_dim(domain.get());
    const auto a = factors_or_identity(o, d);
    const ls_region region = parse_region(o.region);

    ls_count_result result{};
    check(ls_count(ctx.get(), domain.get(), a.data(), o.t, region, &result));
    ls_prediction p{};
    check(ls_predict(domain.get(), a.data(), o.t, region, &p));

    json out = scope_fields(domain.get(), o);
    out["region"] = region_name(region);
    out["t"] = o.t;
    out["factors"] = a;
    out["count"] = result.count;
    out["boundary_escalations"] = result.boundary_escalations;
    out["prediction"] = prediction_json(p);
    out["remainder"] = static_cast<double>(result.count) - (p.leading + p.second);
    out["error_budget"] = p.error_budget;
    if (o.oracle) {
        ls_count_result oracle{};
        check(ls_brute_force_count(ctx.get(), domain.get(), a.data(), o.t, region, &oracle));
        out["oracle_count"] = oracle.count;
        out["oracle_match"] = oracle.count == result.count;
    }
    print(out);
    return kSuccess;
}

int cmd_predict(const Options& o)
{
    auto domain = make_domain(o);
    const std::size_t d = ls_domain_dim(domain.get());
    const auto a = factors_or_identity(o, d);
    const ls_region region = parse_region(o.region);
    ls_prediction p{};
    check(ls_predict(domain.get(), a.data(), o.t, region, &p));
    json out = scope_fields(domain.get(), o);
    out["region"] = region_name(region);
    out["t"] = o.t;
    out["factors"] = a;
    out["prediction"] = prediction_json(p);
    print(out);
    return kSuccess;
}

int cmd_optimize(const Options& o)
{
    auto domain = make_domain(o);
    auto ctx = make_context(o);
    const std::size_t d = ls_domain_dim(domain.get());
    const ls_objective objective = parse_objective(o.objective);

    ls_optimization* raw = nullptr;
    check(ls_optimize(ctx.get(), domain.get(), o.t, objective, &o.search, &raw));
    std::unique_ptr<ls_optimization, OptimizationDeleter> result(raw);

    ls_optimization_info info{};
    check(ls_optimization_get_info(result.get(), &info));
    std::vector<double> best(d);
    std::vector<double> deviations(d);
    check(ls_optimization_best(result.get(), best.data(), d));
    check(ls_optimization_deviations(result.get(), deviations.data(), d));
    json ties = json::array();
    std::vector<double> tie(d);
    for (std::size_t i = 0; i < info.tie_count; ++i) {
        check(ls_optimization_tie(result.get(), i, tie.data(), d));
        ties.push_back(tie);
    }
    std::vector<double> balanced(d);
    check(ls_balanced_factors(domain.get(), balanced.data(), d));
    std::int64_t balanced_value = 0;
    check(ls_evaluate_objective(ctx.get(), domain.get(), o.t, objective, balanced.data(), &balanced_value));

    if (info.boundary_warning)
        std::cerr << "warning: best stretch lies on the boundary of the expanded search region\n";

    json out = scope_fields(domain.get(), o);
    out["t"] = o.t;
    out["objective"] = objective_name(objective);
    out["best"] = best;
    out["value"] = info.value;
    out["balanced_value"] = balanced_value;
    out["a_star"] = info.a_star;
    out["deviations"] = deviations;
    out["resolution"] = info.resolution;
    out["tie_count"] = info.tie_count;
    out["ties"] = ties;
    out["expansions"] = info.expansions;
    out["max_radius"] = info.max_radius;
    out["boundary_warning"] = info.boundary_warning == 1;
    out["evaluations"] = info.evaluations;
    print(out);
    return kSuccess;
}

json fit_json(const ls_rate_fit& fit)
{
    json j{{"saturated", fit.saturated == 1},
           {"points_used", fit.points_used},
           {"censored", fit.censored},
           {"gamma_theoretical", {{"num", fit.gamma_num}, {"den", fit.gamma_den}}},
           {"reference_slope", -static_cast<double>(fit.gamma_num) / static_cast<double>(fit.gamma_den)}};
    if (!fit.saturated) {
        j["slope"] = fit.slope;
        j["intercept"] = fit.intercept;
        j["r_squared"] = fit.r_squared;
    }
    return j;
}

int cmd_sweep(const Options& o)
{
    auto domain = make_domain(o);
    auto ctx = make_context(o);
    const ls_objective objective = parse_objective(o.objective);
    if (o.points < 1) throw Failure{kValidation, "--points must be >= 1"};
    std::vector<double> grid(static_cast<std::size_t>(o.points));
    check(ls_log_spaced(o.t_min, o.t_max, o.points, grid.data(), grid.size()));

    ls_sweep* raw = nullptr;
    check(ls_sweep_run(ctx.get(), domain.get(), grid.data(), grid.size(), objective, &o.search, &raw));
    std::unique_ptr<ls_sweep, SweepDeleter> sweep(raw);

    std::vector<std::string> formats = o.formats.empty() ? std::vector<std::string>{"csv", "json", "svg"} : o.formats;
    json written = json::array();
    for (const auto& f : formats) {
        ls_format format = LS_FORMAT_CSV;
        if (f == "csv") format = LS_FORMAT_CSV;
        else if (f == "json") format = LS_FORMAT_JSON;
        else if (f == "svg") format = LS_FORMAT_SVG;
        else throw Failure{kValidation, "unknown format '" + f + "'"};
        const std::string path = o.out + "." + f;
        check(ls_sweep_emit(sweep.get(), format, path.c_str()));
        written.push_back(path);
    }

    ls_rate_fit fit{};
    check(ls_sweep_fit(sweep.get(), &fit));
    std::size_t violations = 0;
    check(ls_sweep_envelope_violations(sweep.get(), 3.0, &violations));
    if (violations > 0)
        std::cerr << "warning: " << violations << " records outside 3x the asymptotic error envelope\n";
    for (std::size_t i = 0; i < ls_sweep_size(sweep.get()); ++i) {
        ls_sweep_record_info rec{};
        check(ls_sweep_record(sweep.get(), i, &rec));
        if (rec.boundary_warning)
            std::cerr << "warning: optimum at t=" << rec.t << " lies on the expanded search boundary\n";
    }

    json out = scope_fields(domain.get(), o);
    out["objective"] = objective_name(objective);
    out["t_grid"] = grid;
    out["fit"] = fit_json(fit);
    out["envelope_violations"] = violations;
    out["files"] = written;
    print(out);
    return kSuccess;
}

int cmd_verify(const Options& o)
{
    auto domain = make_domain(o);
    auto ctx = make_context(o);
    ls_verify_options options{};
    ls_verify_options_default(&options);
    if (o.t_max > 0.0) options.t_max = o.t_max;
    options.seed = o.seed;

    ls_report* raw = nullptr;
    check(ls_verify(ctx.get(), domain.get(), &options, &raw));
    std::unique_ptr<ls_report, ReportDeleter> report(raw);

    std::printf("%-20s %-6s %10s %10s  %s\n", "suite", "result", "cases", "failures", "detail");
    for (std::size_t i = 0; i < ls_report_size(report.get()); ++i) {
        ls_suite_info s{};
        check(ls_report_suite(report.get(), i, &s));
        std::printf("%-20s %-6s %10lld %10lld  %s\n", s.name, s.passed ? "PASS" : "FAIL",
                    static_cast<long long>(s.cases), static_cast<long long>(s.failures), s.detail);
    }
    return ls_report_passed(report.get()) ? kSuccess : kVerification;
}

void add_search_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--levels", o.search.levels, "Refinement levels");
    cmd->add_option("--grid", o.search.grid_per_axis, "Grid points per free axis (odd)");
    cmd->add_option("--radius", o.search.initial_radius, "Initial log-space half-width");
    cmd->add_option("--keep-top", o.search.keep_top, "Cells refined per level");
    cmd->add_option("--expand-limit", o.search.expand_limit, "Maximum boundary expansions");
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    ls_search_config_default(&o.search);

    CLI::App app{"Lattice points in stretched model domains of finite type"};
    app.require_subcommand(1);
    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--omega", o.omega, "Comma-separated even exponents")->required();
        cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
    };

    auto* volume = app.add_subcommand("volume", "Closed-form measures and balanced factors");
    common(volume);

    auto* count = app.add_subcommand("count", "Exact lattice count with prediction");
    common(count);
    count->add_option("--t", o.t, "Dilation")->required();
    count->add_option("--region", o.region, "full | positive | nonnegative | hyperplane_union");
    count->add_option("--a", o.factors, "Comma-separated stretch factors");
    count->add_flag("--oracle", o.oracle, "Cross-check with brute-force enumeration");

    auto* predict = app.add_subcommand("predict", "Two-term asymptotic prediction");
    common(predict);
    predict->add_option("--t", o.t, "Dilation")->required();
    predict->add_option("--region", o.region, "full | positive | nonnegative | hyperplane_union");
    predict->add_option("--a", o.factors, "Comma-separated stretch factors");

    auto* optimize = app.add_subcommand("optimize", "Search for an optimal stretch");
    common(optimize);
    optimize->add_option("--t", o.t, "Dilation")->required();
    optimize->add_option("--objective", o.objective, "max-positive | min-nonnegative");
    add_search_flags(optimize, o);

    auto* sweep = app.add_subcommand("sweep", "Optimize over log-spaced t and fit the convergence rate");
    common(sweep);
    sweep->add_option("--t-min", o.t_min, "Smallest t");
    sweep->add_option("--t-max", o.t_max, "Largest t")->required();
    sweep->add_option("--points", o.points, "Number of t values");
    sweep->add_option("--objective", o.objective, "max-positive | min-nonnegative");
    sweep->add_option("--out", o.out, "Output path prefix");
    sweep->add_option("--format", o.formats, "csv, json, svg (repeatable; default all)")->delimiter(',');
    add_search_flags(sweep, o);

    auto* verify = app.add_subcommand("verify", "Run the seeded property suites");
    common(verify);
    verify->add_option("--t-max", o.t_max, "Largest t in the suites");
    verify->add_option("--seed", o.seed, "Seed for randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kValidation;
    }

    try {
        if (*volume) return cmd_volume(o);
        if (*count) return cmd_count(o);
        if (*predict) return cmd_predict(o);
        if (*optimize) return cmd_optimize(o);
        if (*sweep) return cmd_sweep(o);
        if (*verify) return cmd_verify(o);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    }
    return kValidation;
}
