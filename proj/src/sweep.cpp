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

#include "latstretch/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>
#include <tbb/parallel_for.h>

#include "latstretch/asymptotics.hpp"
#include "latstretch/errors.hpp"
#include "latstretch/measure.hpp"

namespace latstretch {

using nlohmann::json;

std::vector<double> log_spaced(double t_min, double t_max, int points)
{
    if (points < 1) throw InvalidArgument("log_spaced: points must be >= 1");
    if (!(t_min > 0.0) || !(t_max >= t_min)) throw InvalidArgument("log_spaced: need 0 < t_min <= t_max");
    if (points == 1) return {t_min};
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double lo = std::log(t_min);
    const double span = std::log(t_max) - lo;
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = std::exp(lo + span * i / (points - 1));
    grid.front() = t_min;
    grid.back() = t_max;
    return grid;
}

std::vector<SweepRecord> run_sweep(const Exponents& omegas, const std::vector<double>& t_grid,
                                   Objective objective, const SearchConfig& config)
{
    if (t_grid.empty()) throw InvalidArgument("run_sweep: empty t grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 1.0)) throw InvalidArgument("run_sweep: every t must be >= 1");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("run_sweep: t grid must be increasing");
    }
    config.validate();

    const auto measures = measure_table(omegas);
    std::vector<SweepRecord> records(t_grid.size());
    tbb::parallel_for(std::size_t{0}, t_grid.size(), [&](std::size_t i) {
        SweepRecord& rec = records[i];
        rec.t = t_grid[i];
        rec.result = optimize(omegas, rec.t, objective, config);
        rec.max_deviation = 0.0;
        for (double dev : rec.result.deviations) rec.max_deviation = std::max(rec.max_deviation, std::abs(dev));
        rec.count_observed = rec.result.value;
        const auto p = predict(measures, omegas, rec.result.best, rec.t, objective_region(objective));
        rec.count_predicted = p.value();
        rec.error_budget = p.error_budget;
    });
    return records;
}

RateFit fit_rate(const std::vector<SweepRecord>& records, Rational gamma)
{
    RateFit fit;
    fit.gamma_theoretical = gamma;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& r : records) {
        if (r.max_deviation > r.result.resolution) {
            xs.push_back(std::log(r.t));
            ys.push_back(std::log(r.max_deviation));
        } else {
            ++fit.censored;
        }
    }
    fit.points_used = static_cast<std::int64_t>(xs.size());
    if (xs.size() < 2) return fit;

    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) return fit;
    fit.saturated = false;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    return fit;
}

std::vector<double> envelope_violations(const std::vector<SweepRecord>& records, double factor)
{
    std::vector<double> ts;
    for (const auto& r : records)
        if (std::abs(static_cast<double>(r.count_observed) - r.count_predicted) > factor * r.error_budget)
            ts.push_back(r.t);
    return ts;
}

EmitFormat parse_format(std::string_view name)
{
    if (name == "csv") return EmitFormat::csv;
    if (name == "json") return EmitFormat::json;
    if (name == "svg" || name == "svg_scatter") return EmitFormat::svg;
    throw InvalidArgument("unknown format '" + std::string(name) + "'");
}

std::string to_csv(const std::vector<SweepRecord>& records)
{
    const std::size_t d = records.empty() ? 0 : records.front().result.best.dim();
    std::string out = "t";
    for (std::size_t j = 1; j <= d; ++j) out += fmt::format(",a_{}", j);
    for (std::size_t j = 1; j <= d; ++j) out += fmt::format(",dev_{}", j);
    out += ",max_dev,count,predicted,resolution\n";
    for (const auto& r : records) {
        out += fmt::format("{}", r.t);
        for (double a : r.result.best.values()) out += fmt::format(",{}", a);
        for (double dev : r.result.deviations) out += fmt::format(",{}", dev);
        out += fmt::format(",{},{},{},{}\n", r.max_deviation, r.count_observed, r.count_predicted,
                           r.result.resolution);
    }
    return out;
}

namespace {

json factors_json(const StretchFactors& a) { return json(std::vector<double>(a.values().begin(), a.values().end())); }

json record_json(const SweepRecord& r)
{
    json ties = json::array();
    for (const auto& tie : r.result.ties) ties.push_back(factors_json(tie));
    return json{
        {"t", r.t},
        {"objective", std::string(to_string(r.result.objective))},
        {"best", factors_json(r.result.best)},
        {"value", r.result.value},
        {"ties", std::move(ties)},
        {"resolution", r.result.resolution},
        {"deviations", r.result.deviations},
        {"expansions", r.result.expansions},
        {"max_radius", r.result.max_radius},
        {"boundary_warning", r.result.boundary_warning},
        {"evaluations", r.result.evaluations},
        {"max_deviation", r.max_deviation},
        {"count_observed", r.count_observed},
        {"count_predicted", r.count_predicted},
        {"error_budget", r.error_budget},
    };
}

json fit_json(const RateFit& fit)
{
    json j{
        {"saturated", fit.saturated},
        {"points_used", fit.points_used},
        {"censored", fit.censored},
        {"gamma_theoretical", {{"num", fit.gamma_theoretical.num}, {"den", fit.gamma_theoretical.den}}},
    };
    if (!fit.saturated) {
        j["slope"] = fit.slope;
        j["intercept"] = fit.intercept;
        j["r_squared"] = fit.r_squared;
    }
    return j;
}

StretchFactors factors_from(const json& j) { return StretchFactors::from_normalized(j.get<std::vector<double>>()); }

} // namespace

std::string to_json(const std::vector<SweepRecord>& records, const RateFit& fit)
{
    json doc{{"records", json::array()}, {"fit", fit_json(fit)}};
    for (const auto& r : records) doc["records"].push_back(record_json(r));
    return doc.dump(2) + "\n";
}

SweepData parse_sweep_json(std::string_view text)
{
    try {
        const json doc = json::parse(text);
        SweepData data;
        for (const auto& jr : doc.at("records")) {
            SweepRecord r;
            r.t = jr.at("t").get<double>();
            r.result.t = r.t;
            r.result.objective = parse_objective(jr.at("objective").get<std::string>());
            r.result.best = factors_from(jr.at("best"));
            r.result.value = jr.at("value").get<std::int64_t>();
            for (const auto& tie : jr.at("ties")) r.result.ties.push_back(factors_from(tie));
            r.result.resolution = jr.at("resolution").get<double>();
            r.result.deviations = jr.at("deviations").get<std::vector<double>>();
            r.result.expansions = jr.at("expansions").get<int>();
            r.result.max_radius = jr.at("max_radius").get<double>();
            r.result.boundary_warning = jr.at("boundary_warning").get<bool>();
            r.result.evaluations = jr.at("evaluations").get<std::int64_t>();
            r.max_deviation = jr.at("max_deviation").get<double>();
            r.count_observed = jr.at("count_observed").get<std::int64_t>();
            r.count_predicted = jr.at("count_predicted").get<double>();
            r.error_budget = jr.at("error_budget").get<double>();
            data.records.push_back(std::move(r));
        }
        const auto& jf = doc.at("fit");
        data.fit.saturated = jf.at("saturated").get<bool>();
        data.fit.points_used = jf.at("points_used").get<std::int64_t>();
        data.fit.censored = jf.at("censored").get<std::int64_t>();
        data.fit.gamma_theoretical.num = jf.at("gamma_theoretical").at("num").get<std::int64_t>();
        data.fit.gamma_theoretical.den = jf.at("gamma_theoretical").at("den").get<std::int64_t>();
        if (!data.fit.saturated) {
            data.fit.slope = jf.at("slope").get<double>();
            data.fit.intercept = jf.at("intercept").get<double>();
            data.fit.r_squared = jf.at("r_squared").get<double>();
        }
        return data;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed sweep json: ") + e.what());
    }
}

std::string to_svg(const std::vector<SweepRecord>& records, const RateFit& fit)
{
    constexpr double width = 640.0;
    constexpr double height = 400.0;
    constexpr double left = 60.0;
    constexpr double right = 620.0;
    constexpr double top = 20.0;
    constexpr double bottom = 360.0;

    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records)
        if (r.max_deviation > r.result.resolution) pts.emplace_back(std::log(r.t), std::log(r.max_deviation));

    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    if (!pts.empty()) {
        x0 = x1 = pts.front().first;
        y0 = y1 = pts.front().second;
        for (auto [x, y] : pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!fit.saturated) {
        for (double x : {x0, x1}) {
            y0 = std::min(y0, fit.intercept + fit.slope * x);
            y1 = std::max(y1, fit.intercept + fit.slope * x);
        }
    }
    if (x1 - x0 < 1e-9) { x0 -= 0.5; x1 += 0.5; }
    if (y1 - y0 < 1e-9) { y0 -= 0.5; y1 += 0.5; }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
    auto py = [&](double y) { return bottom - (y - y0) / (y1 - y0) * (bottom - top); };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        width, height, width, height);
    svg += fmt::format("  <path class=\"axes\" d=\"M {} {} L {} {} L {} {}\" fill=\"none\" stroke=\"black\"/>\n",
                       left, top, left, bottom, right, bottom);
    svg += fmt::format("  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">log t</text>\n", (left + right) / 2, height - 10);
    svg += fmt::format("  <text x=\"15\" y=\"{}\" transform=\"rotate(-90 15 {})\" text-anchor=\"middle\">log max deviation</text>\n",
                       (top + bottom) / 2, (top + bottom) / 2);
    for (auto [x, y] : pts)
        svg += fmt::format("  <circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"3\" fill=\"steelblue\"/>\n", px(x), py(y));

    if (!fit.saturated) {
        svg += fmt::format("  <line class=\"fit\" x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" stroke=\"firebrick\"/>\n",
                           px(x0), py(fit.intercept + fit.slope * x0), px(x1), py(fit.intercept + fit.slope * x1));
        // Reference slope -gamma through the centroid of the fitted points.
        double cx = 0.0, cy = 0.0;
        for (auto [x, y] : pts) {
            cx += x;
            cy += y;
        }
        cx /= static_cast<double>(pts.size());
        cy /= static_cast<double>(pts.size());
        const double g = fit.gamma_theoretical.value();
        svg += fmt::format("  <line class=\"reference\" x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n",
                           px(x0), py(cy - g * (x0 - cx)), px(x1), py(cy - g * (x1 - cx)));
        svg += fmt::format("  <text x=\"{}\" y=\"{}\">slope {:.4f} (reference {:.4f})</text>\n", left + 10, top + 14,
                           fit.slope, -g);
    } else {
        svg += fmt::format("  <text x=\"{}\" y=\"{}\">saturated: deviations at resolution floor</text>\n", left + 10, top + 14);
    }
    svg += "</svg>\n";
    return svg;
}

void emit(const std::vector<SweepRecord>& records, const RateFit& fit, EmitFormat format,
          const std::filesystem::path& destination)
{
    std::string body;
    switch (format) {
    case EmitFormat::csv: body = to_csv(records); break;
    case EmitFormat::json: body = to_json(records, fit); break;
    case EmitFormat::svg: body = to_svg(records, fit); break;
    }
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + destination.string() + "' for writing");
    out << body;
    out.flush();
    if (!out) throw IoError("failed writing '" + destination.string() + "'");
}

} // namespace latstretch
