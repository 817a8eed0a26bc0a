// SPDX-License-Identifier: Apache-2.0
//
// mimo-sinr: downlink SINR density toolkit for matched-filter multi-user MIMO
// Copyright (C) 2026 The mimo-sinr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <utility>

namespace msinr::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

void check(msinr_status status)
{
    if (status != MSINR_OK)
        throw ExperimentError(status, msinr_last_error());
}

struct TermsDeleter
{
    void operator()(msinr_channel_terms *p) const { msinr_channel_terms_free(p); }
};
struct SamplesDeleter
{
    void operator()(msinr_samples *p) const { msinr_samples_free(p); }
};
struct CurveDeleter
{
    void operator()(msinr_curve *p) const { msinr_curve_free(p); }
};
using TermsPtr = std::unique_ptr<msinr_channel_terms, TermsDeleter>;
using SamplesPtr = std::unique_ptr<msinr_samples, SamplesDeleter>;
using CurvePtr = std::unique_ptr<msinr_curve, CurveDeleter>;

const char *const kOutputNames[] = {"analytic_curve", "empirical_curve", "distance", "moments", "ser", "sum_rate"};

json number_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json metric_json(const msinr_metric &m)
{
    return json{{"value", m.value},
                {"error_estimate", m.error_estimate},
                {"truncation_bound", m.truncation_bound},
                {"cutoff", m.cutoff}};
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

class Runner
{
public:
    explicit Runner(const ExperimentSpec &spec) : spec_(spec) {}

    PointReport run(const OperatingPoint &point)
    {
        const auto start = std::chrono::steady_clock::now();
        PointReport report{point, point_label(spec_.label_prefix, point), {}};

        msinr_config config;
        msinr_config_from_snr_db(point.n_antennas, point.n_users, point.snr_db, spec_.sigma_h_sq, &config);
        check(msinr_config_validate(&config));

        const bool want_analytic = wants(Output::analytic_curve) || wants(Output::distance);
        const bool want_empirical = wants(Output::empirical_curve) || wants(Output::distance);
        const bool explicit_grid = spec_.gamma_min && spec_.gamma_max;
        const bool need_samples =
            want_empirical || wants(Output::moments) || (want_analytic && !explicit_grid);

        SamplesPtr samples;
        if (need_samples)
        {
            msinr_samples *raw = nullptr;
            check(msinr_samples_from_terms(terms_for(config), &config, &raw));
            samples.reset(raw);
        }

        double quad_error = 0.0;
        json summary;
        summary["config"] = json{{"n_antennas", config.n_antennas},
                                 {"n_users", config.n_users},
                                 {"snr_db", point.snr_db},
                                 {"rho", config.rho},
                                 {"sigma_h_sq", config.sigma_h_sq},
                                 {"sigma_n_sq", config.sigma_n_sq}};
        summary["seed"] = spec_.seed;
        summary["samples"] = need_samples ? json(spec_.samples) : json(nullptr);

        CurvePtr analytic, empirical;
        if (want_analytic)
        {
            msinr_grid_spec grid{};
            grid.points = spec_.gamma_points;
            if (spec_.gamma_min)
                grid.gamma_min = *spec_.gamma_min;
            else
                check(msinr_samples_quantile(samples.get(), 0.001, &grid.gamma_min));
            if (spec_.gamma_max)
                grid.gamma_max = *spec_.gamma_max;
            else
                check(msinr_samples_quantile(samples.get(), 0.999, &grid.gamma_max));
            summary["grid"] = json{{"gamma_min", grid.gamma_min},
                                   {"gamma_max", grid.gamma_max},
                                   {"points", grid.points}};

            msinr_curve *raw = nullptr;
            check(msinr_analytic_curve(&config, &grid, &spec_.quadrature, &raw));
            analytic.reset(raw);
            quad_error = std::max(quad_error, msinr_curve_max_error(analytic.get()));
        }
        else
        {
            summary["grid"] = nullptr;
        }
        if (want_empirical)
        {
            msinr_curve *raw = nullptr;
            check(msinr_kde_curve(samples.get(), &spec_.kde, &raw));
            empirical.reset(raw);
        }

        if (wants(Output::distance))
        {
            msinr_distance d{};
            check(msinr_compare(analytic.get(), empirical.get(), &d));
            summary["l1"] = d.l1;
            summary["sup"] = d.sup;
        }
        else
        {
            summary["l1"] = nullptr;
            summary["sup"] = nullptr;
        }

        if (wants(Output::moments))
        {
            msinr_moments m{};
            check(msinr_samples_moments(samples.get(), &m));
            summary["moments"] = json{{"mean", m.mean},
                                      {"variance", m.variance},
                                      {"skewness", number_or_null(m.skewness)},
                                      {"excess_kurtosis", number_or_null(m.excess_kurtosis)}};
        }
        else
        {
            summary["moments"] = nullptr;
        }

        if (wants(Output::ser))
        {
            msinr_metric m{};
            check(msinr_avg_ser(&config, spec_.alpha_tilde, spec_.beta_tilde, &spec_.quadrature, &m));
            auto entry = metric_json(m);
            entry["alpha_tilde"] = spec_.alpha_tilde;
            entry["beta_tilde"] = spec_.beta_tilde;
            summary["ser"] = entry;
            quad_error = std::max(quad_error, m.error_estimate);
        }
        else
        {
            summary["ser"] = nullptr;
        }

        if (wants(Output::sum_rate))
        {
            msinr_metric m{};
            check(msinr_avg_sum_rate(&config, &spec_.quadrature, &m));
            summary["sum_rate"] = metric_json(m);
            quad_error = std::max(quad_error, m.error_estimate);
        }
        else
        {
            summary["sum_rate"] = nullptr;
        }

        msinr_metric norm{};
        check(msinr_normalization(&config, &spec_.quadrature, &norm));
        summary["normalization_check"] = metric_json(norm);
        quad_error = std::max(quad_error, norm.error_estimate);
        summary["quadrature_max_error"] = quad_error;

        const std::string ext = spec_.format == MSINR_FORMAT_JSON ? ".json" : ".csv";
        if (wants(Output::analytic_curve))
            write_curve(analytic.get(), report, report.label + "_analytic" + ext);
        if (wants(Output::empirical_curve))
            write_curve(empirical.get(), report, report.label + "_empirical" + ext);

        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        summary["runtime_s"] = elapsed.count();

        const fs::path summary_path = spec_.out_dir / (report.label + "_summary.json");
        std::ofstream out(summary_path);
        out << summary.dump(2) << '\n';
        out.close();
        if (!out)
            throw ExperimentError(MSINR_ERR_IO, "cannot write " + summary_path.string());
        report.files.push_back(summary_path);
        return report;
    }

private:
    bool wants(Output o) const { return spec_.outputs.contains(o); }

    void write_curve(const msinr_curve *curve, PointReport &report, const std::string &name)
    {
        const fs::path path = spec_.out_dir / name;
        check(msinr_curve_write(curve, path.c_str(), spec_.format));
        report.files.push_back(path);
    }

    // Channel draws depend only on (N, K, sigma_h^2, count, seed); points
    // differing in SNR share them.
    const msinr_channel_terms *terms_for(const msinr_config &config)
    {
        const auto key = std::make_pair(config.n_antennas, config.n_users);
        auto it = terms_.find(key);
        if (it == terms_.end())
        {
            msinr_channel_terms *raw = nullptr;
            check(msinr_channel_terms_create(&config, spec_.samples, spec_.seed, &raw));
            it = terms_.emplace(key, TermsPtr(raw)).first;
        }
        return it->second.get();
    }

    const ExperimentSpec &spec_;
    std::map<std::pair<int, int>, TermsPtr> terms_;
};

} // namespace

std::optional<Output> parse_output(const std::string &name)
{
    for (int i = 0; i < 6; ++i)
        if (name == kOutputNames[i])
            return static_cast<Output>(i);
    return std::nullopt;
}

std::string to_string(Output output)
{
    return kOutputNames[static_cast<int>(output)];
}

std::set<Output> all_outputs()
{
    return {Output::analytic_curve, Output::empirical_curve, Output::distance,
            Output::moments,        Output::ser,             Output::sum_rate};
}

const std::vector<Preset> &presets()
{
    static const std::vector<Preset> table = [] {
        std::vector<Preset> p;
        const std::pair<int, int> shapes[] = {{16, 8}, {32, 16}, {128, 64}};
        int index = 1;
        for (auto [n, k] : shapes)
        {
            Preset preset{"fig" + std::to_string(index++),
                          "N=" + std::to_string(n) + ", K=" + std::to_string(k) + ", SNR in {0, 5, 10} dB",
                          {}};
            for (double snr : {0.0, 5.0, 10.0})
                preset.points.push_back({n, k, snr});
            p.push_back(preset);
        }
        for (double snr : {0.0, 5.0, 10.0})
        {
            Preset preset{"fig" + std::to_string(index++),
                          "SNR=" + format_number(snr) + " dB, K=8, N in {16, 32, 64, 128}", {}};
            for (int n : kAntennaSweep)
                preset.points.push_back({n, 8, snr});
            p.push_back(preset);
        }
        return p;
    }();
    return table;
}

const Preset *find_preset(const std::string &name)
{
    for (const auto &p : presets())
        if (p.name == name)
            return &p;
    return nullptr;
}

const std::vector<Modulation> &modulations()
{
    static const std::vector<Modulation> table{{"bpsk", 1.0, 2.0}, {"qpsk", 2.0, 1.0}};
    return table;
}

const Modulation *find_modulation(const std::string &name)
{
    for (const auto &m : modulations())
        if (m.name == name)
            return &m;
    return nullptr;
}

ExperimentSpec::ExperimentSpec()
{
    msinr_kde_defaults(&kde);
    msinr_quadrature_defaults(&quadrature);
}

void ExperimentSpec::validate() const
{
    auto usage = [](const std::string &what) { throw ExperimentError(MSINR_ERR_USAGE, what); };
    if (points.empty())
        usage("no operating points");
    if (samples < 1)
        usage("--samples must be at least 1");
    if (outputs.empty())
        usage("at least one output must be requested");
    if (gamma_points < 2)
        usage("--gamma-points must be at least 2");
    if (gamma_min && !(*gamma_min > 0.0))
        usage("--gamma-min must be positive");
    if (gamma_min && gamma_max && !(*gamma_max > *gamma_min))
        usage("--gamma-max must exceed --gamma-min");
    if (!(alpha_tilde >= 0.0) || !(beta_tilde > 0.0) || !std::isfinite(alpha_tilde) || !std::isfinite(beta_tilde))
        usage("modulation needs alpha_tilde >= 0 and beta_tilde > 0");
    if (kde.grid_points < 16)
        usage("KDE grid needs at least 16 points");
    for (const auto &p : points)
    {
        msinr_config c;
        msinr_config_from_snr_db(p.n_antennas, p.n_users, p.snr_db, sigma_h_sq, &c);
        check(msinr_config_validate(&c));
    }
}

std::string point_label(const std::string &prefix, const OperatingPoint &point)
{
    std::string label = prefix.empty() ? "" : prefix + "_";
    label += "N" + std::to_string(point.n_antennas) + "_K" + std::to_string(point.n_users) + "_snr" +
             format_number(point.snr_db) + "dB";
    return label;
}

std::vector<PointReport> run_experiment(const ExperimentSpec &spec)
{
    spec.validate();
    std::error_code ec;
    fs::create_directories(spec.out_dir, ec);
    if (ec || !fs::is_directory(spec.out_dir))
        throw ExperimentError(MSINR_ERR_IO, "cannot create output directory " + spec.out_dir.string() +
                                                (ec ? ": " + ec.message() : ""));

    Runner runner(spec);
    std::vector<PointReport> reports;
    for (const auto &p : spec.points)
        reports.push_back(runner.run(p));
    return reports;
}

} // namespace msinr::cli
