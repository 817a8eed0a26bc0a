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

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

using namespace msinr::cli;

int list_presets()
{
    for (const auto &p : presets())
    {
        std::cout << p.name << "  " << p.description << '\n';
        for (const auto &pt : p.points)
            std::cout << "    N=" << pt.n_antennas << " K=" << pt.n_users << " snr_db=" << pt.snr_db << '\n';
    }
    std::cout << "modulation presets (alpha_tilde * Q(beta_tilde * gamma)):\n";
    for (const auto &m : modulations())
        std::cout << "    " << m.name << ": alpha_tilde=" << m.alpha_tilde << " beta_tilde=" << m.beta_tilde << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Downlink SINR density toolkit for matched-filter multi-user MIMO"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(msinr_version()));

    ExperimentSpec spec;
    OperatingPoint point;
    std::string preset_name, modulation_name, format = "csv";
    std::vector<std::string> output_names;
    std::optional<double> alpha, beta, bandwidth;
    std::optional<int> kde_points;
    std::string out_dir = "results";

    auto *run = app.add_subcommand("run", "Sample, evaluate and compare SINR densities");
    run->add_option("--n-antennas,-N", point.n_antennas, "Base-station antennas N")->capture_default_str();
    run->add_option("--n-users,-K", point.n_users, "Single-antenna users K")->capture_default_str();
    run->add_option("--snr-db", point.snr_db, "rho^2 / sigma_n^2 in dB (sigma_n^2 = 1)")->capture_default_str();
    run->add_option("--sigma-h-sq", spec.sigma_h_sq, "Channel coefficient variance")->capture_default_str();
    run->add_option("--samples", spec.samples, "Monte Carlo draws per (N, K)")->capture_default_str();
    run->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
    run->add_option("--gamma-min", spec.gamma_min, "Analytic grid start (default: 0.1% sample quantile)");
    run->add_option("--gamma-max", spec.gamma_max, "Analytic grid end (default: 99.9% sample quantile)");
    run->add_option("--gamma-points", spec.gamma_points, "Analytic grid points")->capture_default_str();
    auto *preset_opt = run->add_option("--preset", preset_name, "Figure preset (see `presets`)");
    run->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    run->add_option("--format", format, "Curve file format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    run->add_option("--outputs", output_names,
                    "Subset of analytic_curve, empirical_curve, distance, moments, ser, sum_rate")
        ->delimiter(',');
    auto *mod_opt = run->add_option("--modulation", modulation_name, "Modulation preset: bpsk or qpsk");
    auto *alpha_opt = run->add_option("--alpha-tilde", alpha, "SER scale alpha_tilde (default 1)");
    auto *beta_opt = run->add_option("--beta-tilde", beta, "SER argument scale beta_tilde (default 2)");
    mod_opt->excludes(alpha_opt)->excludes(beta_opt);
    run->add_option("--bandwidth", bandwidth, "KDE bandwidth (default: Silverman's rule)");
    run->add_option("--kde-points", kde_points, "KDE grid points (default 512)");
    run->add_option("--rel-tol", spec.quadrature.rel_tol, "Quadrature relative tolerance")->capture_default_str();
    run->add_option("--max-subdivisions", spec.quadrature.max_subdivisions, "Quadrature panel budget")
        ->capture_default_str();

    auto *list = app.add_subcommand("presets", "List figure and modulation presets");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : MSINR_ERR_USAGE;
    }

    if (list->parsed())
        return list_presets();

    try
    {
        if (!preset_opt->empty())
        {
            const Preset *p = find_preset(preset_name);
            if (!p)
                throw ExperimentError(MSINR_ERR_USAGE, "unknown preset '" + preset_name + "'");
            spec.points = p->points;
            spec.label_prefix = p->name;
        }
        else
        {
            spec.points = {point};
        }

        if (!mod_opt->empty())
        {
            const Modulation *m = find_modulation(modulation_name);
            if (!m)
                throw ExperimentError(MSINR_ERR_USAGE, "unknown modulation '" + modulation_name + "'");
            spec.alpha_tilde = m->alpha_tilde;
            spec.beta_tilde = m->beta_tilde;
        }
        if (alpha)
            spec.alpha_tilde = *alpha;
        if (beta)
            spec.beta_tilde = *beta;

        if (!output_names.empty())
        {
            spec.outputs.clear();
            for (const auto &name : output_names)
            {
                const auto o = parse_output(name);
                if (!o)
                    throw ExperimentError(MSINR_ERR_USAGE, "unknown output '" + name + "'");
                spec.outputs.insert(*o);
            }
        }
        if (bandwidth)
        {
            if (!(*bandwidth > 0.0))
                throw ExperimentError(MSINR_ERR_USAGE, "--bandwidth must be positive");
            spec.kde.bandwidth = *bandwidth;
        }
        if (kde_points)
            spec.kde.grid_points = *kde_points;
        spec.format = format == "json" ? MSINR_FORMAT_JSON : MSINR_FORMAT_CSV;
        spec.out_dir = out_dir;

        for (const auto &report : run_experiment(spec))
            for (const auto &file : report.files)
                std::cout << file.string() << '\n';
        return 0;
    }
    catch (const ExperimentError &e)
    {
        std::cerr << "msinr: " << e.what() << '\n';
        if (e.status() == MSINR_ERR_DOMAIN)
            return MSINR_ERR_USAGE;
        return e.status() == MSINR_ERR_INTERNAL ? 1 : e.status();
    }
}
