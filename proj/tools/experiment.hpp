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

#pragma once

#include <mimo_sinr/mimo_sinr.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace msinr::cli {

enum class Output
{
    analytic_curve,
    empirical_curve,
    distance,
    moments,
    ser,
    sum_rate,
};

std::optional<Output> parse_output(const std::string &name);
std::string to_string(Output output);
std::set<Output> all_outputs();

struct OperatingPoint
{
    int n_antennas = 16;
    int n_users = 8;
    double snr_db = 10.0;
};

struct Preset
{
    std::string name;
    std::string description;
    std::vector<OperatingPoint> points;
};

// Antenna counts swept by the fixed-SNR presets.
inline const std::vector<int> kAntennaSweep{16, 32, 64, 128};

const std::vector<Preset> &presets();
const Preset *find_preset(const std::string &name);

struct Modulation
{
    std::string name;
    double alpha_tilde = 1.0;
    double beta_tilde = 2.0;
};

// Conventional constants for the linear-argument form alpha * Q(beta * g).
const std::vector<Modulation> &modulations();
const Modulation *find_modulation(const std::string &name);

struct ExperimentSpec
{
    std::vector<OperatingPoint> points{OperatingPoint{}};
    std::string label_prefix;
    double sigma_h_sq = 1.0;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    // Unset bounds default to the 0.1% and 99.9% sample quantiles.
    std::optional<double> gamma_min;
    std::optional<double> gamma_max;
    int gamma_points = 512;
    msinr_kde_settings kde{};
    msinr_quadrature quadrature{};
    std::set<Output> outputs = all_outputs();
    msinr_format format = MSINR_FORMAT_CSV;
    double alpha_tilde = 1.0;
    double beta_tilde = 2.0;
    std::filesystem::path out_dir = "results";

    ExperimentSpec();
    // Throws ExperimentError(MSINR_ERR_USAGE) on invalid combinations.
    void validate() const;
};

class ExperimentError : public std::runtime_error
{
public:
    ExperimentError(msinr_status status, const std::string &what) : std::runtime_error(what), status_(status) {}
    msinr_status status() const noexcept { return status_; }

private:
    msinr_status status_;
};

struct PointReport
{
    OperatingPoint point;
    std::string label;
    std::vector<std::filesystem::path> files;
};

// Runs every operating point in `spec`, writing curve files and one
// summary JSON per point into out_dir. Points sharing (N, K) reuse one set
// of channel draws.
std::vector<PointReport> run_experiment(const ExperimentSpec &spec);

std::string point_label(const std::string &prefix, const OperatingPoint &point);

} // namespace msinr::cli
