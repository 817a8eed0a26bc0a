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

#include "channel_mc.hpp"
#include "density_curve.hpp"

#include <optional>
#include <span>

namespace msinr {

struct KdeSettings
{
    // Explicit Gaussian kernel bandwidth; empty selects Silverman's rule.
    std::optional<double> bandwidth;
    int grid_points = 512;

    void validate() const;
};

// 0.9 * min(std, IQR / 1.34) * n^(-1/5). Falls back to whichever spread
// measure is nonzero; throws UsageError when both are zero or n < 2.
double silverman_bandwidth(std::span<const double> samples);

// Linear-interpolation sample quantile (Hyndman-Fan type 7), p in [0, 1].
double quantile(std::span<const double> samples, double p);

// Gaussian KDE on a uniform grid covering [min - 3h, max + 3h].
DensityCurve kde(std::span<const double> samples, const KdeSettings &settings);
DensityCurve kde(const SinrSampleSet &samples, const KdeSettings &settings);

// Evaluates the Gaussian KDE with bandwidth h at arbitrary points.
std::vector<double> kde_evaluate(std::span<const double> samples, double bandwidth, std::span<const double> points);

struct DensityDistance
{
    double l1 = 0.0;
    double sup = 0.0;
    int common_grid_points = 0;
};

// Interpolates both curves onto the union of their grids restricted to the
// overlap of their supports; L1 by trapezoid, sup by maximum. Symmetric in
// its arguments. Throws UsageError for disjoint supports or curves tagged
// with different configurations.
DensityDistance compare(const DensityCurve &a, const DensityCurve &b);

struct MomentSummary
{
    double mean = 0.0;
    double variance = 0.0;                 // unbiased (n - 1)
    std::optional<double> skewness;        // g1, empty when variance is 0
    std::optional<double> excess_kurtosis; // g2, empty when variance is 0
};

// Requires at least four samples.
MomentSummary moment_summary(std::span<const double> samples);

} // namespace msinr
