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

#include "empirical_stats.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace msinr {

namespace {

// Kernel support used for accumulation; exp(-32) is below 1e-13.
constexpr double kKernelReach = 8.0;

void require_finite(std::span<const double> samples)
{
    for (double s : samples)
        if (!std::isfinite(s))
            throw UsageError("samples must be finite");
}

double gaussian_kernel(double u)
{
    return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
}

} // namespace

void KdeSettings::validate() const
{
    if (bandwidth && (!(*bandwidth > 0.0) || !std::isfinite(*bandwidth)))
        throw UsageError("KDE bandwidth must be positive and finite");
    if (grid_points < 16)
        throw UsageError("KDE grid needs at least 16 points");
}

double quantile(std::span<const double> samples, double p)
{
    if (samples.empty())
        throw UsageError("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0))
        throw UsageError("quantile level must lie in [0, 1]");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = (sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

double silverman_bandwidth(std::span<const double> samples)
{
    if (samples.size() < 2)
        throw UsageError("Silverman bandwidth needs at least two samples");
    require_finite(samples);

    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double s : samples)
        mean += s;
    mean /= n;
    double ss = 0.0;
    for (double s : samples)
        ss += (s - mean) * (s - mean);
    const double sd = std::sqrt(ss / (n - 1.0));

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    auto q = [&](double p) {
        const double h = (n - 1.0) * p;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
    };
    const double iqr_sd = (q(0.75) - q(0.25)) / 1.34;

    double spread = std::min(sd, iqr_sd);
    if (!(spread > 0.0))
        spread = std::max(sd, iqr_sd);
    if (!(spread > 0.0))
        throw UsageError("Silverman bandwidth undefined for samples without spread");
    return 0.9 * spread * std::pow(n, -0.2);
}

DensityCurve kde(std::span<const double> samples, const KdeSettings &settings)
{
    settings.validate();
    if (samples.empty())
        throw UsageError("KDE of an empty sample set");
    require_finite(samples);
    const double h = settings.bandwidth ? *settings.bandwidth : silverman_bandwidth(samples);

    const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
    const double origin = *min_it;
    const double lo = -3.0 * h; // grid offsets relative to the smallest sample
    const double hi = (*max_it - origin) + 3.0 * h;
    const int points = settings.grid_points;
    const double step = (hi - lo) / (points - 1);

    std::vector<double> acc(static_cast<std::size_t>(points), 0.0);
    for (double s : samples)
    {
        const double d = s - origin;
        const int first = std::max(0, static_cast<int>(std::ceil((d - kKernelReach * h - lo) / step)));
        const int last = std::min(points - 1, static_cast<int>(std::floor((d + kKernelReach * h - lo) / step)));
        for (int j = first; j <= last; ++j)
            acc[j] += gaussian_kernel((lo + j * step - d) / h);
    }

    DensityCurve curve;
    curve.kind = CurveKind::empirical;
    curve.grid.resize(acc.size());
    curve.values.resize(acc.size());
    const double norm = 1.0 / (static_cast<double>(samples.size()) * h);
    for (std::size_t j = 0; j < acc.size(); ++j)
    {
        curve.grid[j] = origin + (lo + static_cast<double>(j) * step);
        curve.values[j] = acc[j] * norm;
    }
    return curve;
}

DensityCurve kde(const SinrSampleSet &samples, const KdeSettings &settings)
{
    DensityCurve curve = kde(std::span<const double>(samples.samples), settings);
    curve.config = samples.config;
    return curve;
}

std::vector<double> kde_evaluate(std::span<const double> samples, double bandwidth, std::span<const double> points)
{
    if (samples.empty())
        throw UsageError("KDE of an empty sample set");
    if (!(bandwidth > 0.0))
        throw UsageError("KDE bandwidth must be positive");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> out;
    out.reserve(points.size());
    const double norm = 1.0 / (static_cast<double>(sorted.size()) * bandwidth);
    for (double x : points)
    {
        auto first = std::lower_bound(sorted.begin(), sorted.end(), x - kKernelReach * bandwidth);
        auto last = std::upper_bound(first, sorted.end(), x + kKernelReach * bandwidth);
        double acc = 0.0;
        for (auto it = first; it != last; ++it)
            acc += gaussian_kernel((x - *it) / bandwidth);
        out.push_back(acc * norm);
    }
    return out;
}

DensityDistance compare(const DensityCurve &a, const DensityCurve &b)
{
    a.validate();
    b.validate();
    if (a.config && b.config && !(*a.config == *b.config))
        throw UsageError("compared curves belong to different configurations");

    const double lo = std::max(a.grid.front(), b.grid.front());
    const double hi = std::min(a.grid.back(), b.grid.back());
    if (!(lo < hi))
        throw UsageError("compared curves have disjoint supports");

    std::vector<double> grid{lo, hi};
    for (const auto *c : {&a, &b})
        for (double x : c->grid)
            if (x > lo && x < hi)
                grid.push_back(x);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> diff(grid.size());
    DensityDistance d;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        diff[i] = std::abs(interpolate(a, grid[i]) - interpolate(b, grid[i]));
        d.sup = std::max(d.sup, diff[i]);
    }
    d.l1 = trapezoid(grid, diff);
    d.common_grid_points = static_cast<int>(grid.size());
    return d;
}

MomentSummary moment_summary(std::span<const double> samples)
{
    if (samples.size() < 4)
        throw UsageError("moment summary needs at least four samples");
    require_finite(samples);

    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double s : samples)
        mean += s;
    mean /= n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double s : samples)
    {
        const double d = s - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    MomentSummary m;
    m.mean = mean;
    // Spread at rounding level of the mean counts as none.
    const double eps = std::numeric_limits<double>::epsilon();
    if (m2 <= 16.0 * eps * eps * mean * mean)
        m2 = 0.0;
    m.variance = m2 * n / (n - 1.0);
    if (m2 > 0.0)
    {
        m.skewness = m3 / std::pow(m2, 1.5);
        m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return m;
}

} // namespace msinr
