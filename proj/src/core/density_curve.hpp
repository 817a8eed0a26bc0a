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

#include "config.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace msinr {

enum class CurveKind
{
    analytic,
    empirical,
};

std::string_view to_string(CurveKind kind);

// Density sampled on a strictly increasing grid.
struct DensityCurve
{
    std::vector<double> grid;
    std::vector<double> values;
    CurveKind kind = CurveKind::analytic;
    std::optional<SystemConfig> config;
    // Largest per-point quadrature error estimate (analytic curves only).
    double max_abs_error = 0.0;

    // Throws UsageError on mismatched lengths, non-increasing grid or
    // negative / non-finite values.
    void validate() const;

    double trapezoid_integral() const;
};

double trapezoid(std::span<const double> x, std::span<const double> y);

// Linear interpolation of the curve at x; x must lie within the grid.
double interpolate(const DensityCurve &curve, double x);

enum class CurveFormat
{
    csv,
    json,
};

// CSV: header `gamma,density,kind`, one row per grid point, 17 significant
// digits. JSON: {"kind": ..., "gamma": [...], "density": [...]}.
void write_curve(const DensityCurve &curve, const std::string &path, CurveFormat format);

} // namespace msinr
