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

#include "density_curve.hpp"

#include "errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

namespace msinr {

std::string_view to_string(CurveKind kind)
{
    return kind == CurveKind::analytic ? "analytic" : "empirical";
}

void DensityCurve::validate() const
{
    if (grid.size() != values.size())
        throw UsageError("density curve grid and values differ in length");
    if (grid.size() < 2)
        throw UsageError("density curve needs at least two points");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (!std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1])))
            throw UsageError("density curve grid must be finite and strictly increasing");
        if (!std::isfinite(values[i]) || values[i] < 0.0)
            throw UsageError("density values must be finite and nonnegative");
    }
}

double DensityCurve::trapezoid_integral() const
{
    return trapezoid(grid, values);
}

double trapezoid(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw UsageError("trapezoid: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return sum;
}

double interpolate(const DensityCurve &curve, double x)
{
    const auto &g = curve.grid;
    if (g.empty() || x < g.front() || x > g.back())
        throw UsageError("interpolation point outside the curve grid");
    auto it = std::upper_bound(g.begin(), g.end(), x);
    if (it == g.end())
        return curve.values.back();
    const std::size_t hi = static_cast<std::size_t>(it - g.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - g[lo]) / (g[hi] - g[lo]);
    return curve.values[lo] + w * (curve.values[hi] - curve.values[lo]);
}

void write_curve(const DensityCurve &curve, const std::string &path, CurveFormat format)
{
    curve.validate();
    if (format == CurveFormat::json)
    {
        nlohmann::json j;
        j["kind"] = to_string(curve.kind);
        j["gamma"] = curve.grid;
        j["density"] = curve.values;
        std::ofstream out(path);
        if (!out)
            throw IoError("cannot open " + path + " for writing");
        out << j.dump() << '\n';
        if (!out)
            throw IoError("write failed for " + path);
        return;
    }

    std::unique_ptr<std::FILE, int (*)(std::FILE *)> f(std::fopen(path.c_str(), "w"), &std::fclose);
    if (!f)
        throw IoError("cannot open " + path + " for writing");
    const std::string kind(to_string(curve.kind));
    std::fprintf(f.get(), "gamma,density,kind\n");
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        std::fprintf(f.get(), "%.17g,%.17g,%s\n", curve.grid[i], curve.values[i], kind.c_str());
    if (std::ferror(f.get()))
        throw IoError("write failed for " + path);
}

} // namespace msinr
