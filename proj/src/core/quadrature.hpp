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

#include <functional>
#include <span>
#include <vector>

namespace msinr {

struct QuadratureSettings
{
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    // Upper SINR limit for metric integrals; <= 0 selects it automatically
    // by doubling from the density mode.
    double tail_cutoff = 0.0;

    void validate() const;
};

// Integral of exp(log_f) with its error estimate, both kept in log form so
// that results far outside double range survive.
struct LogIntegral
{
    double log_value = 0.0;
    double rel_error = 0.0; // estimated |error| / value
    int panels = 0;
    bool converged = true;

    double value() const;
    double abs_error() const { return value() * rel_error; }
};

using LogIntegrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) quadrature of exp(log_f) over
// (a, b). Every panel evaluates its 15 log values, subtracts the panel
// maximum before exponentiating and keeps that maximum as the panel scale.
// Panels are accumulated with a log-sum-exp over their scales.
//
// Stops when the summed error estimate is within max(rel_tol * |I|,
// abs_tol * exp(-log_prefactor)) -- i.e. abs_tol applies to the integral
// multiplied by exp(log_prefactor) -- or after max_subdivisions panels,
// in which case `converged` is false. Endpoints are never evaluated.
LogIntegral integrate_exp(const LogIntegrand &log_f, double a, double b, std::span<const double> breakpoints,
                          const QuadratureSettings &settings, double log_prefactor = 0.0);

struct PeakLocation
{
    double arg = 0.0;      // location of the largest log_f value found
    double log_max = 0.0;  // log_f(arg)
    double lower = 0.0;    // left crossing of log_max - kPeakSpan (or a)
    double upper = 0.0;    // right crossing of log_max - kPeakSpan (or b)
    std::vector<double> secondary; // other local maxima above the span level
};

// Values more than this far below the maximum (in natural-log units) are
// treated as the peak's tails when placing breakpoints.
inline constexpr double kPeakSpan = 50.0;

// Scans log_f on a grid that is uniform on (a, b) and geometric towards both
// endpoints, refines the best point by golden section and brackets the
// peak's tails by bisection.
PeakLocation locate_peak(const LogIntegrand &log_f, double a, double b);

// locate_peak followed by integrate_exp with breakpoints at the tails, the
// peak, the midpoints between them and any secondary maxima. Suited to
// integrands that are negligible away from a few sharp peaks.
LogIntegral integrate_exp_peaked(const LogIntegrand &log_f, double a, double b, const QuadratureSettings &settings,
                                 double log_prefactor = 0.0);

} // namespace msinr
