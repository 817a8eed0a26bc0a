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
#include "density_curve.hpp"
#include "quadrature.hpp"

namespace msinr {

struct DensityValue
{
    double value = 0.0;
    double log_value = 0.0;
    double abs_error = 0.0;
    int panels = 0;
};

// SINR density in its reduced single-integral form
//
//   f(g) = C(g) * int_0^{1/g} (1/g - v)^(K-2) exp(N v - (N sigma_n^2 / rho^2) / v) v^-(N+1) dv
//   C(g) = sigma_n^(2N) exp(-N/g) N^(K+N-1) / (rho^(2N) Gamma(N) Gamma(K-1) g^2)
//
// evaluated entirely in log form. Returns 0 for gamma <= 0. Throws
// ConvergenceError when the inner quadrature does not meet its tolerance.
DensityValue f_gamma(double gamma, const SystemConfig &config, const QuadratureSettings &settings);

// Same density through the convolution w = t + z, gamma = 1/w:
//   f(g) = g^-2 * int_0^{1/g} f_z(z) f_t(1/g - z) dz.
// Used to cross-check the reduced form.
DensityValue f_gamma_convolution(double gamma, const SystemConfig &config, const QuadratureSettings &settings);

// Density of w = t + z: int_0^w f_z(z) f_t(w - z) dz.
DensityValue f_w(double w, const SystemConfig &config, const QuadratureSettings &settings);

struct GridSpec
{
    double gamma_min = 0.0;
    double gamma_max = 0.0;
    int points = 0;
    bool log_spacing = false;
};

std::vector<double> make_grid(const GridSpec &spec);

// f_gamma on every grid point (points may be evaluated concurrently).
// Rejects gamma_min <= 0; convergence errors name the failing grid point.
DensityCurve f_gamma_curve(const SystemConfig &config, const GridSpec &grid, const QuadratureSettings &settings);

struct ModulationParams
{
    double alpha_tilde = 1.0;
    double beta_tilde = 1.0;

    void validate() const;
};

struct MetricResult
{
    double value = 0.0;
    double error_estimate = 0.0;  // quadrature error plus truncation bound
    double truncation_bound = 0.0;
    double cutoff = 0.0;          // upper SINR limit used
};

// Location of the density maximum.
double density_mode(const SystemConfig &config, const QuadratureSettings &settings);

// settings.tail_cutoff when positive, otherwise the first point in the
// doubling sequence mode, 2 mode, 4 mode, ... where f < 1e-14.
double tail_cutoff(const SystemConfig &config, const QuadratureSettings &settings);

// int_0^cutoff f(g) dg.
MetricResult normalization(const SystemConfig &config, const QuadratureSettings &settings);

// alpha * int_0^inf Q(beta g) f(g) dg, truncated at the cutoff; the bound
// alpha * Q(beta * cutoff) is added to the error estimate.
MetricResult avg_ser(const SystemConfig &config, const ModulationParams &mod, const QuadratureSettings &settings);

// K * int_0^inf log2(1 + g) f(g) dg, truncated at the cutoff. The truncation
// entry is the estimate K f(cutoff) cutoff log2(1 + cutoff).
MetricResult avg_sum_rate(const SystemConfig &config, const QuadratureSettings &settings);

} // namespace msinr
