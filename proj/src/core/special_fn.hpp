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

#include <cmath>
#include <limits>

namespace msinr {

// Natural log of a nonnegative density. -inf encodes a density of zero.
struct LogDensity
{
    double log_value = -std::numeric_limits<double>::infinity();

    double value() const { return std::exp(log_value); }
    bool is_zero() const { return log_value == -std::numeric_limits<double>::infinity(); }
};

// ln Gamma(a) for a > 0 (Lanczos, g = 607/128). Throws DomainError for a <= 0.
double log_gamma(double a);

// Standard normal upper tail probability.
double q_function(double x);

// Signal term x = (rho^2 / (N sigma_h^2)) |h_k|^2, a scaled chi^2(2N):
//   f_x(x) = x^(N-1) exp(-x / (2 C_S)) / ((2 C_S)^N Gamma(N)).
LogDensity log_f_x(double x, const SystemConfig &config);

// Normalized interference z = sum_{l != k} |y_l|^2, modelled as a scaled chi^2(2K - 2):
//   f_z(z) = z^(K-2) exp(-z / (2 C_I)) / ((2 C_I)^(K-1) Gamma(K-1)).
// Throws DomainError when K < 2.
LogDensity log_f_z(double z, const SystemConfig &config);

// t = sigma_n^2 / x, the inverse-gamma image of f_x:
//   f_t(t) = sigma_n^(2N) t^-(N+1) exp(-sigma_n^2 / (2 C_S t)) / ((2 C_S)^N Gamma(N)).
LogDensity log_f_t(double t, const SystemConfig &config);

} // namespace msinr
