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

#include "special_fn.hpp"

#include "errors.hpp"

#include <array>
#include <numbers>

namespace msinr {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;

// Godfrey's coefficients for g = 607/128, n = 15.
constexpr std::array<double, 15> kLanczosCoeffs = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln Gamma(z + 1) for z >= -0.5.
double lanczos_log_gamma_p1(double z)
{
    double sum = kLanczosCoeffs[0];
    for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k)
        sum += kLanczosCoeffs[k] / (z + static_cast<double>(k));
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// Terms shared by f_x and f_t: N ln(2 C_S) + ln Gamma(N).
double signal_log_normalizer(const SystemConfig &config)
{
    const double n = config.n_antennas;
    return n * std::log(2.0 * config.signal_scale()) + log_gamma(n);
}

} // namespace

double log_gamma(double a)
{
    if (!(a > 0.0))
        throw DomainError("log_gamma requires a > 0");
    if (std::isinf(a))
        return a;
    // Exact zeros; the Lanczos sum leaves ~1e-16 residue here.
    if (a == 1.0 || a == 2.0)
        return 0.0;
    if (a < 0.5)
        return lanczos_log_gamma_p1(a) - std::log(a);
    return lanczos_log_gamma_p1(a - 1.0);
}

double q_function(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

LogDensity log_f_x(double x, const SystemConfig &config)
{
    if (!(x > 0.0))
        return {kNegInf};
    const double n = config.n_antennas;
    return {(n - 1.0) * std::log(x) - x / (2.0 * config.signal_scale()) - signal_log_normalizer(config)};
}

LogDensity log_f_z(double z, const SystemConfig &config)
{
    if (config.n_users < 2)
        throw DomainError("f_z needs at least two users");
    if (!(z > 0.0))
        return {kNegInf};
    const double dof_half = config.n_users - 1.0;
    const double scale2 = 2.0 * config.interference_scale();
    // K = 2: z^0 == 1, avoid 0 * log(z) surprises at extreme z.
    const double power = config.n_users == 2 ? 0.0 : (dof_half - 1.0) * std::log(z);
    return {power - z / scale2 - dof_half * std::log(scale2) - log_gamma(dof_half)};
}

LogDensity log_f_t(double t, const SystemConfig &config)
{
    if (!(t > 0.0))
        return {kNegInf};
    const double n = config.n_antennas;
    const double s2 = config.sigma_n_sq;
    return {n * std::log(s2) - (n + 1.0) * std::log(t) - s2 / (2.0 * config.signal_scale() * t) -
            signal_log_normalizer(config)};
}

} // namespace msinr
