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

#include "config.hpp"

#include "errors.hpp"

#include <cmath>
#include <string>

namespace msinr {

namespace {

void require_positive(double v, const char *name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw UsageError(std::string(name) + " must be a strictly positive finite number");
}

} // namespace

void SystemConfig::validate() const
{
    if (n_antennas < 1)
        throw UsageError("n_antennas must be at least 1");
    if (n_users < 2)
        throw UsageError("n_users must be at least 2 (the interference term needs K - 1 >= 1 users)");
    require_positive(rho, "rho");
    require_positive(sigma_h_sq, "sigma_h_sq");
    require_positive(sigma_n_sq, "sigma_n_sq");
    if (!std::isfinite(snr_db()))
        throw UsageError("rho^2 / sigma_n^2 must be finite and nonzero");
}

double SystemConfig::snr_db() const
{
    return 10.0 * std::log10(rho_sq() / sigma_n_sq);
}

SystemConfig SystemConfig::from_snr_db(int n_antennas, int n_users, double snr_db, double sigma_h_sq)
{
    SystemConfig c;
    c.n_antennas = n_antennas;
    c.n_users = n_users;
    c.rho = std::sqrt(std::pow(10.0, snr_db / 10.0));
    c.sigma_h_sq = sigma_h_sq;
    c.sigma_n_sq = 1.0;
    return c;
}

} // namespace msinr
