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

namespace msinr {

// One downlink scenario: N base-station antennas, K single-antenna users,
// transmit-power parameter rho (rho^2 is the power), channel variance and
// noise variance.
struct SystemConfig
{
    int n_antennas = 16;
    int n_users = 8;
    double rho = 1.0;
    double sigma_h_sq = 1.0;
    double sigma_n_sq = 1.0;

    // Throws UsageError when any invariant is violated (N >= 1, K >= 2,
    // strictly positive finite rho and variances).
    void validate() const;

    double rho_sq() const { return rho * rho; }
    double snr_db() const;

    // Scale of the signal term: x = C_S * chi^2(2N), C_S = rho^2 / (2N).
    double signal_scale() const { return rho_sq() / (2.0 * n_antennas); }

    // Scale of the interference term: z ~ C_I * chi^2(2K - 2), C_I = 1 / (2N).
    double interference_scale() const { return 1.0 / (2.0 * n_antennas); }

    // sigma_n^2 = 1 and rho = sqrt(10^(snr_db / 10)).
    static SystemConfig from_snr_db(int n_antennas, int n_users, double snr_db, double sigma_h_sq = 1.0);

    bool operator==(const SystemConfig &) const = default;
};

} // namespace msinr
