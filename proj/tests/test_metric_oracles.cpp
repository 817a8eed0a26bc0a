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

#include <doctest.h>

#include "analytic_pdf.hpp"
#include "empirical_stats.hpp"
#include "special_fn.hpp"

#include <algorithm>
#include <cmath>

using namespace msinr;

namespace {

constexpr std::size_t kDraws = 1000000;

// One set of channel draws for N=16, K=8, shared by every SNR below.
const ChannelTermsSet &reference_terms()
{
    static const ChannelTermsSet terms =
        sample_channel_terms(SystemConfig::from_snr_db(16, 8, 0.0), kDraws, 0x5eed);
    return terms;
}

double mc_ser(const SinrSampleSet &set, const ModulationParams &mod)
{
    double s = 0.0;
    for (double g : set.samples)
        s += q_function(mod.beta_tilde * g);
    return mod.alpha_tilde * s / set.count();
}

double mc_sum_rate(const SinrSampleSet &set)
{
    double s = 0.0;
    for (double g : set.samples)
        s += std::log2(1.0 + g);
    return set.config.n_users * s / set.count();
}

} // namespace

TEST_CASE("average SER matches the Monte Carlo expectation at 5 dB")
{
    const auto c = SystemConfig::from_snr_db(16, 8, 5.0);
    const ModulationParams mod{1.0, 2.0};
    const auto set = sinr_from_channel_terms(reference_terms(), c);
    const double mc = mc_ser(set, mod);
    const double analytic = avg_ser(c, mod, QuadratureSettings{}).value;
    INFO("analytic=", analytic, " monte carlo=", mc);
    CHECK(std::abs(analytic - mc) < 0.02 * mc);
}

TEST_CASE("average sum rate matches the Monte Carlo expectation at 10 dB")
{
    const auto c = SystemConfig::from_snr_db(16, 8, 10.0);
    const auto set = sinr_from_channel_terms(reference_terms(), c);
    const double mc = mc_sum_rate(set);
    const double analytic = avg_sum_rate(c, QuadratureSettings{}).value;
    INFO("analytic=", analytic, " monte carlo=", mc);
    CHECK(std::abs(analytic - mc) < 0.02 * mc);
}

TEST_CASE("per-user rate is stable when N and K double together")
{
    const auto small = SystemConfig::from_snr_db(16, 8, 10.0);
    const auto large = SystemConfig::from_snr_db(32, 16, 10.0);
    const QuadratureSettings s;

    const double analytic_small = avg_sum_rate(small, s).value / small.n_users;
    const double analytic_large = avg_sum_rate(large, s).value / large.n_users;
    CHECK(std::abs(analytic_large - analytic_small) < 0.1 * analytic_small);

    const double mc_small = mc_sum_rate(sinr_from_channel_terms(reference_terms(), small)) / small.n_users;
    const double mc_large = mc_sum_rate(sample_sinr_batch(large, kDraws, 0x5eed)) / large.n_users;
    CHECK(std::abs(mc_large - mc_small) < 0.1 * mc_small);
}

TEST_CASE("density mode and agreement with the simulated density at 10 dB")
{
    const auto c = SystemConfig::from_snr_db(16, 8, 10.0);
    const auto set = sinr_from_channel_terms(reference_terms(), c);
    const auto empirical = kde(set, KdeSettings{});
    const double h = silverman_bandwidth(set.samples);

    const double lo = quantile(set.samples, 0.001);
    const double hi = quantile(set.samples, 0.999);
    const auto analytic = f_gamma_curve(c, {lo, hi, 2000, false}, QuadratureSettings{});

    auto argmax = [](const DensityCurve &curve) {
        const auto it = std::max_element(curve.values.begin(), curve.values.end());
        return curve.grid[static_cast<std::size_t>(it - curve.values.begin())];
    };
    const double analytic_mode = argmax(analytic);
    const double empirical_mode = argmax(empirical);
    INFO("analytic mode=", analytic_mode, " empirical mode=", empirical_mode, " bandwidth=", h);
    CHECK(std::abs(analytic_mode - empirical_mode) < h);

    const auto d = compare(analytic, empirical);
    INFO("l1=", d.l1);
    CHECK(d.l1 < 0.05);
}

TEST_CASE("skewness shrinks with the array size")
{
    // 10^5 draws keep this check quick; the full-size comparison runs in the
    // acceptance suite.
    constexpr std::size_t draws = 100000;
    const auto small = moment_summary(sample_sinr_batch(SystemConfig::from_snr_db(16, 8, 5.0), draws, 1).samples);
    const auto large = moment_summary(sample_sinr_batch(SystemConfig::from_snr_db(128, 64, 5.0), draws, 1).samples);
    REQUIRE(small.skewness.has_value());
    REQUIRE(large.skewness.has_value());
    CHECK(std::abs(*large.skewness) < std::abs(*small.skewness));
}
