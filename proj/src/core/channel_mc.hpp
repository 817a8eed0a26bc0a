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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace msinr {

using Rng = std::mt19937_64;

// Independent generator for (seed, stream). Streams with different indices
// are decorrelated through SplitMix64 before seeding the engine.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

// K channel vectors of N complex gains, stored user-major.
class ChannelRealization
{
public:
    ChannelRealization(int n_antennas, int n_users);

    int n_antennas() const { return n_antennas_; }
    int n_users() const { return n_users_; }

    std::span<const std::complex<double>> channel(int user) const;
    std::span<std::complex<double>> channel(int user);

private:
    int n_antennas_;
    int n_users_;
    std::vector<std::complex<double>> gains_;
};

// Draws every gain as CN(0, sigma_h^2): real and imaginary parts are
// independent N(0, sigma_h^2 / 2). An all-zero vector is redrawn.
ChannelRealization sample_channel(const SystemConfig &config, Rng &rng);

// Per-realization terms of the exact SINR for one user:
//   gain    = h_k^T h_k^*                          (= |h_k|^2)
//   leakage = sum_{l != k} |h_k^T h_l^*|^2 / |h_l|^2
struct SinrTerms
{
    double gain = 0.0;
    double leakage = 0.0;
};

SinrTerms sinr_terms(const ChannelRealization &real, int user_index);

// gamma_k = a gain / (sigma_n^2 + a leakage), a = rho^2 / (N sigma_h^2).
double sinr_from_terms(const SinrTerms &terms, const SystemConfig &config);

// Exact SINR of user_index for one realization. Throws UsageError when the
// index is out of range or the realization does not match the config shape.
double exact_sinr(const ChannelRealization &real, const SystemConfig &config, int user_index);

// SINR terms of user 0 for `count` independent realizations. Realizations
// are drawn in fixed-size shards, shard s using make_stream(seed, s), so the
// result depends only on (N, K, sigma_h^2, count, seed) and not on the
// number of worker threads.
struct ChannelTermsSet
{
    int n_antennas = 0;
    int n_users = 0;
    double sigma_h_sq = 1.0;
    std::uint64_t seed = 0;
    std::vector<SinrTerms> terms;

    std::size_t count() const { return terms.size(); }
};

inline constexpr std::size_t kShardSize = 1024;

ChannelTermsSet sample_channel_terms(const SystemConfig &config, std::size_t count, std::uint64_t seed);

struct SinrSampleSet
{
    std::vector<double> samples;
    SystemConfig config;
    std::uint64_t seed = 0;

    std::size_t count() const { return samples.size(); }
};

// Evaluates the SINR of every realization in `terms` under `config`. The
// config must share N, K and sigma_h^2 with the sampled channels; rho and
// sigma_n^2 are free, so one channel set can serve several SNR points.
SinrSampleSet sinr_from_channel_terms(const ChannelTermsSet &terms, const SystemConfig &config);

// sample_channel_terms followed by sinr_from_channel_terms. count >= 1.
SinrSampleSet sample_sinr_batch(const SystemConfig &config, std::size_t count, std::uint64_t seed);

// Signal term x = a |h_0|^2 for each realization.
std::vector<double> signal_samples(const ChannelTermsSet &terms, const SystemConfig &config);

// Normalized interference z = sum_{l != 0} |h'_0^T h'_l^*|^2 = leakage / gain.
std::vector<double> interference_samples(const ChannelTermsSet &terms);

// One gamma per line, 17 significant digits.
void write_samples_csv(const SinrSampleSet &set, const std::string &path);

} // namespace msinr
