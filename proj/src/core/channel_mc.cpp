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

#include "channel_mc.hpp"

#include "errors.hpp"
#include "parallel.hpp"

#include <boost/random/normal_distribution.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

namespace msinr {

namespace {

std::uint64_t splitmix64(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

void check_shape(const ChannelRealization &real, const SystemConfig &config)
{
    if (real.n_antennas() != config.n_antennas || real.n_users() != config.n_users)
        throw UsageError("channel realization does not match the configuration shape");
}

} // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t state = seed ^ splitmix64(stream);
    std::array<std::uint32_t, 8> words{};
    for (std::size_t i = 0; i < words.size(); i += 2)
    {
        const std::uint64_t v = splitmix64(state);
        words[i] = static_cast<std::uint32_t>(v);
        words[i + 1] = static_cast<std::uint32_t>(v >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

ChannelRealization::ChannelRealization(int n_antennas, int n_users)
    : n_antennas_(n_antennas), n_users_(n_users),
      gains_(static_cast<std::size_t>(n_antennas) * static_cast<std::size_t>(n_users))
{
}

std::span<const std::complex<double>> ChannelRealization::channel(int user) const
{
    return std::span(gains_).subspan(static_cast<std::size_t>(user) * n_antennas_, n_antennas_);
}

std::span<std::complex<double>> ChannelRealization::channel(int user)
{
    return std::span(gains_).subspan(static_cast<std::size_t>(user) * n_antennas_, n_antennas_);
}

namespace {

// Ziggurat normals from Boost: faster than std::normal_distribution and the
// same sequence on every standard library.
void fill_channel(ChannelRealization &real, double sigma_h_sq, Rng &rng)
{
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(sigma_h_sq / 2.0));
    for (int k = 0; k < real.n_users(); ++k)
    {
        auto h = real.channel(k);
        bool all_zero = true;
        do
        {
            for (auto &g : h)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                g = {re, im};
                all_zero = all_zero && re == 0.0 && im == 0.0;
            }
        } while (all_zero);
    }
}

} // namespace

ChannelRealization sample_channel(const SystemConfig &config, Rng &rng)
{
    config.validate();
    ChannelRealization real(config.n_antennas, config.n_users);
    fill_channel(real, config.sigma_h_sq, rng);
    return real;
}

SinrTerms sinr_terms(const ChannelRealization &real, int user_index)
{
    if (user_index < 0 || user_index >= real.n_users())
        throw UsageError("user index " + std::to_string(user_index) + " out of range");

    const auto hk = real.channel(user_index);
    SinrTerms terms;
    for (const auto &g : hk)
        terms.gain += std::norm(g);

    for (int l = 0; l < real.n_users(); ++l)
    {
        if (l == user_index)
            continue;
        const auto hl = real.channel(l);
        // h_k^T h_l^*, spelled out to keep the inner loop free of the
        // library's NaN-recovering complex multiply.
        double inner_re = 0.0, inner_im = 0.0, norm_l = 0.0;
        for (std::size_t i = 0; i < hk.size(); ++i)
        {
            const double ar = hk[i].real(), ai = hk[i].imag();
            const double br = hl[i].real(), bi = hl[i].imag();
            inner_re += ar * br + ai * bi;
            inner_im += ai * br - ar * bi;
            norm_l += br * br + bi * bi;
        }
        terms.leakage += (inner_re * inner_re + inner_im * inner_im) / norm_l;
    }
    return terms;
}

double sinr_from_terms(const SinrTerms &terms, const SystemConfig &config)
{
    const double a = config.rho_sq() / (config.n_antennas * config.sigma_h_sq);
    return a * terms.gain / (config.sigma_n_sq + a * terms.leakage);
}

double exact_sinr(const ChannelRealization &real, const SystemConfig &config, int user_index)
{
    check_shape(real, config);
    return sinr_from_terms(sinr_terms(real, user_index), config);
}

ChannelTermsSet sample_channel_terms(const SystemConfig &config, std::size_t count, std::uint64_t seed)
{
    config.validate();
    if (count < 1)
        throw UsageError("sample count must be at least 1");

    ChannelTermsSet set;
    set.n_antennas = config.n_antennas;
    set.n_users = config.n_users;
    set.sigma_h_sq = config.sigma_h_sq;
    set.seed = seed;
    set.terms.resize(count);

    const std::size_t shards = (count + kShardSize - 1) / kShardSize;
    parallel_for(shards, [&](std::size_t shard) {
        Rng rng = make_stream(seed, shard);
        ChannelRealization real(config.n_antennas, config.n_users);
        const std::size_t begin = shard * kShardSize;
        const std::size_t end = std::min(count, begin + kShardSize);
        for (std::size_t i = begin; i < end; ++i)
        {
            fill_channel(real, config.sigma_h_sq, rng);
            set.terms[i] = sinr_terms(real, 0);
        }
    });
    return set;
}

SinrSampleSet sinr_from_channel_terms(const ChannelTermsSet &terms, const SystemConfig &config)
{
    config.validate();
    if (terms.n_antennas != config.n_antennas || terms.n_users != config.n_users ||
        terms.sigma_h_sq != config.sigma_h_sq)
        throw UsageError("channel terms were sampled for a different (N, K, sigma_h^2)");

    SinrSampleSet set;
    set.config = config;
    set.seed = terms.seed;
    set.samples.reserve(terms.count());
    for (const auto &t : terms.terms)
        set.samples.push_back(sinr_from_terms(t, config));
    return set;
}

SinrSampleSet sample_sinr_batch(const SystemConfig &config, std::size_t count, std::uint64_t seed)
{
    return sinr_from_channel_terms(sample_channel_terms(config, count, seed), config);
}

std::vector<double> signal_samples(const ChannelTermsSet &terms, const SystemConfig &config)
{
    const double a = config.rho_sq() / (terms.n_antennas * terms.sigma_h_sq);
    std::vector<double> x;
    x.reserve(terms.count());
    for (const auto &t : terms.terms)
        x.push_back(a * t.gain);
    return x;
}

std::vector<double> interference_samples(const ChannelTermsSet &terms)
{
    std::vector<double> z;
    z.reserve(terms.count());
    for (const auto &t : terms.terms)
        z.push_back(t.leakage / t.gain);
    return z;
}

void write_samples_csv(const SinrSampleSet &set, const std::string &path)
{
    std::unique_ptr<std::FILE, int (*)(std::FILE *)> f(std::fopen(path.c_str(), "w"), &std::fclose);
    if (!f)
        throw IoError("cannot open " + path + " for writing");
    for (double g : set.samples)
        std::fprintf(f.get(), "%.17g\n", g);
    if (std::ferror(f.get()))
        throw IoError("write failed for " + path);
}

} // namespace msinr
