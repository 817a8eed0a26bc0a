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

#include "channel_mc.hpp"
#include "errors.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>

using namespace msinr;

namespace {

using cplx = std::complex<double>;

// Straight-line transcription of the exact SINR expression for user k:
// numerator (rho^2 / (N sigma_h^2)) h_k^T h_k^*, interference
// (rho^2 / (N sigma_h^2)) sum_{l != k} h_k^T (h_l^* / |h_l|) (h_l^T / |h_l|) h_k^*.
double reference_sinr(const ChannelRealization &real, const SystemConfig &c, int k)
{
    const int n = c.n_antennas;
    const double scale = c.rho * c.rho / (n * c.sigma_h_sq);
    auto hk = real.channel(k);
    cplx signal = 0.0;
    for (int i = 0; i < n; ++i)
        signal += hk[i] * std::conj(hk[i]);
    cplx interference = 0.0;
    for (int l = 0; l < c.n_users; ++l)
    {
        if (l == k)
            continue;
        auto hl = real.channel(l);
        double norm = 0.0;
        for (int i = 0; i < n; ++i)
            norm += std::abs(hl[i]) * std::abs(hl[i]);
        norm = std::sqrt(norm);
        cplx left = 0.0, right = 0.0;
        for (int i = 0; i < n; ++i)
        {
            left += hk[i] * std::conj(hl[i]) / norm;
            right += hl[i] / norm * std::conj(hk[i]);
        }
        interference += scale * left * right;
    }
    return (scale * signal).real() / (c.sigma_n_sq + interference.real());
}

double mean_of(const std::vector<double> &v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double variance_of(const std::vector<double> &v)
{
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return s / (v.size() - 1);
}

} // namespace

TEST_CASE("SystemConfig validation")
{
    SystemConfig c;
    CHECK_NOTHROW(c.validate());
    c.n_users = 1;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = SystemConfig{};
    c.n_antennas = 0;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = SystemConfig{};
    c.rho = 0.0;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = SystemConfig{};
    c.sigma_n_sq = -1.0;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = SystemConfig{};
    c.sigma_h_sq = std::nan("");
    CHECK_THROWS_AS(c.validate(), UsageError);
}

TEST_CASE("from_snr_db fixes unit noise power")
{
    const auto c = SystemConfig::from_snr_db(16, 8, 10.0);
    CHECK(c.sigma_n_sq == 1.0);
    CHECK(c.rho_sq() == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(c.snr_db() == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(c.signal_scale() == doctest::Approx(10.0 / 32.0));
    CHECK(c.interference_scale() == doctest::Approx(1.0 / 32.0));
}

TEST_CASE("sample_channel shape")
{
    auto c = SystemConfig::from_snr_db(4, 2, 0.0);
    auto rng = make_stream(1, 0);
    const auto real = sample_channel(c, rng);
    CHECK(real.n_users() == 2);
    CHECK(real.n_antennas() == 4);
    CHECK(real.channel(0).size() == 4);
    CHECK(real.channel(1).size() == 4);
}

TEST_CASE("channel gains are CN(0, sigma_h^2)")
{
    const auto c = SystemConfig::from_snr_db(1, 2, 0.0, 1.0);
    auto rng = make_stream(7, 0);
    constexpr int kDraws = 1000000;
    double sum_re = 0.0, sum_im = 0.0, sum_power = 0.0, sum_re2 = 0.0;
    for (int i = 0; i < kDraws; ++i)
    {
        const auto h = sample_channel(c, rng).channel(0)[0];
        sum_re += h.real();
        sum_im += h.imag();
        sum_re2 += h.real() * h.real();
        sum_power += std::norm(h);
    }
    CHECK(std::abs(sum_re / kDraws) < 0.01);
    CHECK(std::abs(sum_im / kDraws) < 0.01);
    CHECK(std::abs(sum_power / kDraws - 1.0) < 0.01);
    CHECK(std::abs(sum_re2 / kDraws - 0.5) < 0.005);
}

TEST_CASE("orthogonal interferer leaves the SNR")
{
    auto c = SystemConfig::from_snr_db(2, 2, 7.0);
    ChannelRealization real(2, 2);
    real.channel(0)[0] = {1.0, 0.0};
    real.channel(0)[1] = {0.0, 1.0};
    real.channel(1)[0] = {0.0, 1.0};
    real.channel(1)[1] = {1.0, 0.0};
    const double x = c.rho_sq() / (c.n_antennas * c.sigma_h_sq) * 2.0;
    CHECK(exact_sinr(real, c, 0) == doctest::Approx(x / c.sigma_n_sq).epsilon(1e-15));
}

TEST_CASE("collinear interferer contributes x to the denominator")
{
    auto c = SystemConfig::from_snr_db(3, 2, 4.0);
    ChannelRealization real(3, 2);
    const cplx h[3] = {{0.3, -1.2}, {0.7, 0.1}, {-0.4, 0.9}};
    for (int i = 0; i < 3; ++i)
        real.channel(0)[i] = real.channel(1)[i] = h[i];
    double norm2 = 0.0;
    for (auto v : h)
        norm2 += std::norm(v);
    const double x = c.rho_sq() / (c.n_antennas * c.sigma_h_sq) * norm2;
    CHECK(exact_sinr(real, c, 0) == doctest::Approx(x / (c.sigma_n_sq + x)).epsilon(1e-14));
}

TEST_CASE("exact_sinr matches a straight-line transcription")
{
    const auto c = SystemConfig::from_snr_db(16, 8, 10.0, 1.0);
    auto rng = make_stream(12345, 0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const auto real = sample_channel(c, rng);
        for (int k : {0, 3, 7})
        {
            const double ref = reference_sinr(real, c, k);
            CHECK(std::abs(exact_sinr(real, c, k) - ref) <= 1e-12 * ref);
        }
    }
}

TEST_CASE("exact_sinr rejects bad indices and mismatched shapes")
{
    const auto c = SystemConfig::from_snr_db(4, 3, 0.0);
    auto rng = make_stream(1, 1);
    const auto real = sample_channel(c, rng);
    CHECK_THROWS_AS(exact_sinr(real, c, 3), UsageError);
    CHECK_THROWS_AS(exact_sinr(real, c, -1), UsageError);
    auto other = c;
    other.n_antennas = 5;
    CHECK_THROWS_AS(exact_sinr(real, other, 0), UsageError);
}

TEST_CASE("sample_sinr_batch is deterministic and thread-count independent")
{
    const auto c = SystemConfig::from_snr_db(8, 4, 5.0);
    const auto a = sample_sinr_batch(c, 5000, 99);
    const auto b = sample_sinr_batch(c, 5000, 99);
    CHECK(a.samples == b.samples);
    CHECK(a.count() == 5000);
    CHECK(a.seed == 99);

    ::setenv("MIMO_SINR_THREADS", "3", 1);
    const auto threaded = sample_sinr_batch(c, 5000, 99);
    ::unsetenv("MIMO_SINR_THREADS");
    CHECK(threaded.samples == a.samples);

    const auto different = sample_sinr_batch(c, 5000, 100);
    CHECK(different.samples != a.samples);
}

TEST_CASE("single-sample batch")
{
    const auto set = sample_sinr_batch(SystemConfig::from_snr_db(4, 2, 0.0), 1, 3);
    REQUIRE(set.count() == 1);
    CHECK(set.samples[0] > 0.0);
    CHECK_THROWS_AS(sample_sinr_batch(SystemConfig::from_snr_db(4, 2, 0.0), 0, 3), UsageError);
}

TEST_CASE("sigma_h^2 cancels out of the SINR")
{
    const auto unit = sample_sinr_batch(SystemConfig::from_snr_db(8, 4, 3.0, 1.0), 2000, 5);
    const auto scaled = sample_sinr_batch(SystemConfig::from_snr_db(8, 4, 3.0, 4.0), 2000, 5);
    for (std::size_t i = 0; i < unit.count(); ++i)
        CHECK(scaled.samples[i] == doctest::Approx(unit.samples[i]).epsilon(1e-12));
}

TEST_CASE("signal term has mean rho^2")
{
    const auto c = SystemConfig::from_snr_db(16, 8, 10.0);
    const auto terms = sample_channel_terms(c, 1000000, 2024);
    const double mean = mean_of(signal_samples(terms, c));
    CHECK(std::abs(mean - c.rho_sq()) < 0.005 * c.rho_sq());
}

TEST_CASE("signal and interference terms: independence, mean and SINR bound")
{
    const auto c = SystemConfig::from_snr_db(16, 8, 10.0);
    const auto terms = sample_channel_terms(c, 100000, 77);
    const auto x = signal_samples(terms, c);
    const auto z = interference_samples(terms);
    const auto gamma = sinr_from_channel_terms(terms, c);

    const double mx = mean_of(x), mz = mean_of(z);
    double sxz = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        sxz += (x[i] - mx) * (z[i] - mz);
    const double corr = sxz / (x.size() - 1) / std::sqrt(variance_of(x) * variance_of(z));
    CHECK(std::abs(corr) < 0.01);

    const double expected_z = (c.n_users - 1.0) / c.n_antennas;
    CHECK(std::abs(mz - expected_z) < 0.02 * expected_z);

    for (std::size_t i = 0; i < x.size(); ++i)
    {
        CHECK(gamma.samples[i] > 0.0);
        CHECK(gamma.samples[i] < x[i] / c.sigma_n_sq);
        // gamma = x / (sigma_n^2 + x z) holds exactly for the sampled terms
        CHECK(gamma.samples[i] == doctest::Approx(x[i] / (c.sigma_n_sq + x[i] * z[i])).epsilon(1e-12));
    }
}

TEST_CASE("users are exchangeable")
{
    const auto c = SystemConfig::from_snr_db(8, 4, 5.0);
    auto rng = make_stream(31337, 0);
    constexpr int kDraws = 100000;
    std::vector<double> first, last;
    first.reserve(kDraws);
    last.reserve(kDraws);
    for (int i = 0; i < kDraws; ++i)
    {
        const auto real = sample_channel(c, rng);
        first.push_back(exact_sinr(real, c, 0));
        last.push_back(exact_sinr(real, c, c.n_users - 1));
    }
    const double se_mean = std::sqrt((variance_of(first) + variance_of(last)) / kDraws);
    CHECK(std::abs(mean_of(first) - mean_of(last)) < 3.0 * se_mean);

    // variance of the sample variance ~ (m4 - s^4) / n
    auto m4 = [](const std::vector<double> &v) {
        const double m = mean_of(v);
        double s = 0.0;
        for (double x : v)
            s += std::pow(x - m, 4);
        return s / v.size();
    };
    const double var_first = variance_of(first), var_last = variance_of(last);
    const double se_var =
        std::sqrt((m4(first) - var_first * var_first + m4(last) - var_last * var_last) / kDraws);
    CHECK(std::abs(var_first - var_last) < 3.0 * se_var);
}

TEST_CASE("sinr_from_channel_terms requires a matching channel shape")
{
    const auto c = SystemConfig::from_snr_db(8, 4, 5.0);
    const auto terms = sample_channel_terms(c, 10, 1);
    auto other = c;
    other.n_users = 5;
    CHECK_THROWS_AS(sinr_from_channel_terms(terms, other), UsageError);
    // changing only the operating point is allowed
    CHECK_NOTHROW(sinr_from_channel_terms(terms, SystemConfig::from_snr_db(8, 4, -3.0)));
}
