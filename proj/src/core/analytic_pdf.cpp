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

#include "analytic_pdf.hpp"

#include "errors.hpp"
#include "parallel.hpp"
#include "special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace msinr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLogTailLevel = std::log(1e-14);

std::string describe_gamma(const char *what, double gamma)
{
    std::ostringstream os;
    os.precision(17);
    os << what << " did not converge at gamma=" << gamma;
    return os.str();
}

DensityValue finish(const LogIntegral &inner, double log_prefactor, double gamma, const char *what)
{
    DensityValue d;
    d.panels = inner.panels;
    d.log_value = log_prefactor + inner.log_value;
    d.value = std::exp(d.log_value);
    d.abs_error = d.value * inner.rel_error;
    if (!inner.converged)
        throw ConvergenceError(describe_gamma(what, gamma), d.value, d.abs_error, gamma);
    return d;
}

DensityValue zero_density()
{
    return {0.0, kNegInf, 0.0, 0};
}

// Outer (metric) integrals call f_gamma at every node, so they run at a
// looser relative tolerance than the inner integral they sit on.
QuadratureSettings outer_settings(const QuadratureSettings &s)
{
    QuadratureSettings o = s;
    o.rel_tol = s.rel_tol * 100.0;
    return o;
}

double log_f_gamma(double gamma, const SystemConfig &config, const QuadratureSettings &settings)
{
    return f_gamma(gamma, config, settings).log_value;
}

// Integral of exp(log_weight(g)) f(g) over (0, cutoff).
MetricResult weighted_integral(const SystemConfig &config, const QuadratureSettings &settings, double cutoff,
                               const std::function<double(double)> &log_weight)
{
    auto integrand = [&](double g) {
        const double w = log_weight(g);
        if (w == kNegInf)
            return kNegInf;
        return w + log_f_gamma(g, config, settings);
    };
    const LogIntegral r = integrate_exp_peaked(integrand, 0.0, cutoff, outer_settings(settings));
    MetricResult m;
    m.value = r.value();
    m.error_estimate = r.abs_error();
    m.cutoff = cutoff;
    if (!r.converged)
        throw ConvergenceError("outer SINR integral did not converge", m.value, m.error_estimate,
                               std::numeric_limits<double>::quiet_NaN());
    return m;
}

} // namespace

DensityValue f_gamma(double gamma, const SystemConfig &config, const QuadratureSettings &settings)
{
    if (std::isnan(gamma))
        throw DomainError("f_gamma: gamma is NaN");
    if (gamma <= 0.0 || std::isinf(gamma))
        return zero_density();
    config.validate();
    settings.validate();

    const double n = config.n_antennas;
    const int k = config.n_users;
    const double inv_gamma = 1.0 / gamma;
    const double c = n * config.sigma_n_sq / config.rho_sq();

    // ln C(g) without its exp(-N/g) factor, which is folded into the
    // integrand as exp(-N (1/g - v)) to avoid cancelling two large exponents.
    const double log_prefactor = n * std::log(config.sigma_n_sq) + (k + n - 1.0) * std::log(n) -
                                 n * std::log(config.rho_sq()) - log_gamma(n) - log_gamma(k - 1.0) -
                                 2.0 * std::log(gamma);

    auto integrand = [&](double v) {
        if (!(v > 0.0))
            return kNegInf;
        const double z = inv_gamma - v;
        if (!(z > 0.0))
            return k == 2 ? -c / v - (n + 1.0) * std::log(v) : kNegInf;
        const double power = k == 2 ? 0.0 : (k - 2.0) * std::log(z);
        return power - n * z - c / v - (n + 1.0) * std::log(v);
    };

    const LogIntegral inner = integrate_exp_peaked(integrand, 0.0, inv_gamma, settings, log_prefactor);
    return finish(inner, log_prefactor, gamma, "f_gamma inner integral");
}

DensityValue f_gamma_convolution(double gamma, const SystemConfig &config, const QuadratureSettings &settings)
{
    if (std::isnan(gamma))
        throw DomainError("f_gamma_convolution: gamma is NaN");
    if (gamma <= 0.0 || std::isinf(gamma))
        return zero_density();
    config.validate();
    settings.validate();

    const double w = 1.0 / gamma;
    const double log_prefactor = -2.0 * std::log(gamma);
    auto integrand = [&](double z) { return log_f_z(z, config).log_value + log_f_t(w - z, config).log_value; };
    const LogIntegral inner = integrate_exp_peaked(integrand, 0.0, w, settings, log_prefactor);
    return finish(inner, log_prefactor, gamma, "convolution integral");
}

DensityValue f_w(double w, const SystemConfig &config, const QuadratureSettings &settings)
{
    if (std::isnan(w))
        throw DomainError("f_w: w is NaN");
    if (w <= 0.0 || std::isinf(w))
        return zero_density();
    config.validate();
    settings.validate();

    auto integrand = [&](double z) { return log_f_z(z, config).log_value + log_f_t(w - z, config).log_value; };
    const LogIntegral inner = integrate_exp_peaked(integrand, 0.0, w, settings);
    return finish(inner, 0.0, 1.0 / w, "f_w integral");
}

std::vector<double> make_grid(const GridSpec &spec)
{
    if (!(spec.gamma_min > 0.0) || !(spec.gamma_max > spec.gamma_min) || !std::isfinite(spec.gamma_max))
        throw UsageError("grid requires 0 < gamma_min < gamma_max");
    if (spec.points < 2)
        throw UsageError("grid requires at least two points");

    std::vector<double> grid(static_cast<std::size_t>(spec.points));
    const double last = spec.points - 1.0;
    for (int i = 0; i < spec.points; ++i)
    {
        if (spec.log_spacing)
            grid[i] = spec.gamma_min * std::pow(spec.gamma_max / spec.gamma_min, i / last);
        else
            grid[i] = spec.gamma_min + (spec.gamma_max - spec.gamma_min) * (i / last);
    }
    grid.front() = spec.gamma_min;
    grid.back() = spec.gamma_max;
    return grid;
}

DensityCurve f_gamma_curve(const SystemConfig &config, const GridSpec &grid, const QuadratureSettings &settings)
{
    config.validate();
    settings.validate();

    DensityCurve curve;
    curve.kind = CurveKind::analytic;
    curve.config = config;
    curve.grid = make_grid(grid);
    curve.values.resize(curve.grid.size());
    std::vector<double> errors(curve.grid.size());

    parallel_for(curve.grid.size(), [&](std::size_t i) {
        try
        {
            const DensityValue d = f_gamma(curve.grid[i], config, settings);
            curve.values[i] = d.value;
            errors[i] = d.abs_error;
        }
        catch (const ConvergenceError &e)
        {
            std::ostringstream os;
            os.precision(17);
            os << "density curve: grid point " << i << " (gamma=" << curve.grid[i] << "): " << e.what();
            throw ConvergenceError(os.str(), e.partial_value(), e.error_estimate(), curve.grid[i]);
        }
    });
    curve.max_abs_error = *std::max_element(errors.begin(), errors.end());
    return curve;
}

void ModulationParams::validate() const
{
    if (!(alpha_tilde >= 0.0) || !std::isfinite(alpha_tilde))
        throw UsageError("alpha_tilde must be finite and nonnegative");
    if (!(beta_tilde > 0.0) || !std::isfinite(beta_tilde))
        throw UsageError("beta_tilde must be finite and positive");
}

double density_mode(const SystemConfig &config, const QuadratureSettings &settings)
{
    config.validate();
    const double n = config.n_antennas;
    // Rough centre: 1 / (E[t] + E[z]); E[t] is finite only for N > 1.
    const double mean_t = config.sigma_n_sq / config.rho_sq() * (n > 1.0 ? n / (n - 1.0) : 2.0);
    const double mean_z = (config.n_users - 1.0) / n;
    const double centre = 1.0 / (mean_t + mean_z);

    auto log_f = [&](double g) { return log_f_gamma(g, config, settings); };
    constexpr int kScan = 64;
    const double lo = centre / 50.0;
    const double hi = centre * 50.0;
    std::vector<double> xs(kScan), ls(kScan);
    std::size_t best = 0;
    for (int i = 0; i < kScan; ++i)
    {
        xs[i] = lo * std::pow(hi / lo, i / (kScan - 1.0));
        ls[i] = log_f(xs[i]);
        if (ls[i] > ls[best])
            best = static_cast<std::size_t>(i);
    }
    double a = xs[best > 0 ? best - 1 : 0];
    double b = xs[std::min<std::size_t>(best + 1, kScan - 1)];
    // Golden-section refinement on the bracketing scan interval.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = log_f(x1), f2 = log_f(x2);
    for (int it = 0; it < 60; ++it)
    {
        if (f1 < f2)
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = log_f(x2);
        }
        else
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = log_f(x1);
        }
    }
    const double refined = f1 >= f2 ? x1 : x2;
    return std::max(f1, f2) >= ls[best] ? refined : xs[best];
}

double tail_cutoff(const SystemConfig &config, const QuadratureSettings &settings)
{
    settings.validate();
    if (settings.tail_cutoff > 0.0)
        return settings.tail_cutoff;
    double cutoff = density_mode(config, settings);
    for (int it = 0; it < 200; ++it)
    {
        cutoff *= 2.0;
        if (log_f_gamma(cutoff, config, settings) < kLogTailLevel)
            return cutoff;
    }
    throw ConvergenceError("tail cutoff search did not reach the 1e-14 density level", 0.0, 0.0, cutoff);
}

MetricResult normalization(const SystemConfig &config, const QuadratureSettings &settings)
{
    const double cutoff = tail_cutoff(config, settings);
    return weighted_integral(config, settings, cutoff, [](double) { return 0.0; });
}

MetricResult avg_ser(const SystemConfig &config, const ModulationParams &mod, const QuadratureSettings &settings)
{
    mod.validate();
    config.validate();
    if (mod.alpha_tilde == 0.0)
        return {};

    const double cutoff = tail_cutoff(config, settings);
    const double log_alpha = std::log(mod.alpha_tilde);
    MetricResult m = weighted_integral(config, settings, cutoff, [&](double g) {
        const double q = q_function(mod.beta_tilde * g);
        return q > 0.0 ? log_alpha + std::log(q) : kNegInf;
    });
    m.truncation_bound = mod.alpha_tilde * q_function(mod.beta_tilde * cutoff);
    m.error_estimate += m.truncation_bound;
    return m;
}

MetricResult avg_sum_rate(const SystemConfig &config, const QuadratureSettings &settings)
{
    config.validate();
    const double cutoff = tail_cutoff(config, settings);
    const double users = config.n_users;
    MetricResult m = weighted_integral(config, settings, cutoff, [&](double g) {
        return std::log(users) + std::log(std::log1p(g) / std::numbers::ln2);
    });
    m.truncation_bound = users * f_gamma(cutoff, config, settings).value * cutoff * std::log2(1.0 + cutoff);
    m.error_estimate += m.truncation_bound;
    return m;
}

} // namespace msinr
