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

#include "mimo_sinr/mimo_sinr.h"

#include "analytic_pdf.hpp"
#include "channel_mc.hpp"
#include "empirical_stats.hpp"
#include "errors.hpp"
#include "special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>
#include <string>

struct msinr_channel_terms
{
    msinr::ChannelTermsSet set;
};

struct msinr_samples
{
    msinr::SinrSampleSet set;
};

struct msinr_curve
{
    msinr::DensityCurve curve;
};

namespace {

thread_local std::string last_error;

msinr_status fail(msinr_status code, const char *what)
{
    last_error = what;
    return code;
}

template <class F>
msinr_status guarded(F &&f)
{
    try
    {
        f();
        return MSINR_OK;
    }
    catch (const msinr::UsageError &e)
    {
        return fail(MSINR_ERR_USAGE, e.what());
    }
    catch (const msinr::ConvergenceError &e)
    {
        return fail(MSINR_ERR_CONVERGENCE, e.what());
    }
    catch (const msinr::IoError &e)
    {
        return fail(MSINR_ERR_IO, e.what());
    }
    catch (const msinr::DomainError &e)
    {
        return fail(MSINR_ERR_DOMAIN, e.what());
    }
    catch (const std::bad_alloc &)
    {
        return fail(MSINR_ERR_INTERNAL, "out of memory");
    }
    catch (const std::exception &e)
    {
        return fail(MSINR_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(MSINR_ERR_INTERNAL, "unknown error");
    }
}

template <class T>
const T &deref(const T *p, const char *name)
{
    if (!p)
        throw msinr::UsageError(std::string(name) + " must not be NULL");
    return *p;
}

template <class T>
T &deref_out(T *p, const char *name)
{
    if (!p)
        throw msinr::UsageError(std::string(name) + " must not be NULL");
    return *p;
}

std::string require_path(const char *path)
{
    if (!path || !*path)
        throw msinr::UsageError("path must be a nonempty string");
    return path;
}

msinr::SystemConfig to_core(const msinr_config *c)
{
    const auto &in = deref(c, "config");
    msinr::SystemConfig out;
    out.n_antennas = in.n_antennas;
    out.n_users = in.n_users;
    out.rho = in.rho;
    out.sigma_h_sq = in.sigma_h_sq;
    out.sigma_n_sq = in.sigma_n_sq;
    out.validate();
    return out;
}

msinr::QuadratureSettings to_core(const msinr_quadrature *q)
{
    msinr::QuadratureSettings out;
    if (q)
    {
        out.rel_tol = q->rel_tol;
        out.abs_tol = q->abs_tol;
        out.max_subdivisions = q->max_subdivisions;
        out.tail_cutoff = q->tail_cutoff;
    }
    out.validate();
    return out;
}

void to_c(const msinr::MetricResult &m, msinr_metric *out)
{
    auto &o = deref_out(out, "out");
    o.value = m.value;
    o.error_estimate = m.error_estimate;
    o.truncation_bound = m.truncation_bound;
    o.cutoff = m.cutoff;
}

} // namespace

extern "C" {

const char *msinr_version(void)
{
    return "0.1.0";
}

const char *msinr_last_error(void)
{
    return last_error.c_str();
}

void msinr_config_from_snr_db(int n_antennas, int n_users, double snr_db, double sigma_h_sq, msinr_config *out)
{
    if (!out)
        return;
    const auto c = msinr::SystemConfig::from_snr_db(n_antennas, n_users, snr_db, sigma_h_sq);
    *out = {c.n_antennas, c.n_users, c.rho, c.sigma_h_sq, c.sigma_n_sq};
}

msinr_status msinr_config_validate(const msinr_config *config)
{
    return guarded([&] { to_core(config); });
}

double msinr_config_snr_db(const msinr_config *config)
{
    if (!config)
        return std::numeric_limits<double>::quiet_NaN();
    return 10.0 * std::log10(config->rho * config->rho / config->sigma_n_sq);
}

void msinr_quadrature_defaults(msinr_quadrature *out)
{
    if (!out)
        return;
    const msinr::QuadratureSettings d;
    *out = {d.rel_tol, d.abs_tol, d.max_subdivisions, d.tail_cutoff};
}

void msinr_kde_defaults(msinr_kde_settings *out)
{
    if (!out)
        return;
    *out = {0.0, msinr::KdeSettings{}.grid_points};
}

msinr_status msinr_log_gamma(double a, double *out)
{
    return guarded([&] { deref_out(out, "out") = msinr::log_gamma(a); });
}

double msinr_q_function(double x)
{
    return msinr::q_function(x);
}

msinr_status msinr_log_density_x(double x, const msinr_config *config, double *out)
{
    return guarded([&] { deref_out(out, "out") = msinr::log_f_x(x, to_core(config)).log_value; });
}

msinr_status msinr_log_density_z(double z, const msinr_config *config, double *out)
{
    return guarded([&] { deref_out(out, "out") = msinr::log_f_z(z, to_core(config)).log_value; });
}

msinr_status msinr_log_density_t(double t, const msinr_config *config, double *out)
{
    return guarded([&] { deref_out(out, "out") = msinr::log_f_t(t, to_core(config)).log_value; });
}

msinr_status msinr_channel_terms_create(const msinr_config *config, uint64_t count, uint64_t seed,
                                        msinr_channel_terms **out)
{
    return guarded([&] {
        auto &o = deref_out(out, "out");
        o = nullptr;
        o = new msinr_channel_terms{msinr::sample_channel_terms(to_core(config), count, seed)};
    });
}

size_t msinr_channel_terms_count(const msinr_channel_terms *terms)
{
    return terms ? terms->set.count() : 0;
}

msinr_status msinr_channel_terms_components(const msinr_channel_terms *terms, const msinr_config *config,
                                            double *x_out, double *z_out)
{
    return guarded([&] {
        const auto &t = deref(terms, "terms");
        const auto cfg = to_core(config);
        if (cfg.n_antennas != t.set.n_antennas || cfg.n_users != t.set.n_users ||
            cfg.sigma_h_sq != t.set.sigma_h_sq)
            throw msinr::UsageError("config does not match the sampled channel shape");
        if (x_out)
        {
            const auto x = msinr::signal_samples(t.set, cfg);
            std::copy(x.begin(), x.end(), x_out);
        }
        if (z_out)
        {
            const auto z = msinr::interference_samples(t.set);
            std::copy(z.begin(), z.end(), z_out);
        }
    });
}

void msinr_channel_terms_free(msinr_channel_terms *terms)
{
    delete terms;
}

msinr_status msinr_samples_create(const msinr_config *config, uint64_t count, uint64_t seed, msinr_samples **out)
{
    return guarded([&] {
        auto &o = deref_out(out, "out");
        o = nullptr;
        o = new msinr_samples{msinr::sample_sinr_batch(to_core(config), count, seed)};
    });
}

msinr_status msinr_samples_from_terms(const msinr_channel_terms *terms, const msinr_config *config,
                                      msinr_samples **out)
{
    return guarded([&] {
        auto &o = deref_out(out, "out");
        o = nullptr;
        o = new msinr_samples{msinr::sinr_from_channel_terms(deref(terms, "terms").set, to_core(config))};
    });
}

size_t msinr_samples_count(const msinr_samples *samples)
{
    return samples ? samples->set.count() : 0;
}

const double *msinr_samples_data(const msinr_samples *samples)
{
    return samples ? samples->set.samples.data() : nullptr;
}

uint64_t msinr_samples_seed(const msinr_samples *samples)
{
    return samples ? samples->set.seed : 0;
}

msinr_status msinr_samples_quantile(const msinr_samples *samples, double p, double *out)
{
    return guarded([&] { deref_out(out, "out") = msinr::quantile(deref(samples, "samples").set.samples, p); });
}

msinr_status msinr_samples_moments(const msinr_samples *samples, msinr_moments *out)
{
    return guarded([&] {
        const auto m = msinr::moment_summary(deref(samples, "samples").set.samples);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        deref_out(out, "out") = {m.mean, m.variance, m.skewness.value_or(nan), m.excess_kurtosis.value_or(nan)};
    });
}

msinr_status msinr_samples_write_csv(const msinr_samples *samples, const char *path)
{
    return guarded([&] { msinr::write_samples_csv(deref(samples, "samples").set, require_path(path)); });
}

void msinr_samples_free(msinr_samples *samples)
{
    delete samples;
}

msinr_status msinr_density(const msinr_config *config, double gamma, const msinr_quadrature *quad, double *value,
                           double *abs_error)
{
    return guarded([&] {
        const auto d = msinr::f_gamma(gamma, to_core(config), to_core(quad));
        deref_out(value, "value") = d.value;
        if (abs_error)
            *abs_error = d.abs_error;
    });
}

msinr_status msinr_analytic_curve(const msinr_config *config, const msinr_grid_spec *grid,
                                  const msinr_quadrature *quad, msinr_curve **out)
{
    return guarded([&] {
        auto &o = deref_out(out, "out");
        o = nullptr;
        const auto &g = deref(grid, "grid");
        const msinr::GridSpec spec{g.gamma_min, g.gamma_max, g.points, g.log_spacing != 0};
        o = new msinr_curve{msinr::f_gamma_curve(to_core(config), spec, to_core(quad))};
    });
}

msinr_status msinr_normalization(const msinr_config *config, const msinr_quadrature *quad, msinr_metric *out)
{
    return guarded([&] { to_c(msinr::normalization(to_core(config), to_core(quad)), out); });
}

msinr_status msinr_avg_ser(const msinr_config *config, double alpha_tilde, double beta_tilde,
                           const msinr_quadrature *quad, msinr_metric *out)
{
    return guarded([&] {
        to_c(msinr::avg_ser(to_core(config), {alpha_tilde, beta_tilde}, to_core(quad)), out);
    });
}

msinr_status msinr_avg_sum_rate(const msinr_config *config, const msinr_quadrature *quad, msinr_metric *out)
{
    return guarded([&] { to_c(msinr::avg_sum_rate(to_core(config), to_core(quad)), out); });
}

msinr_status msinr_kde_curve(const msinr_samples *samples, const msinr_kde_settings *settings, msinr_curve **out)
{
    return guarded([&] {
        auto &o = deref_out(out, "out");
        o = nullptr;
        msinr::KdeSettings s;
        if (settings)
        {
            if (settings->bandwidth > 0.0)
                s.bandwidth = settings->bandwidth;
            s.grid_points = settings->grid_points;
        }
        o = new msinr_curve{msinr::kde(deref(samples, "samples").set, s)};
    });
}

msinr_status msinr_compare(const msinr_curve *a, const msinr_curve *b, msinr_distance *out)
{
    return guarded([&] {
        const auto d = msinr::compare(deref(a, "a").curve, deref(b, "b").curve);
        deref_out(out, "out") = {d.l1, d.sup, d.common_grid_points};
    });
}

size_t msinr_curve_size(const msinr_curve *curve)
{
    return curve ? curve->curve.grid.size() : 0;
}

const double *msinr_curve_grid(const msinr_curve *curve)
{
    return curve ? curve->curve.grid.data() : nullptr;
}

const double *msinr_curve_values(const msinr_curve *curve)
{
    return curve ? curve->curve.values.data() : nullptr;
}

msinr_curve_kind msinr_curve_get_kind(const msinr_curve *curve)
{
    return curve && curve->curve.kind == msinr::CurveKind::empirical ? MSINR_CURVE_EMPIRICAL
                                                                     : MSINR_CURVE_ANALYTIC;
}

double msinr_curve_max_error(const msinr_curve *curve)
{
    return curve ? curve->curve.max_abs_error : 0.0;
}

double msinr_curve_integral(const msinr_curve *curve)
{
    return curve ? curve->curve.trapezoid_integral() : 0.0;
}

msinr_status msinr_curve_write(const msinr_curve *curve, const char *path, msinr_format format)
{
    return guarded([&] {
        const auto fmt = format == MSINR_FORMAT_JSON ? msinr::CurveFormat::json : msinr::CurveFormat::csv;
        msinr::write_curve(deref(curve, "curve").curve, require_path(path), fmt);
    });
}

void msinr_curve_free(msinr_curve *curve)
{
    delete curve;
}

} // extern "C"
