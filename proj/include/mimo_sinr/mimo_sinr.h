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

#ifndef MIMO_SINR_H
#define MIMO_SINR_H

/*
 * C interface to the mimo-sinr library: Monte Carlo sampling of the exact
 * downlink SINR under matched-filter beamforming, the analytic SINR
 * density, kernel density estimates and the derived link metrics.
 *
 * Conventions
 *  - Every fallible call returns an msinr_status. On failure a thread-local
 *    message is available from msinr_last_error() until the next failing
 *    call on the same thread.
 *  - Objects behind opaque handles are created by *_create / producer
 *    functions and must be released with the matching *_free function.
 *    Passing NULL to a *_free function is a no-op.
 *  - Handles are immutable after creation and may be shared between threads.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MSINR_BUILDING_LIBRARY)
#    define MSINR_API __declspec(dllexport)
#  else
#    define MSINR_API __declspec(dllimport)
#  endif
#else
#  define MSINR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum msinr_status
{
    MSINR_OK = 0,
    MSINR_ERR_USAGE = 2,
    MSINR_ERR_CONVERGENCE = 3,
    MSINR_ERR_IO = 4,
    MSINR_ERR_DOMAIN = 5,
    MSINR_ERR_INTERNAL = 6
} msinr_status;

typedef enum msinr_curve_kind
{
    MSINR_CURVE_ANALYTIC = 0,
    MSINR_CURVE_EMPIRICAL = 1
} msinr_curve_kind;

typedef enum msinr_format
{
    MSINR_FORMAT_CSV = 0,
    MSINR_FORMAT_JSON = 1
} msinr_format;

typedef struct msinr_config
{
    int n_antennas;    /* N >= 1 */
    int n_users;       /* K >= 2 */
    double rho;        /* rho^2 is the transmit-power parameter */
    double sigma_h_sq; /* per-component channel variance */
    double sigma_n_sq; /* noise variance */
} msinr_config;

typedef struct msinr_quadrature
{
    double rel_tol;       /* default 1e-8 */
    double abs_tol;       /* default 1e-12 */
    int max_subdivisions; /* default 2000 */
    double tail_cutoff;   /* <= 0: automatic */
} msinr_quadrature;

typedef struct msinr_kde_settings
{
    double bandwidth; /* <= 0: Silverman's rule */
    int grid_points;  /* default 512 */
} msinr_kde_settings;

typedef struct msinr_grid_spec
{
    double gamma_min;
    double gamma_max;
    int points;
    int log_spacing; /* nonzero for a log-uniform grid */
} msinr_grid_spec;

typedef struct msinr_distance
{
    double l1;
    double sup;
    int common_grid_points;
} msinr_distance;

typedef struct msinr_moments
{
    double mean;
    double variance;
    double skewness;        /* NaN when undefined (zero variance) */
    double excess_kurtosis; /* NaN when undefined (zero variance) */
} msinr_moments;

typedef struct msinr_metric
{
    double value;
    double error_estimate;
    double truncation_bound;
    double cutoff;
} msinr_metric;

typedef struct msinr_channel_terms msinr_channel_terms;
typedef struct msinr_samples msinr_samples;
typedef struct msinr_curve msinr_curve;

MSINR_API const char *msinr_version(void);
MSINR_API const char *msinr_last_error(void);

/* Configuration helpers. from_snr_db fixes sigma_n^2 = 1. */
MSINR_API void msinr_config_from_snr_db(int n_antennas, int n_users, double snr_db, double sigma_h_sq,
                                        msinr_config *out);
MSINR_API msinr_status msinr_config_validate(const msinr_config *config);
MSINR_API double msinr_config_snr_db(const msinr_config *config);
MSINR_API void msinr_quadrature_defaults(msinr_quadrature *out);
MSINR_API void msinr_kde_defaults(msinr_kde_settings *out);

/* Special functions. */
MSINR_API msinr_status msinr_log_gamma(double a, double *out);
MSINR_API double msinr_q_function(double x);
MSINR_API msinr_status msinr_log_density_x(double x, const msinr_config *config, double *out);
MSINR_API msinr_status msinr_log_density_z(double z, const msinr_config *config, double *out);
MSINR_API msinr_status msinr_log_density_t(double t, const msinr_config *config, double *out);

/* Monte Carlo. Channel terms depend on (N, K, sigma_h^2, count, seed) only,
 * so one set can be evaluated at several (rho, sigma_n^2) operating points. */
MSINR_API msinr_status msinr_channel_terms_create(const msinr_config *config, uint64_t count, uint64_t seed,
                                                  msinr_channel_terms **out);
MSINR_API size_t msinr_channel_terms_count(const msinr_channel_terms *terms);
/* Copies x (signal term under `config`) and z (normalized interference) into
 * caller buffers of msinr_channel_terms_count() entries; either may be NULL. */
MSINR_API msinr_status msinr_channel_terms_components(const msinr_channel_terms *terms, const msinr_config *config,
                                                      double *x_out, double *z_out);
MSINR_API void msinr_channel_terms_free(msinr_channel_terms *terms);

MSINR_API msinr_status msinr_samples_create(const msinr_config *config, uint64_t count, uint64_t seed,
                                            msinr_samples **out);
MSINR_API msinr_status msinr_samples_from_terms(const msinr_channel_terms *terms, const msinr_config *config,
                                                msinr_samples **out);
MSINR_API size_t msinr_samples_count(const msinr_samples *samples);
MSINR_API const double *msinr_samples_data(const msinr_samples *samples);
MSINR_API uint64_t msinr_samples_seed(const msinr_samples *samples);
MSINR_API msinr_status msinr_samples_quantile(const msinr_samples *samples, double p, double *out);
MSINR_API msinr_status msinr_samples_moments(const msinr_samples *samples, msinr_moments *out);
MSINR_API msinr_status msinr_samples_write_csv(const msinr_samples *samples, const char *path);
MSINR_API void msinr_samples_free(msinr_samples *samples);

/* Analytic density. */
MSINR_API msinr_status msinr_density(const msinr_config *config, double gamma, const msinr_quadrature *quad,
                                     double *value, double *abs_error);
MSINR_API msinr_status msinr_analytic_curve(const msinr_config *config, const msinr_grid_spec *grid,
                                            const msinr_quadrature *quad, msinr_curve **out);
MSINR_API msinr_status msinr_normalization(const msinr_config *config, const msinr_quadrature *quad,
                                           msinr_metric *out);
MSINR_API msinr_status msinr_avg_ser(const msinr_config *config, double alpha_tilde, double beta_tilde,
                                     const msinr_quadrature *quad, msinr_metric *out);
MSINR_API msinr_status msinr_avg_sum_rate(const msinr_config *config, const msinr_quadrature *quad,
                                          msinr_metric *out);

/* Empirical density and comparison. */
MSINR_API msinr_status msinr_kde_curve(const msinr_samples *samples, const msinr_kde_settings *settings,
                                       msinr_curve **out);
MSINR_API msinr_status msinr_compare(const msinr_curve *a, const msinr_curve *b, msinr_distance *out);

MSINR_API size_t msinr_curve_size(const msinr_curve *curve);
MSINR_API const double *msinr_curve_grid(const msinr_curve *curve);
MSINR_API const double *msinr_curve_values(const msinr_curve *curve);
MSINR_API msinr_curve_kind msinr_curve_get_kind(const msinr_curve *curve);
MSINR_API double msinr_curve_max_error(const msinr_curve *curve);
MSINR_API double msinr_curve_integral(const msinr_curve *curve);
MSINR_API msinr_status msinr_curve_write(const msinr_curve *curve, const char *path, msinr_format format);
MSINR_API void msinr_curve_free(msinr_curve *curve);

#ifdef __cplusplus
}
#endif

#endif /* MIMO_SINR_H */
