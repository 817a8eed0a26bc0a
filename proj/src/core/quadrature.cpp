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

#include "quadrature.hpp"

#include "errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace msinr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae; odd indices (1, 3, 5) and the centre are the 7-point
// Gauss nodes. Values from QUADPACK qk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel
{
    double a = 0.0;
    double b = 0.0;
    double scale = kNegInf; // log of the largest node value
    double integral = 0.0;  // in units of exp(scale)
    double error = 0.0;     // in units of exp(scale)

    double log_error() const { return error > 0.0 ? std::log(error) + scale : kNegInf; }
};

Panel gauss_kronrod_panel(const LogIntegrand &log_f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 15> logs{};
    logs[0] = log_f(centre);
    for (int j = 0; j < 7; ++j)
    {
        logs[1 + 2 * j] = log_f(centre - half * kXgk[j]);
        logs[2 + 2 * j] = log_f(centre + half * kXgk[j]);
    }

    Panel p{a, b};
    for (double l : logs)
    {
        if (std::isnan(l))
            throw DomainError("integrand evaluated to NaN");
        p.scale = std::max(p.scale, l);
    }
    if (p.scale == kNegInf)
        return p;
    if (std::isinf(p.scale))
        throw DomainError("integrand overflowed to +inf in log domain");

    std::array<double, 15> f{};
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::exp(logs[i] - p.scale);

    double resk = kWgk[7] * f[0];
    double resg = kWg[3] * f[0];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j)
    {
        const double pair = f[1 + 2 * j] + f[2 + 2 * j];
        resk += kWgk[j] * pair;
        resabs += kWgk[j] * (std::abs(f[1 + 2 * j]) + std::abs(f[2 + 2 * j]));
        if (j % 2 == 1)
            resg += kWg[j / 2] * pair;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(f[0] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(f[1 + 2 * j] - mean) + std::abs(f[2 + 2 * j] - mean));

    // QUADPACK error heuristic.
    double err = std::abs((resk - resg) * half);
    resasc *= std::abs(half);
    resabs *= std::abs(half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);

    p.integral = resk * half;
    p.error = err;
    return p;
}

struct Totals
{
    double reference = kNegInf;
    double integral = 0.0;
    double error = 0.0;
};

Totals sum_panels(const std::vector<Panel> &panels)
{
    Totals t;
    for (const auto &p : panels)
        t.reference = std::max(t.reference, p.scale);
    if (t.reference == kNegInf)
        return t;
    for (const auto &p : panels)
    {
        if (p.scale == kNegInf)
            continue;
        const double w = std::exp(p.scale - t.reference);
        t.integral += p.integral * w;
        t.error += p.error * w;
    }
    return t;
}

bool within_tolerance(const Totals &t, const QuadratureSettings &s, double log_prefactor)
{
    if (t.reference == kNegInf)
        return true;
    const double abs_bound = s.abs_tol * std::exp(-log_prefactor - t.reference);
    return t.error <= std::max(s.rel_tol * std::abs(t.integral), abs_bound);
}

LogIntegral to_result(const Totals &t, int panels, bool converged)
{
    LogIntegral r;
    r.panels = panels;
    r.converged = converged;
    if (t.reference == kNegInf || t.integral <= 0.0)
    {
        r.log_value = kNegInf;
        r.rel_error = 0.0;
        return r;
    }
    r.log_value = t.reference + std::log(t.integral);
    r.rel_error = t.error / t.integral;
    return r;
}

double golden_max(const LogIntegrand &log_f, double lo, double hi)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = log_f(x1);
    double f2 = log_f(x2);
    for (int it = 0; it < 80 && (hi - lo) > 4.0 * kEps * std::max(std::abs(lo), std::abs(hi)); ++it)
    {
        if (f1 < f2)
        {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = log_f(x2);
        }
        else
        {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = log_f(x1);
        }
    }
    return f1 >= f2 ? x1 : x2;
}

// Finds x in [below, above] with log_f(x) ~ level, given log_f(below) < level <= log_f(above)
// (or the reverse). Plain bisection.
double bisect_level(const LogIntegrand &log_f, double below, double above, double level)
{
    for (int it = 0; it < 100; ++it)
    {
        const double mid = 0.5 * (below + above);
        if (mid == below || mid == above)
            break;
        if (log_f(mid) < level)
            below = mid;
        else
            above = mid;
    }
    return 0.5 * (below + above);
}

} // namespace

void QuadratureSettings::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw UsageError("quadrature tolerances must be positive");
    if (max_subdivisions < 10)
        throw UsageError("max_subdivisions must be at least 10");
    if (std::isnan(tail_cutoff))
        throw UsageError("tail_cutoff must not be NaN");
}

double LogIntegral::value() const
{
    return std::exp(log_value);
}

LogIntegral integrate_exp(const LogIntegrand &log_f, double a, double b, std::span<const double> breakpoints,
                          const QuadratureSettings &settings, double log_prefactor)
{
    settings.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw UsageError("integration limits must be finite with a < b");

    std::vector<double> cuts{a};
    for (double x : breakpoints)
        if (x > a && x < b)
            cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Panel> panels;
    panels.reserve(static_cast<std::size_t>(settings.max_subdivisions) + cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        panels.push_back(gauss_kronrod_panel(log_f, cuts[i], cuts[i + 1]));

    // Max-heap of panel indices keyed by absolute (log) error.
    auto worse = [&](std::size_t i, std::size_t j) { return panels[i].log_error() < panels[j].log_error(); };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
    for (std::size_t i = 0; i < panels.size(); ++i)
        queue.push(i);

    Totals totals = sum_panels(panels);
    bool stuck = false;
    while (!within_tolerance(totals, settings, log_prefactor))
    {
        if (queue.empty())
        {
            stuck = true;
            break;
        }
        if (static_cast<int>(panels.size()) >= settings.max_subdivisions)
            break;

        const std::size_t worst = queue.top();
        queue.pop();
        const Panel parent = panels[worst];
        const double mid = 0.5 * (parent.a + parent.b);
        if (!(mid > parent.a && mid < parent.b))
            continue; // cannot be refined further; keep its contribution

        panels[worst] = gauss_kronrod_panel(log_f, parent.a, mid);
        panels.push_back(gauss_kronrod_panel(log_f, mid, parent.b));
        queue.push(worst);
        queue.push(panels.size() - 1);
        totals = sum_panels(panels);
    }

    const bool converged = !stuck && within_tolerance(totals, settings, log_prefactor);
    return to_result(totals, static_cast<int>(panels.size()), converged);
}

PeakLocation locate_peak(const LogIntegrand &log_f, double a, double b)
{
    if (!(a < b))
        throw UsageError("locate_peak requires a < b");

    constexpr int kUniform = 64;
    constexpr int kGeometric = 40;
    const double width = b - a;

    std::vector<double> xs;
    xs.reserve(kUniform + 2 * kGeometric);
    for (int i = 1; i < kUniform; ++i)
        xs.push_back(a + width * i / kUniform);
    for (int i = 0; i < kGeometric; ++i)
    {
        const double frac = std::pow(10.0, -14.0 + 13.0 * i / (kGeometric - 1));
        xs.push_back(a + width * frac);
        xs.push_back(b - width * frac);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    xs.erase(std::remove_if(xs.begin(), xs.end(), [&](double x) { return !(x > a && x < b); }), xs.end());

    std::vector<double> ls(xs.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        ls[i] = log_f(xs[i]);
        if (std::isnan(ls[i]))
            throw DomainError("integrand evaluated to NaN while locating its peak");
        if (ls[i] > ls[best])
            best = i;
    }

    PeakLocation peak;
    if (ls[best] == kNegInf)
    {
        // Nothing visible on the scan; fall back to the midpoint.
        peak.arg = 0.5 * (a + b);
        peak.log_max = log_f(peak.arg);
        peak.lower = a;
        peak.upper = b;
        return peak;
    }

    const double lo = best > 0 ? xs[best - 1] : a;
    const double hi = best + 1 < xs.size() ? xs[best + 1] : b;
    peak.arg = golden_max(log_f, lo, hi);
    peak.log_max = log_f(peak.arg);
    if (!(peak.log_max >= ls[best]))
    {
        peak.arg = xs[best];
        peak.log_max = ls[best];
    }

    const double level = peak.log_max - kPeakSpan;
    peak.lower = a;
    for (std::size_t i = xs.size(); i-- > 0;)
    {
        if (xs[i] < peak.arg && ls[i] < level)
        {
            const double above = (i + 1 < xs.size() && xs[i + 1] < peak.arg) ? xs[i + 1] : peak.arg;
            peak.lower = bisect_level(log_f, xs[i], above, level);
            break;
        }
    }
    peak.upper = b;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        if (xs[i] > peak.arg && ls[i] < level)
        {
            const double above = (i > 0 && xs[i - 1] > peak.arg) ? xs[i - 1] : peak.arg;
            peak.upper = bisect_level(log_f, xs[i], above, level);
            break;
        }
    }

    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        const bool local_max = (i == 0 || ls[i] >= ls[i - 1]) && (i + 1 == xs.size() || ls[i] >= ls[i + 1]);
        if (local_max && ls[i] > level && (xs[i] < peak.lower || xs[i] > peak.upper))
            peak.secondary.push_back(xs[i]);
    }
    return peak;
}

LogIntegral integrate_exp_peaked(const LogIntegrand &log_f, double a, double b, const QuadratureSettings &settings,
                                 double log_prefactor)
{
    const PeakLocation peak = locate_peak(log_f, a, b);
    std::vector<double> cuts = {peak.lower, 0.5 * (peak.lower + peak.arg), peak.arg, 0.5 * (peak.arg + peak.upper),
                                peak.upper};
    cuts.insert(cuts.end(), peak.secondary.begin(), peak.secondary.end());
    return integrate_exp(log_f, a, b, cuts, settings, log_prefactor);
}

} // namespace msinr
