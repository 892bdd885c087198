// SPDX-License-Identifier: Apache-2.0
//
// oabf - on-off analog beamforming library and link simulator
// Copyright (C) 2026 The oabf authors
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

#ifndef OABF_METRICS_HPP
#define OABF_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "selection.hpp"

namespace oabf {

class estimation_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Transmit power budget and receiver noise. `power` is watts per active
/// antenna (separate) or the total watts shared evenly by the active
/// antennas (total).
struct PowerConstraint {
    PowerMode mode = PowerMode::separate;
    double power = 1.0;
    double noise_variance = 1.0;

    static PowerConstraint separate(double per_antenna, double noise = 1.0) { return make(PowerMode::separate, per_antenna, noise); }
    static PowerConstraint total(double total_power, double noise = 1.0) { return make(PowerMode::total, total_power, noise); }

    static PowerConstraint make(PowerMode mode, double power, double noise)
    {
        if (!(power > 0.0) || !std::isfinite(power))
            throw std::invalid_argument("PowerConstraint: power must be positive and finite.");
        if (!(noise > 0.0) || !std::isfinite(noise))
            throw std::invalid_argument("PowerConstraint: noise variance must be positive and finite.");
        return {mode, power, noise};
    }
};

inline double snr_separate(const SelectionResult &sel, const PowerConstraint &pc)
{
    if (pc.mode != PowerMode::separate || sel.mode != PowerMode::separate)
        throw std::invalid_argument("snr_separate: selection and constraint must both be in separate mode.");
    return pc.power * std::norm(sel.selection.beam_sum) / pc.noise_variance;
}

inline double snr_total(const SelectionResult &sel, const PowerConstraint &pc)
{
    if (pc.mode != PowerMode::total || sel.mode != PowerMode::total)
        throw std::invalid_argument("snr_total: selection and constraint must both be in total mode.");
    return pc.power * std::norm(sel.selection.beam_sum) /
           (static_cast<double>(sel.selection.cardinality()) * pc.noise_variance);
}

/// Received SNR per unit of radiated power: |f|^2 / (sigma^2 K).
inline double normalized_snr(const SelectionResult &sel, double noise_variance)
{
    return std::norm(sel.selection.beam_sum) /
           (noise_variance * static_cast<double>(sel.selection.cardinality()));
}

/// Shannon rate log2(1 + snr) in bits/symbol.
inline double achievable_rate(double snr)
{
    if (!(snr >= 0.0))
        throw std::invalid_argument("achievable_rate: snr must be nonnegative.");
    return std::log2(1.0 + snr);
}

struct OutagePoint {
    double threshold = 0.0; // linear SNR
    double probability = 0.0;
    std::size_t trials = 0;
    std::size_t below = 0; // samples with SNR strictly below threshold
};

struct OutageCurve {
    std::vector<OutagePoint> points;
};

/// Fraction of samples strictly below `threshold`.
inline OutagePoint outage_probability(std::span<const double> samples, double threshold)
{
    if (samples.empty())
        throw std::invalid_argument("outage_probability: sample list is empty.");
    const auto below = static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(), [&](double s) { return s < threshold; }));
    return {threshold, static_cast<double>(below) / static_cast<double>(samples.size()), samples.size(), below};
}

inline OutageCurve outage_curve(std::span<const double> samples, std::span<const double> thresholds)
{
    if (samples.empty())
        throw std::invalid_argument("outage_curve: sample list is empty.");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    OutageCurve c;
    for (double t : thresholds) {
        const auto below = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
        c.points.push_back({t, static_cast<double>(below) / static_cast<double>(sorted.size()), sorted.size(), below});
    }
    return c;
}

/// Least-squares slope of log10(outage) against log10(threshold), i.e. the
/// diversity exponent with the threshold read as inverse transmit SNR. Only
/// points with outage in (0, 1) and inside [lo, hi] are used.
inline double diversity_order_estimate(const OutageCurve &curve, double lo = 0.0, double hi = 1.0)
{
    std::vector<double> x, y;
    for (const auto &p : curve.points) {
        if (p.probability <= 0.0 || p.probability >= 1.0 || p.probability < lo || p.probability > hi || !(p.threshold > 0.0))
            continue;
        x.push_back(std::log10(p.threshold));
        y.push_back(std::log10(p.probability));
    }
    if (x.size() < 2)
        throw estimation_error("diversity_order_estimate: need at least two usable points, have " + std::to_string(x.size()));
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw estimation_error("diversity_order_estimate: all thresholds coincide.");
    return sxy / sxx;
}

/// Threshold at which the curve crosses `target`, interpolated linearly in
/// log-log coordinates. Points must be sorted by increasing threshold.
inline double threshold_at_outage(const OutageCurve &curve, double target)
{
    const auto &p = curve.points;
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i - 1].probability < target && p[i].probability >= target) {
            if (p[i - 1].probability <= 0.0)
                throw estimation_error("threshold_at_outage: no samples below the bracketing threshold.");
            const double x0 = std::log10(p[i - 1].threshold), x1 = std::log10(p[i].threshold);
            const double y0 = std::log10(p[i - 1].probability), y1 = std::log10(p[i].probability);
            const double x = y1 == y0 ? x1 : x0 + (std::log10(target) - y0) * (x1 - x0) / (y1 - y0);
            return std::pow(10.0, x);
        }
    }
    throw estimation_error("threshold_at_outage: target outage not bracketed by the curve.");
}

/// Horizontal distance in dB between two outage curves at a target outage,
/// positive when `test` needs more SNR than `reference`.
inline double horizontal_gap_db(const OutageCurve &reference, const OutageCurve &test, double target)
{
    return 10.0 * std::log10(threshold_at_outage(reference, target) / threshold_at_outage(test, target));
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// E[(sum_j |h_j|)^2] for i.i.d. CN(0,1) gains: n + n(n-1) pi / 4.
inline double expected_optimal_received_power(std::size_t n)
{
    if (n < 1)
        throw std::invalid_argument("expected_optimal_received_power: n must be at least 1.");
    const double d = static_cast<double>(n);
    return d + d * (d - 1.0) * std::numbers::pi / 4.0;
}

/// E[max_j |h_j|^2] = H_n, the n-th harmonic number.
inline double antenna_selection_array_gain(std::size_t n)
{
    if (n < 1)
        throw std::invalid_argument("antenna_selection_array_gain: n must be at least 1.");
    double s = 0.0;
    for (std::size_t i = n; i >= 1; --i)
        s += 1.0 / static_cast<double>(i);
    return s;
}

/// Lower bound on the mean per-antenna-constrained SNR of the half-plane
/// selection (and hence of the optimal one).
inline double oabf_mean_snr_lower_bound(std::size_t n, double per_antenna_power, double noise_variance)
{
    return per_antenna_power / (std::numbers::pi * std::numbers::pi * noise_variance) * expected_optimal_received_power(n);
}

/// Constant upper bound on the mean rate loss vs phase-aligned beamforming.
inline double rate_gap_bound() { return 2.0 * std::log2(std::numbers::pi); }

/// Streaming mean / variance (Welford) with an exact pairwise merge, so that
/// block partials combined in a fixed order give a fixed result.
class RunningStat {
public:
    void add(double x)
    {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    void merge(const RunningStat &o)
    {
        if (o.n_ == 0)
            return;
        if (n_ == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
        const double d = o.mean_ - mean_;
        const double n = na + nb;
        mean_ += d * nb / n;
        m2_ += o.m2_ + d * d * na * nb / n;
        n_ += o.n_;
    }

    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double standard_error() const noexcept { return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

} // namespace oabf

#endif
