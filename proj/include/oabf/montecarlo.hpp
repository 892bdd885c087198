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

#ifndef OABF_MONTECARLO_HPP
#define OABF_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "channel.hpp"
#include "metrics.hpp"
#include "selection.hpp"

namespace oabf {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Scheme { oabf_s, oabf_b, oabf_t, antenna_select, phase_aligned };

inline constexpr Scheme all_schemes[] = {Scheme::oabf_s, Scheme::oabf_b, Scheme::oabf_t, Scheme::antenna_select,
                                         Scheme::phase_aligned};

inline const char *to_string(Scheme s) noexcept
{
    switch (s) {
    case Scheme::oabf_s: return "OABF_S";
    case Scheme::oabf_b: return "OABF_B";
    case Scheme::oabf_t: return "OABF_T";
    case Scheme::antenna_select: return "ANTENNA_SELECT";
    case Scheme::phase_aligned: return "PHASE_ALIGNED";
    }
    return "?";
}

inline Scheme parse_scheme(std::string_view name)
{
    for (auto s : all_schemes)
        if (name == to_string(s))
            return s;
    throw config_error("unknown scheme '" + std::string(name) + "'");
}

struct ExperimentConfig {
    std::vector<Scheme> schemes;
    PowerConstraint constraint;
    std::vector<std::size_t> n_values;
    std::size_t trials = 10000;
    std::uint64_t master_seed = 1;
    std::vector<double> outage_thresholds; // linear SNR

    void validate() const
    {
        if (schemes.empty())
            throw config_error("schemes: at least one scheme is required");
        if (n_values.empty())
            throw config_error("n_values: at least one antenna count is required");
        for (auto n : n_values)
            if (n < 1)
                throw config_error("n_values: antenna counts must be at least 1");
        if (trials < 1)
            throw config_error("trials: must be at least 1");
        for (double t : outage_thresholds)
            if (!(t > 0.0) || !std::isfinite(t))
                throw config_error("outage_thresholds: thresholds must be positive and finite");
    }
};

/// Per-realization figures for one scheme.
struct TrialOutcome {
    double snr = 0.0;
    double normalized_snr = 0.0;
    double rate = 0.0;
    std::size_t active = 0; // antennas switched on
};

inline SelectionResult select_antennas(Scheme s, const ChannelRealization &ch)
{
    switch (s) {
    case Scheme::oabf_s: return oabf_s(ch);
    case Scheme::oabf_b: return oabf_b(ch);
    case Scheme::oabf_t: return oabf_t(ch);
    case Scheme::antenna_select: return antenna_select(ch);
    case Scheme::phase_aligned: break;
    }
    throw config_error(std::string("scheme ") + to_string(s) + " is not a subset selection");
}

/// Scores one scheme on one channel. Phase-aligned beamforming drives every
/// antenna with equal power and ideal phase shifters, so its received
/// amplitude is sum |h_j| over all N antennas.
inline TrialOutcome evaluate_scheme(Scheme s, const ChannelRealization &ch, const PowerConstraint &pc)
{
    TrialOutcome o;
    if (s == Scheme::phase_aligned) {
        const double a2 = phase_aligned_value(ch);
        const double n = static_cast<double>(ch.size());
        o.active = ch.size();
        o.normalized_snr = a2 / (pc.noise_variance * n);
        o.snr = pc.mode == PowerMode::separate ? pc.power * a2 / pc.noise_variance : pc.power * o.normalized_snr;
    } else {
        const auto sel = with_mode(select_antennas(s, ch), pc.mode);
        o.active = sel.selection.cardinality();
        o.snr = pc.mode == PowerMode::separate ? snr_separate(sel, pc) : snr_total(sel, pc);
        o.normalized_snr = normalized_snr(sel, pc.noise_variance);
    }
    o.rate = achievable_rate(o.snr);
    return o;
}

struct MetricRow {
    Scheme scheme = Scheme::oabf_s;
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double mean_snr = 0, se_snr = 0;
    double mean_norm_snr = 0, se_norm_snr = 0;
    double mean_rate = 0, se_rate = 0;
    double mean_k = 0;
    OutageCurve outage; // one point per configured threshold, in config order
};

struct MetricTable {
    PowerMode mode = PowerMode::separate;
    std::vector<MetricRow> rows; // ordered by n, then by scheme as configured

    const MetricRow &at(Scheme s, std::size_t n) const
    {
        for (const auto &r : rows)
            if (r.scheme == s && r.n == n)
                return r;
        throw std::out_of_range(std::string("no row for scheme ") + to_string(s) + " at N = " + std::to_string(n));
    }

    bool has(Scheme s) const
    {
        return std::any_of(rows.begin(), rows.end(), [&](const MetricRow &r) { return r.scheme == s; });
    }
};

/// Trials are processed in blocks of this size. Block boundaries do not
/// depend on the worker count and partials are merged in block order.
inline constexpr std::size_t trial_block_size = 1024;

namespace detail {

struct SchemeAccumulator {
    RunningStat snr, norm, rate;
    double active_sum = 0.0;
    std::vector<std::size_t> hist; // hist[p]: samples with exactly p sorted thresholds <= snr

    void merge(const SchemeAccumulator &o)
    {
        snr.merge(o.snr);
        norm.merge(o.norm);
        rate.merge(o.rate);
        active_sum += o.active_sum;
        if (hist.size() < o.hist.size())
            hist.resize(o.hist.size(), 0);
        for (std::size_t i = 0; i < o.hist.size(); ++i)
            hist[i] += o.hist[i];
    }
};

template <typename Fn>
void parallel_blocks(std::size_t blocks, unsigned threads, Fn &&fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
    if (threads <= 1) {
        for (std::size_t b = 0; b < blocks; ++b)
            fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t b = next++; b < blocks; b = next++)
                fn(b);
        });
}

} // namespace detail

/// Runs every (scheme, N) cell. Trial t of every cell uses stream index t, so
/// all schemes at one N see the same channels. threads = 0 uses all cores.
/// The result does not depend on `threads`.
inline MetricTable run_sweep(const ExperimentConfig &cfg, unsigned threads = 1)
{
    cfg.validate();

    std::vector<std::size_t> perm(cfg.outage_thresholds.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return cfg.outage_thresholds[a] < cfg.outage_thresholds[b]; });
    std::vector<double> sorted_t(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        sorted_t[i] = cfg.outage_thresholds[perm[i]];

    MetricTable table;
    table.mode = cfg.constraint.mode;
    const std::size_t ns = cfg.schemes.size();
    const std::size_t blocks = (cfg.trials + trial_block_size - 1) / trial_block_size;

    for (std::size_t n : cfg.n_values) {
        std::vector<std::vector<detail::SchemeAccumulator>> partial(blocks, std::vector<detail::SchemeAccumulator>(ns));
        detail::parallel_blocks(blocks, threads, [&](std::size_t b) {
            auto &acc = partial[b];
            for (auto &a : acc)
                a.hist.assign(sorted_t.size() + 1, 0);
            const std::size_t lo = b * trial_block_size, hi = std::min(cfg.trials, lo + trial_block_size);
            for (std::size_t t = lo; t < hi; ++t) {
                const auto ch = sample_rayleigh(n, cfg.master_seed, t);
                for (std::size_t s = 0; s < ns; ++s) {
                    const auto o = evaluate_scheme(cfg.schemes[s], ch, cfg.constraint);
                    acc[s].snr.add(o.snr);
                    acc[s].norm.add(o.normalized_snr);
                    acc[s].rate.add(o.rate);
                    acc[s].active_sum += static_cast<double>(o.active);
                    const auto pos = std::upper_bound(sorted_t.begin(), sorted_t.end(), o.snr) - sorted_t.begin();
                    ++acc[s].hist[static_cast<std::size_t>(pos)];
                }
            }
        });

        std::vector<detail::SchemeAccumulator> total(ns);
        for (const auto &blk : partial)
            for (std::size_t s = 0; s < ns; ++s)
                total[s].merge(blk[s]);

        for (std::size_t s = 0; s < ns; ++s) {
            const auto &a = total[s];
            MetricRow r;
            r.scheme = cfg.schemes[s];
            r.n = n;
            r.trials = cfg.trials;
            r.seed = cfg.master_seed;
            r.mean_snr = a.snr.mean();
            r.se_snr = a.snr.standard_error();
            r.mean_norm_snr = a.norm.mean();
            r.se_norm_snr = a.norm.standard_error();
            r.mean_rate = a.rate.mean();
            r.se_rate = a.rate.standard_error();
            r.mean_k = a.active_sum / static_cast<double>(cfg.trials);
            // samples below sorted threshold i are those whose position is <= i
            std::vector<std::size_t> below(sorted_t.size());
            std::size_t run = 0;
            for (std::size_t i = 0; i < sorted_t.size(); ++i) {
                run += a.hist.empty() ? 0 : a.hist[i];
                below[i] = run;
            }
            r.outage.points.resize(sorted_t.size());
            for (std::size_t i = 0; i < sorted_t.size(); ++i) {
                auto &p = r.outage.points[perm[i]];
                p.threshold = sorted_t[i];
                p.below = below[i];
                p.trials = cfg.trials;
                p.probability = static_cast<double>(below[i]) / static_cast<double>(cfg.trials);
            }
            table.rows.push_back(std::move(r));
        }
    }
    return table;
}

/// As run_sweep, but requires outage thresholds.
inline MetricTable run_outage(const ExperimentConfig &cfg, unsigned threads = 1)
{
    if (cfg.outage_thresholds.empty())
        throw config_error("outage_thresholds: at least one threshold is required for an outage run");
    return run_sweep(cfg, threads);
}

enum class Metric { snr, normalized_snr, rate };

struct GapPoint {
    std::size_t n = 0;
    double gap = 0.0;
    double standard_error = 0.0; // sqrt(se_a^2 + se_b^2)
};

/// mean(metric_a) - mean(metric_b) for every N present for both schemes.
inline std::vector<GapPoint> paired_gap(const MetricTable &table, Scheme a, Scheme b, Metric metric)
{
    if (!table.has(a))
        throw std::out_of_range(std::string("paired_gap: scheme ") + to_string(a) + " not in table");
    if (!table.has(b))
        throw std::out_of_range(std::string("paired_gap: scheme ") + to_string(b) + " not in table");
    auto pick = [&](const MetricRow &r) -> std::pair<double, double> {
        switch (metric) {
        case Metric::snr: return {r.mean_snr, r.se_snr};
        case Metric::normalized_snr: return {r.mean_norm_snr, r.se_norm_snr};
        case Metric::rate: return {r.mean_rate, r.se_rate};
        }
        return {0, 0};
    };
    std::vector<GapPoint> out;
    for (const auto &ra : table.rows) {
        if (ra.scheme != a)
            continue;
        const auto &rb = table.at(b, ra.n);
        const auto [ma, sa] = pick(ra);
        const auto [mb, sb] = pick(rb);
        out.push_back({ra.n, ma - mb, std::sqrt(sa * sa + sb * sb)});
    }
    return out;
}

} // namespace oabf

#endif
