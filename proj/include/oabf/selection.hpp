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

#ifndef OABF_SELECTION_HPP
#define OABF_SELECTION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"

namespace oabf {

enum class PowerMode { separate, total };

inline const char *to_string(PowerMode m) noexcept
{
    return m == PowerMode::separate ? "separate" : "total";
}

/// Objectives closer than this (relative) are treated as equal when breaking ties.
inline constexpr double objective_tie_tolerance = 1e-12;
/// Sweep angles closer than this (radians) are merged into one event.
inline constexpr double angle_merge_tolerance = 1e-12;
/// Largest N accepted by the exhaustive oracles.
inline constexpr std::size_t brute_force_max_n = 20;

class capacity_error : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A set of switched-on antennas.
struct BeamSelection {
    std::vector<std::size_t> indices; // strictly increasing, 0-based
    cplx beam_sum{};                  // sum of the selected coefficients

    std::size_t cardinality() const noexcept { return indices.size(); }
};

struct SelectionResult {
    BeamSelection selection;
    double objective = 0.0; // |f|^2 (separate) or |f|^2 / K (total)
    PowerMode mode = PowerMode::separate;
};

inline double objective_of(cplx beam_sum, std::size_t k, PowerMode mode)
{
    const double p = std::norm(beam_sum);
    return mode == PowerMode::separate ? p : p / static_cast<double>(k);
}

/// Builds a result from an index set, summing coefficients in index order.
inline SelectionResult evaluate_subset(const ChannelRealization &ch, std::vector<std::size_t> indices, PowerMode mode)
{
    if (indices.empty())
        throw std::invalid_argument("evaluate_subset: selection must be nonempty.");
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end() || indices.back() >= ch.size())
        throw std::invalid_argument("evaluate_subset: indices must be distinct and smaller than N.");
    cplx f{};
    for (auto j : indices)
        f += ch[j];
    SelectionResult r;
    r.selection.indices = std::move(indices);
    r.selection.beam_sum = f;
    r.objective = objective_of(f, r.selection.cardinality(), mode);
    r.mode = mode;
    return r;
}

/// Re-scores a selection under another power constraint.
inline SelectionResult with_mode(SelectionResult r, PowerMode mode)
{
    r.mode = mode;
    r.objective = objective_of(r.selection.beam_sum, r.selection.cardinality(), mode);
    return r;
}

inline bool objectives_tie(double a, double b) noexcept
{
    return std::abs(a - b) <= objective_tie_tolerance * std::max(std::abs(a), std::abs(b));
}

namespace detail {

inline double wrap_angle(double a) noexcept
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a < 0)
        a += two_pi;
    if (a >= two_pi)
        a = 0.0;
    return a;
}

inline SelectionResult degenerate_result(const ChannelRealization &ch, PowerMode mode)
{
    return evaluate_subset(ch, {0}, mode);
}

inline bool all_zero(const ChannelRealization &ch)
{
    return std::all_of(ch.begin(), ch.end(), [](cplx x) { return x == cplx{}; });
}

// Collects every candidate whose objective is within tolerance of the best
// seen so far. Candidates are opaque tags; only near-ties are materialized
// into index lists, which keeps the sweeps free of per-step copies.
template <typename Tag>
class TieTracker {
public:
    void offer(double objective, std::size_t k, Tag tag)
    {
        if (!cands_.empty() && objective < best_ && !objectives_tie(objective, best_))
            return;
        if (cands_.empty() || objective > best_) {
            best_ = objective;
            std::erase_if(cands_, [&](const Entry &e) { return !objectives_tie(e.objective, best_); });
        }
        cands_.push_back({objective, k, tag});
    }

    bool empty() const noexcept { return cands_.empty(); }

    // Smallest cardinality, then lexicographically smallest sorted index list.
    template <typename Materialize>
    std::vector<std::size_t> resolve(Materialize &&materialize) const
    {
        std::size_t kmin = SIZE_MAX;
        for (const auto &e : cands_)
            if (objectives_tie(e.objective, best_))
                kmin = std::min(kmin, e.k);
        std::vector<std::size_t> best;
        for (const auto &e : cands_) {
            if (e.k != kmin || !objectives_tie(e.objective, best_))
                continue;
            auto idx = materialize(e.tag, e.k);
            std::sort(idx.begin(), idx.end());
            if (best.empty() || idx < best)
                best = std::move(idx);
        }
        return best;
    }

private:
    struct Entry {
        double objective;
        std::size_t k;
        Tag tag;
    };
    std::vector<Entry> cands_;
    double best_ = 0.0;
};

inline double projection(cplx h, double cos_dir, double sin_dir) noexcept
{
    return h.real() * cos_dir + h.imag() * sin_dir;
}

// Indices ordered by descending projection on `direction`, ties by index.
inline std::vector<std::size_t> projection_ranking(const ChannelRealization &ch, double direction)
{
    const double c = std::cos(direction), s = std::sin(direction);
    std::vector<double> p(ch.size());
    for (std::size_t j = 0; j < ch.size(); ++j)
        p[j] = projection(ch[j], c, s);
    std::vector<std::size_t> order(ch.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return p[a] != p[b] ? p[a] > p[b] : a < b;
    });
    return order;
}

// Sorts and merges angles in [0, 2pi) that lie within the merge tolerance,
// including across the 2pi wrap. Keeps the first angle of every cluster.
inline std::vector<double> merge_angles(std::vector<double> a)
{
    std::sort(a.begin(), a.end());
    std::vector<double> out;
    for (double x : a)
        if (out.empty() || x - out.back() > angle_merge_tolerance)
            out.push_back(x);
    while (out.size() > 1 && out.front() + 2.0 * std::numbers::pi - out.back() <= angle_merge_tolerance)
        out.pop_back();
    return out;
}

} // namespace detail

/// Single strongest antenna (smallest index on ties).
inline SelectionResult antenna_select(const ChannelRealization &ch)
{
    std::size_t m = 0;
    for (std::size_t j = 1; j < ch.size(); ++j)
        if (std::norm(ch[j]) > std::norm(ch[m]))
            m = j;
    return evaluate_subset(ch, {m}, PowerMode::separate);
}

/// Received power of equal-gain phase-aligned beamforming at unit per-antenna
/// power: (sum_j |h_j|)^2.
inline double phase_aligned_value(const ChannelRealization &ch)
{
    double a = 0.0;
    for (const auto &x : ch)
        a += std::abs(x);
    return a * a;
}

/// Half-plane rule around the strongest coefficient h_m: keeps every h_i with
/// Re(h_i conj(h_m)) >= 0.
inline SelectionResult oabf_b(const ChannelRealization &ch)
{
    const std::size_t m = antenna_select(ch).selection.indices.front();
    if (ch[m] == cplx{})
        return detail::degenerate_result(ch, PowerMode::separate);
    const cplx hm_conj = std::conj(ch[m]);
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < ch.size(); ++i)
        if (i == m || (ch[i] * hm_conj).real() >= 0.0)
            r.push_back(i);
    return evaluate_subset(ch, std::move(r), PowerMode::separate);
}

/// Optimal selection under the per-antenna power constraint.
///
/// Each nonzero h_j has positive projection on directions in the open arc
/// (theta_j - pi/2, theta_j + pi/2). The 2N arc endpoints split the circle
/// into sectors with a fixed member set; the optimal set is the member set of
/// the sector containing its own beam sum. One sorted sweep visits every
/// sector, updating the running sum as members enter and leave.
inline SelectionResult oabf_s(const ChannelRealization &ch)
{
    if (detail::all_zero(ch))
        return detail::degenerate_result(ch, PowerMode::separate);

    struct Event {
        double angle;
        std::size_t j;
        bool enter;
    };
    std::vector<Event> ev;
    ev.reserve(2 * ch.size());
    for (std::size_t j = 0; j < ch.size(); ++j) {
        if (ch[j] == cplx{})
            continue;
        const double th = std::arg(ch[j]);
        ev.push_back({detail::wrap_angle(th - std::numbers::pi / 2), j, true});
        ev.push_back({detail::wrap_angle(th + std::numbers::pi / 2), j, false});
    }
    std::sort(ev.begin(), ev.end(), [](const Event &a, const Event &b) { return a.angle < b.angle; });

    // Group boundaries: group g covers ev[start[g], start[g+1]).
    std::vector<std::size_t> start{0};
    for (std::size_t e = 1; e < ev.size(); ++e)
        if (ev[e].angle - ev[e - 1].angle > angle_merge_tolerance)
            start.push_back(e);
    std::size_t tail = ev.size(); // events in [tail, end) are folded into group 0
    if (start.size() > 1 && ev.front().angle + 2.0 * std::numbers::pi - ev.back().angle <= angle_merge_tolerance) {
        tail = start.back();
        start.pop_back();
    }
    const std::size_t groups = start.size();
    start.push_back(tail);

    std::vector<std::size_t> enter_group(ch.size(), SIZE_MAX), leave_group(ch.size(), SIZE_MAX);
    for (std::size_t g = 0; g < groups; ++g)
        for (std::size_t e = start[g]; e < start[g + 1]; ++e)
            (ev[e].enter ? enter_group : leave_group)[ev[e].j] = g;
    for (std::size_t e = tail; e < ev.size(); ++e)
        (ev[e].enter ? enter_group : leave_group)[ev[e].j] = 0;

    // Arc g runs from group g to group g+1.
    auto member = [&](std::size_t j, std::size_t arc) {
        if (enter_group[j] == SIZE_MAX)
            return false;
        const std::size_t span = (leave_group[j] + groups - enter_group[j]) % groups;
        return (arc + groups - enter_group[j]) % groups < span;
    };

    cplx f{};
    std::size_t k = 0;
    for (std::size_t j = 0; j < ch.size(); ++j)
        if (member(j, 0)) {
            f += ch[j];
            ++k;
        }

    detail::TieTracker<std::size_t> best;
    if (k > 0)
        best.offer(std::norm(f), k, 0);
    auto apply = [&](const Event &e) {
        if (e.enter) {
            f += ch[e.j];
            ++k;
        } else {
            f -= ch[e.j];
            --k;
        }
    };
    for (std::size_t g = 1; g < groups; ++g) {
        for (std::size_t e = start[g]; e < start[g + 1]; ++e)
            apply(ev[e]);
        if (k > 0)
            best.offer(std::norm(f), k, g);
    }

    auto indices = best.resolve([&](std::size_t arc, std::size_t) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < ch.size(); ++j)
            if (member(j, arc))
                idx.push_back(j);
        return idx;
    });
    return evaluate_subset(ch, std::move(indices), PowerMode::separate);
}

/// Directions at which the projection ranking of the coefficients can change:
/// theta_j +- pi/2 for every nonzero h_j and arg(h_i - h_j) +- pi/2 for every
/// pair with h_i != h_j. Sorted, in [0, 2pi), near-duplicates merged.
inline std::vector<double> crossing_angles(const ChannelRealization &ch)
{
    std::vector<double> a;
    const std::size_t n = ch.size();
    a.reserve(2 * n + n * (n - 1));
    auto push_pair = [&](cplx d) {
        const double th = std::arg(d);
        a.push_back(detail::wrap_angle(th + std::numbers::pi / 2));
        a.push_back(detail::wrap_angle(th - std::numbers::pi / 2));
    };
    for (std::size_t j = 0; j < n; ++j)
        if (ch[j] != cplx{})
            push_pair(ch[j]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (ch[i] != ch[j])
                push_pair(ch[i] - ch[j]);
    return detail::merge_angles(std::move(a));
}

/// The k indices with largest |h_j| cos(direction - theta_j), in ranking order
/// (ties by smaller index).
inline std::vector<std::size_t> topk_by_projection(const ChannelRealization &ch, double direction, std::size_t k)
{
    if (k < 1 || k > ch.size())
        throw std::invalid_argument("topk_by_projection: k must lie in [1, N], got " + std::to_string(k));
    auto order = detail::projection_ranking(ch, direction);
    order.resize(k);
    return order;
}

/// Optimal selection under the total power constraint, maximizing |f|^2 / K.
///
/// For a fixed K the best set is the top-K by projection on its own beam sum,
/// and that ranking is constant between consecutive crossing angles. Every
/// arc is therefore probed once at its midpoint and all K are scored from the
/// prefix sums of the ranking.
inline SelectionResult oabf_t(const ChannelRealization &ch)
{
    if (detail::all_zero(ch))
        return detail::degenerate_result(ch, PowerMode::total);

    const auto angles = crossing_angles(ch);
    const std::size_t arcs = angles.size();
    auto midpoint = [&](std::size_t i) {
        const double next = i + 1 < arcs ? angles[i + 1] : angles[0] + 2.0 * std::numbers::pi;
        return 0.5 * (angles[i] + next);
    };

    detail::TieTracker<std::size_t> best;
    for (std::size_t i = 0; i < arcs; ++i) {
        const auto order = detail::projection_ranking(ch, midpoint(i));
        cplx f{};
        for (std::size_t k = 1; k <= order.size(); ++k) {
            f += ch[order[k - 1]];
            best.offer(std::norm(f) / static_cast<double>(k), k, i);
        }
    }

    auto indices = best.resolve([&](std::size_t arc, std::size_t k) {
        auto order = detail::projection_ranking(ch, midpoint(arc));
        order.resize(k);
        return order;
    });
    return evaluate_subset(ch, std::move(indices), PowerMode::total);
}

namespace detail {

inline SelectionResult brute_force(const ChannelRealization &ch, PowerMode mode)
{
    const std::size_t n = ch.size();
    if (n > brute_force_max_n)
        throw capacity_error("brute force limited to N <= " + std::to_string(brute_force_max_n) + ", got N = " +
                             std::to_string(n));
    TieTracker<std::uint32_t> best;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        cplx f{};
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1U) {
                f += ch[j];
                ++k;
            }
        best.offer(objective_of(f, k, mode), k, mask);
    }
    auto indices = best.resolve([&](std::uint32_t mask, std::size_t) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1U)
                idx.push_back(j);
        return idx;
    });
    return evaluate_subset(ch, std::move(indices), mode);
}

} // namespace detail

/// Exhaustive maximum of |f|^2 over all 2^N - 1 subsets. N <= 20.
inline SelectionResult brute_force_separate(const ChannelRealization &ch)
{
    return detail::brute_force(ch, PowerMode::separate);
}

/// Exhaustive maximum of |f|^2 / K over all 2^N - 1 subsets. N <= 20.
inline SelectionResult brute_force_total(const ChannelRealization &ch)
{
    return detail::brute_force(ch, PowerMode::total);
}

} // namespace oabf

#endif
