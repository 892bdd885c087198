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

#ifndef OABF_CHANNEL_HPP
#define OABF_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oabf {

using cplx = std::complex<double>;

/// A single flat-fading channel draw: one complex gain per transmit antenna.
/// Immutable once constructed; always holds at least one finite coefficient.
class ChannelRealization {
public:
    explicit ChannelRealization(std::vector<cplx> coefficients)
        : h_(std::move(coefficients))
    {
        if (h_.empty())
            throw std::invalid_argument("ChannelRealization: at least one coefficient is required.");
        for (std::size_t j = 0; j < h_.size(); ++j)
            if (!std::isfinite(h_[j].real()) || !std::isfinite(h_[j].imag()))
                throw std::invalid_argument("ChannelRealization: coefficient " + std::to_string(j) + " is not finite.");
    }

    std::size_t size() const noexcept { return h_.size(); }
    const cplx &operator[](std::size_t j) const noexcept { return h_[j]; }
    std::span<const cplx> coefficients() const noexcept { return h_; }
    auto begin() const noexcept { return h_.cbegin(); }
    auto end() const noexcept { return h_.cend(); }

    /// Element-wise product with a complex constant (used for equivariance checks).
    ChannelRealization scaled(cplx c) const
    {
        std::vector<cplx> out(h_);
        for (auto &x : out)
            x *= c;
        return ChannelRealization(std::move(out));
    }

    friend bool operator==(const ChannelRealization &, const ChannelRealization &) = default;

private:
    std::vector<cplx> h_;
};

/// Builds a realization from (re, im) pairs. Throws std::invalid_argument on
/// an empty list or any non-finite entry.
inline ChannelRealization from_values(std::span<const std::pair<double, double>> values)
{
    std::vector<cplx> h;
    h.reserve(values.size());
    for (const auto &[re, im] : values)
        h.emplace_back(re, im);
    return ChannelRealization(std::move(h));
}

inline ChannelRealization from_values(std::initializer_list<std::pair<double, double>> values)
{
    return from_values(std::span<const std::pair<double, double>>(values.begin(), values.size()));
}

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives the 64-bit seed of one substream. Every (master, index) pair maps
/// to its own seed without touching any other stream, so trials can run in
/// any order.
constexpr std::uint64_t mix_stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
{
    return splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_index));
}

/// Reproducible random source for one Monte Carlo trial.
///
/// Generator, version 1 (pinned; changing any step changes every published
/// table):
///   - engine: std::mt19937_64 seeded with mix_stream_seed(master, index)
///   - uniform: u = ((x >> 11) + 1) * 2^-53, so u lies in (0, 1]
///   - complex normal: Box-Muller on (u1, u2) with radius sqrt(-ln u1), giving
///     re and im as independent N(0, 1/2)
/// Each coefficient consumes exactly two engine outputs.
class RngStream {
public:
    static constexpr int generator_version = 1;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : master_(master_seed), index_(stream_index), engine_(mix_stream_seed(master_seed, stream_index))
    {
    }

    std::uint64_t master_seed() const noexcept { return master_; }
    std::uint64_t stream_index() const noexcept { return index_; }

    double uniform()
    {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// One CN(0,1) draw.
    cplx complex_normal()
    {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::uint64_t master_;
    std::uint64_t index_;
    std::mt19937_64 engine_;
};

/// n i.i.d. CN(0,1) coefficients drawn from the given stream.
inline ChannelRealization sample_rayleigh(std::size_t n, RngStream &stream)
{
    if (n == 0)
        throw std::invalid_argument("sample_rayleigh: n must be at least 1.");
    std::vector<cplx> h(n);
    for (auto &x : h)
        x = stream.complex_normal();
    return ChannelRealization(std::move(h));
}

inline ChannelRealization sample_rayleigh(std::size_t n, std::uint64_t master_seed, std::uint64_t stream_index)
{
    RngStream stream(master_seed, stream_index);
    return sample_rayleigh(n, stream);
}

} // namespace oabf

#endif
