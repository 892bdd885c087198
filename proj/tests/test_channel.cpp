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

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include <oabf/channel.hpp>
#include <oabf/channel_io.hpp>

#include "oracles.hpp"

using namespace oabf;

TEST(Channel, SameStreamIsBitIdentical)
{
    const auto a = sample_rayleigh(4, 7, 0);
    const auto b = sample_rayleigh(4, 7, 0);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sample_rayleigh(4, 7, 1));
    EXPECT_NE(a, sample_rayleigh(4, 8, 0));
}

TEST(Channel, ZeroLengthRejected)
{
    RngStream s(1, 0);
    EXPECT_THROW(sample_rayleigh(0, s), std::invalid_argument);
}

TEST(Channel, FromValues)
{
    const auto one = from_values({{1, 0}});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], cplx(1, 0));

    const auto two = from_values({{1, 0}, {0, 1}});
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0], cplx(1, 0));
    EXPECT_EQ(two[1], cplx(0, 1));

    EXPECT_THROW(from_values({{std::numeric_limits<double>::quiet_NaN(), 0}}), std::invalid_argument);
    EXPECT_THROW(from_values({{0, std::numeric_limits<double>::infinity()}}), std::invalid_argument);
    EXPECT_THROW(from_values(std::span<const std::pair<double, double>>{}), std::invalid_argument);
}

TEST(Channel, PowerAndAmplitudeMoments)
{
    // 10^6 draws; sigma(|h|^2) = 1 and sigma(|h|) = sqrt(1 - pi/4), so 0.01 is
    // well over 3 standard errors for both.
    const double rayleigh_mean = oabf::testing::rayleigh_mean_by_quadrature();
    ASSERT_NEAR(rayleigh_mean, std::sqrt(std::numbers::pi) / 2.0, 1e-10);

    RngStream s(2026, 0);
    const std::size_t m = 1000000;
    double p = 0, a = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const cplx h = s.complex_normal();
        p += std::norm(h);
        a += std::abs(h);
    }
    EXPECT_NEAR(p / m, 1.0, 0.01);
    EXPECT_NEAR(a / m, rayleigh_mean, 0.01);
}

TEST(Channel, ComponentDistribution)
{
    const std::size_t m = 200000;
    const auto ch = sample_rayleigh(m, 11, 3);
    double mr = 0, mi = 0;
    for (const auto &h : ch) {
        mr += h.real();
        mi += h.imag();
    }
    mr /= m;
    mi /= m;
    double vr = 0, vi = 0;
    for (const auto &h : ch) {
        vr += (h.real() - mr) * (h.real() - mr);
        vi += (h.imag() - mi) * (h.imag() - mi);
    }
    vr /= (m - 1);
    vi /= (m - 1);
    const double bound = 4.0 / std::sqrt(static_cast<double>(m));
    EXPECT_LT(std::abs(mr), bound);
    EXPECT_LT(std::abs(mi), bound);
    EXPECT_NEAR(vr, 0.5, 0.025);
    EXPECT_NEAR(vi, 0.5, 0.025);
}

TEST(Channel, AdjacentStreamsUncorrelated)
{
    const std::size_t m = 100000;
    std::vector<double> x(m), y(m);
    for (std::size_t k = 0; k < m; ++k) {
        x[k] = std::norm(sample_rayleigh(1, 5, k)[0]);
        y[k] = std::norm(sample_rayleigh(1, 5, k + 1)[0]);
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t k = 0; k < m; ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
        syy += (y[k] - my) * (y[k] - my);
    }
    EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 4.0 / std::sqrt(static_cast<double>(m)));
}

TEST(Channel, StreamSeedsAreDistinct)
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t master = 0; master < 8; ++master)
        for (std::uint64_t k = 0; k < 1000; ++k)
            seen.insert(mix_stream_seed(master, k));
    EXPECT_EQ(seen.size(), 8000u);
}

TEST(ChannelIo, ParsesTextFormat)
{
    std::istringstream in("1 0\n-1 0.5\n\n2.5e-1 -3\n");
    const auto ch = parse_channel(in);
    ASSERT_EQ(ch.size(), 3u);
    EXPECT_EQ(ch[1], cplx(-1, 0.5));
    EXPECT_EQ(ch[2], cplx(0.25, -3));
}

TEST(ChannelIo, ParsesJsonFormat)
{
    std::istringstream in(" [[1, 0], [0, 1], [-0.5, 2]]");
    const auto ch = parse_channel(in);
    ASSERT_EQ(ch.size(), 3u);
    EXPECT_EQ(ch[2], cplx(-0.5, 2));
}

TEST(ChannelIo, MalformedLineNamesLineNumber)
{
    const char *bad[] = {"1 0\n1  0\n", "1 0\n1,0\n", "1 0\nx 0\n", "1 0\n1 0 3\n", "1 0\n1\n", "1 0\nnan 0\n"};
    for (const char *text : bad) {
        std::istringstream in(text);
        try {
            parse_channel(in);
            FAIL() << "accepted: " << text;
        } catch (const channel_format_error &e) {
            EXPECT_EQ(e.line(), 2u) << text;
            EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
        }
    }
}

TEST(ChannelIo, RejectsEmptyAndBadJson)
{
    std::istringstream empty("\n\n");
    EXPECT_THROW(parse_channel(empty), channel_format_error);
    std::istringstream bad("[[1, 0], [2]]");
    EXPECT_THROW(parse_channel(bad), channel_format_error);
    std::istringstream broken("[[1, 0]");
    EXPECT_THROW(parse_channel(broken), channel_format_error);
}

TEST(ChannelIo, TextRoundTripIsExact)
{
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto ch = sample_rayleigh(1 + k, 99, k);
        std::stringstream ss;
        write_channel_text(ss, ch);
        EXPECT_EQ(parse_channel(ss), ch);
    }
}
