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

#ifndef OABF_CHANNEL_IO_HPP
#define OABF_CHANNEL_IO_HPP

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "channel.hpp"

namespace oabf {

/// Malformed channel file. line() is 1-based, 0 when the problem is not tied
/// to a single line (empty input, bad JSON document).
class channel_format_error : public std::runtime_error {
public:
    channel_format_error(const std::string &what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline bool parse_double(std::string_view s, double &out)
{
    if (s.empty())
        return false;
    if (s.front() == '+')
        s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

} // namespace detail

/// Plain format: one coefficient per line, "re im" separated by one space.
/// Blank lines are ignored; a trailing '\r' is tolerated.
inline ChannelRealization parse_channel_text(std::istream &in)
{
    std::vector<cplx> h;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        const auto sp = line.find(' ');
        double re = 0, im = 0;
        if (sp == std::string::npos || line.find(' ', sp + 1) != std::string::npos ||
            !detail::parse_double(std::string_view(line).substr(0, sp), re) ||
            !detail::parse_double(std::string_view(line).substr(sp + 1), im))
            throw channel_format_error("line " + std::to_string(lineno) + ": expected \"<re> <im>\", got \"" + line + "\"", lineno);
        if (!std::isfinite(re) || !std::isfinite(im))
            throw channel_format_error("line " + std::to_string(lineno) + ": non-finite coefficient", lineno);
        h.emplace_back(re, im);
    }
    if (h.empty())
        throw channel_format_error("channel file contains no coefficients", 0);
    return ChannelRealization(std::move(h));
}

/// Structured format: a JSON array of [re, im] pairs.
inline ChannelRealization parse_channel_json(std::istream &in)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw channel_format_error(std::string("invalid JSON: ") + e.what(), 0);
    }
    if (!doc.is_array() || doc.empty())
        throw channel_format_error("expected a non-empty JSON array of [re, im] pairs", 0);
    std::vector<cplx> h;
    for (std::size_t j = 0; j < doc.size(); ++j) {
        const auto &e = doc[j];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw channel_format_error("entry " + std::to_string(j) + ": expected [re, im]", 0);
        h.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return ChannelRealization(std::move(h));
}

/// Dispatches on the first non-blank character: '[' selects JSON.
inline ChannelRealization parse_channel(std::istream &in)
{
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::istringstream ss(all);
    const auto first = all.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && all[first] == '[')
        return parse_channel_json(ss);
    return parse_channel_text(ss);
}

inline ChannelRealization read_channel_file(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open channel file: " + path);
    return parse_channel(f);
}

inline void write_channel_text(std::ostream &out, const ChannelRealization &ch)
{
    for (const auto &x : ch)
        out << detail::format_double(x.real()) << ' ' << detail::format_double(x.imag()) << '\n';
}

} // namespace oabf

#endif
