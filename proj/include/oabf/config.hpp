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

#ifndef OABF_CONFIG_HPP
#define OABF_CONFIG_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "metrics.hpp"
#include "montecarlo.hpp"

namespace oabf {

enum class TableKind { sweep, outage };

inline const char *to_string(TableKind k) noexcept { return k == TableKind::sweep ? "sweep" : "outage"; }

/// One [section] of an experiment file: the Monte Carlo configuration plus
/// how to report it. The section name is the output file stem.
struct ExperimentSpec {
    std::string name;
    TableKind table = TableKind::sweep;
    ExperimentConfig config;
    std::vector<double> thresholds_db; // as written in the file, parallel to config.outage_thresholds
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = s.find(',', pos);
        out.emplace_back(trim(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view field, std::string_view text)
{
    T v{};
    const auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw config_error(std::string(field) + ": cannot parse '" + std::string(t) + "' as a number");
    if constexpr (std::is_floating_point_v<T>)
        if (!std::isfinite(v))
            throw config_error(std::string(field) + ": value must be finite");
    return v;
}

} // namespace detail

/// Parses an experiment file: INI-style sections of `key = value` lines,
/// full-line comments starting with ';' or '#'.
///
///   [fig4]
///   table      = sweep                     ; or outage
///   schemes    = OABF_S, PHASE_ALIGNED
///   mode       = separate                  ; or total
///   power      = 1                         ; P_o or P_t
///   noise      = 1                         ; sigma^2
///   n_values   = 8, 16, 32
///   trials     = 10000
///   seed       = 42
///   thresholds_db      = -10, 0            ; outage thresholds, dB
///   threshold_db_range = -45, 10, 0.5      ; start, stop, step (inclusive)
inline std::vector<ExperimentSpec> parse_experiments(std::istream &in)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw config_error(std::string("config syntax: ") + e.what());
    }

    static const std::set<std::string> known = {"table", "schemes", "mode", "power", "noise", "n_values",
                                                "trials", "seed", "thresholds_db", "threshold_db_range"};
    std::vector<ExperimentSpec> out;
    for (const auto &[section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw config_error(section + ": keys must appear inside a [section]");
        ExperimentSpec spec;
        spec.name = section;
        if (section.find_first_of("/\\") != std::string::npos || section.empty() || section[0] == '.')
            throw config_error(section + ": section name is not a valid file stem");
        const auto field = [&](const std::string &k) { return section + "." + k; };
        for (const auto &[key, v] : body)
            if (!known.contains(key))
                throw config_error(field(key) + ": unknown key");

        const auto get = [&](const std::string &k) -> std::optional<std::string> {
            if (auto v = body.get_optional<std::string>(k))
                return std::string(detail::trim(*v));
            return std::nullopt;
        };
        const auto require = [&](const std::string &k) {
            auto v = get(k);
            if (!v || v->empty())
                throw config_error(field(k) + ": required field is missing");
            return *v;
        };

        auto &cfg = spec.config;
        for (const auto &s : detail::split_list(require("schemes"))) {
            try {
                cfg.schemes.push_back(parse_scheme(s));
            } catch (const config_error &e) {
                throw config_error(field("schemes") + ": " + e.what());
            }
        }
        for (const auto &s : detail::split_list(require("n_values"))) {
            const auto n = detail::parse_number<std::size_t>(field("n_values"), s);
            if (n < 1)
                throw config_error(field("n_values") + ": antenna counts must be at least 1");
            cfg.n_values.push_back(n);
        }
        cfg.trials = detail::parse_number<std::size_t>(field("trials"), require("trials"));
        if (cfg.trials < 1)
            throw config_error(field("trials") + ": must be at least 1");
        cfg.master_seed = detail::parse_number<std::uint64_t>(field("seed"), require("seed"));

        const std::string mode = get("mode").value_or("separate");
        if (mode != "separate" && mode != "total")
            throw config_error(field("mode") + ": expected 'separate' or 'total', got '" + mode + "'");
        const double power = get("power") ? detail::parse_number<double>(field("power"), *get("power")) : 1.0;
        const double noise = get("noise") ? detail::parse_number<double>(field("noise"), *get("noise")) : 1.0;
        if (!(power > 0.0))
            throw config_error(field("power") + ": must be positive");
        if (!(noise > 0.0))
            throw config_error(field("noise") + ": must be positive");
        cfg.constraint = PowerConstraint::make(mode == "separate" ? PowerMode::separate : PowerMode::total, power, noise);

        if (auto v = get("thresholds_db"))
            for (const auto &s : detail::split_list(*v))
                spec.thresholds_db.push_back(detail::parse_number<double>(field("thresholds_db"), s));
        if (auto v = get("threshold_db_range")) {
            const auto parts = detail::split_list(*v);
            if (parts.size() != 3)
                throw config_error(field("threshold_db_range") + ": expected 'start, stop, step'");
            const double a = detail::parse_number<double>(field("threshold_db_range"), parts[0]);
            const double b = detail::parse_number<double>(field("threshold_db_range"), parts[1]);
            const double step = detail::parse_number<double>(field("threshold_db_range"), parts[2]);
            if (!(step > 0.0) || b < a)
                throw config_error(field("threshold_db_range") + ": need step > 0 and stop >= start");
            const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
            for (std::size_t i = 0; i < count; ++i)
                spec.thresholds_db.push_back(a + static_cast<double>(i) * step);
        }
        for (double db : spec.thresholds_db)
            cfg.outage_thresholds.push_back(db_to_linear(db));

        const std::string table = get("table").value_or(spec.thresholds_db.empty() ? "sweep" : "outage");
        if (table == "sweep")
            spec.table = TableKind::sweep;
        else if (table == "outage")
            spec.table = TableKind::outage;
        else
            throw config_error(field("table") + ": expected 'sweep' or 'outage', got '" + table + "'");
        if (spec.table == TableKind::outage && spec.thresholds_db.empty())
            throw config_error(field("thresholds_db") + ": an outage table needs thresholds_db or threshold_db_range");

        out.push_back(std::move(spec));
    }
    if (out.empty())
        throw config_error("config: no [experiment] sections found");
    return out;
}

inline std::vector<ExperimentSpec> read_experiments(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw config_error("cannot open config file: " + path);
    return parse_experiments(f);
}

} // namespace oabf

#endif
