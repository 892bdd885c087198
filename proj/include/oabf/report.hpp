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

#ifndef OABF_REPORT_HPP
#define OABF_REPORT_HPP

#include <ostream>
#include <string>

#include "channel_io.hpp"
#include "config.hpp"
#include "montecarlo.hpp"

namespace oabf {

inline constexpr const char *sweep_csv_header =
    "scheme,n,trials,mean_snr,se_snr,mean_norm_snr,se_norm_snr,mean_rate,se_rate,mean_k";
inline constexpr const char *outage_csv_header = "scheme,n,threshold_db,outage,trials";

/// One row per (scheme, N). Numbers are printed in shortest round-trip form.
inline void write_sweep_csv(std::ostream &out, const MetricTable &table)
{
    using detail::format_double;
    out << sweep_csv_header << '\n';
    for (const auto &r : table.rows)
        out << to_string(r.scheme) << ',' << r.n << ',' << r.trials << ',' << format_double(r.mean_snr) << ','
            << format_double(r.se_snr) << ',' << format_double(r.mean_norm_snr) << ',' << format_double(r.se_norm_snr)
            << ',' << format_double(r.mean_rate) << ',' << format_double(r.se_rate) << ',' << format_double(r.mean_k)
            << '\n';
}

/// One row per (scheme, N, threshold). `thresholds_db` labels the thresholds
/// in config order; when empty they are converted from the linear values.
inline void write_outage_csv(std::ostream &out, const MetricTable &table, const std::vector<double> &thresholds_db = {})
{
    using detail::format_double;
    out << outage_csv_header << '\n';
    for (const auto &r : table.rows)
        for (std::size_t i = 0; i < r.outage.points.size(); ++i) {
            const auto &p = r.outage.points[i];
            const double db = i < thresholds_db.size() ? thresholds_db[i] : linear_to_db(p.threshold);
            out << to_string(r.scheme) << ',' << r.n << ',' << format_double(db) << ',' << format_double(p.probability)
                << ',' << p.trials << '\n';
        }
}

inline nlohmann::json config_to_json(const ExperimentSpec &spec)
{
    const auto &c = spec.config;
    nlohmann::json j;
    j["name"] = spec.name;
    j["table"] = to_string(spec.table);
    for (auto s : c.schemes)
        j["schemes"].push_back(to_string(s));
    j["mode"] = to_string(c.constraint.mode);
    j["power"] = c.constraint.power;
    j["noise"] = c.constraint.noise_variance;
    j["n_values"] = c.n_values;
    j["trials"] = c.trials;
    j["seed"] = c.master_seed;
    j["thresholds_db"] = spec.thresholds_db;
    return j;
}

} // namespace oabf

#endif
