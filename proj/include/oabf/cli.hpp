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

#ifndef OABF_CLI_HPP
#define OABF_CLI_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "channel.hpp"
#include "channel_io.hpp"
#include "config.hpp"
#include "metrics.hpp"
#include "montecarlo.hpp"
#include "report.hpp"
#include "selection.hpp"

namespace oabf {

inline constexpr const char *version = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_verify_failed = 2 };

namespace detail {

inline int write_tables(const std::vector<ExperimentSpec> &specs, const std::filesystem::path &out_dir, unsigned threads,
                        std::ostream &out, std::ostream &err)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        err << "error: cannot create output directory " << out_dir << ": " << ec.message() << '\n';
        return exit_usage;
    }
    const auto t0 = std::chrono::steady_clock::now();
    nlohmann::json manifest;
    manifest["tool"] = "oabf";
    manifest["version"] = version;
    manifest["generator_version"] = RngStream::generator_version;
    manifest["compiler"] = __VERSION__;
    manifest["threads"] = threads;
    manifest["experiments"] = nlohmann::json::array();
    for (const auto &spec : specs) {
        const auto path = out_dir / (spec.name + ".csv");
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << path << '\n';
            return exit_usage;
        }
        const auto c0 = std::chrono::steady_clock::now();
        if (spec.table == TableKind::sweep) {
            write_sweep_csv(f, run_sweep(spec.config, threads));
        } else {
            write_outage_csv(f, run_outage(spec.config, threads), spec.thresholds_db);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
        auto entry = config_to_json(spec);
        entry["output"] = path.filename().string();
        entry["wall_time_s"] = secs;
        manifest["experiments"].push_back(entry);
        out << "wrote " << path.string() << " (" << secs << " s)\n";
    }
    manifest["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ofstream m(out_dir / "manifest.json");
    m << manifest.dump(2) << '\n';
    return exit_ok;
}

} // namespace detail

struct SimulateOptions {
    std::string config_path;
    std::string out_dir;
    unsigned threads = 1;
};

/// Runs every experiment section of a config file and writes <section>.csv
/// plus manifest.json into the output directory.
inline int cmd_simulate(const SimulateOptions &opt, std::ostream &out, std::ostream &err)
{
    std::vector<ExperimentSpec> specs;
    try {
        specs = read_experiments(opt.config_path);
        for (const auto &s : specs)
            s.config.validate();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return detail::write_tables(specs, opt.out_dir, opt.threads, out, err);
}

struct SelectOptions {
    std::string input_path;
    PowerMode mode = PowerMode::separate;
    double power = 1.0;
    double noise = 1.0;
};

/// Prints the on/off mask (one character per antenna), the objective and the
/// received SNR for the given power and noise.
inline int cmd_select(const SelectOptions &opt, std::ostream &out, std::ostream &err)
{
    try {
        const auto pc = PowerConstraint::make(opt.mode, opt.power, opt.noise);
        const auto ch = read_channel_file(opt.input_path);
        const auto sel = opt.mode == PowerMode::separate ? oabf_s(ch) : oabf_t(ch);
        std::string mask(ch.size(), '0');
        for (auto j : sel.selection.indices)
            mask[j] = '1';
        const double snr = opt.mode == PowerMode::separate ? snr_separate(sel, pc) : snr_total(sel, pc);
        out << mask << '\n'
            << "objective " << detail::format_double(sel.objective) << '\n'
            << "snr " << detail::format_double(snr) << '\n';
        return exit_ok;
    } catch (const channel_format_error &e) {
        err << "error: " << opt.input_path << ": " << e.what() << '\n';
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_usage;
}

struct VerifyOptions {
    std::size_t n_max = 12;
    std::size_t instances = 1000;
    std::uint64_t seed = 1;
};

/// Algorithms under test. Tests swap these to check that the harness itself
/// catches a wrong answer.
struct VerifyHooks {
    std::function<SelectionResult(const ChannelRealization &)> separate = [](const ChannelRealization &c) { return oabf_s(c); };
    std::function<SelectionResult(const ChannelRealization &)> total = [](const ChannelRealization &c) { return oabf_t(c); };
};

inline constexpr double verify_tolerance = 1e-9;

/// Checks both sweeps against exhaustive search for N = 2..n_max.
inline int cmd_verify(const VerifyOptions &opt, std::ostream &out, std::ostream &err, const VerifyHooks &hooks = {})
{
    if (opt.n_max > brute_force_max_n) {
        err << "error: --n-max " << opt.n_max << " exceeds the exhaustive search capacity (N <= " << brute_force_max_n
            << ")\n";
        return exit_usage;
    }
    if (opt.n_max < 2 || opt.instances < 1) {
        err << "error: need --n-max >= 2 and --instances >= 1\n";
        return exit_usage;
    }
    const auto agree = [](double a, double b) { return std::abs(a - b) <= verify_tolerance * std::max(std::abs(a), std::abs(b)); };
    bool ok = true;
    for (std::size_t n = 2; n <= opt.n_max; ++n) {
        std::size_t pass_s = 0, pass_t = 0;
        bool reported_s = false, reported_t = false;
        for (std::size_t i = 0; i < opt.instances; ++i) {
            const auto ch = sample_rayleigh(n, opt.seed, (static_cast<std::uint64_t>(n) << 32) + i);
            const auto report = [&](const char *mode, double got, double want, bool &reported) {
                if (reported)
                    return;
                reported = true;
                err << "mismatch (" << mode << ") at N=" << n << " instance " << i << ": algorithm "
                    << detail::format_double(got) << " vs exhaustive " << detail::format_double(want) << '\n';
                write_channel_text(err, ch);
            };
            const double s = hooks.separate(ch).objective, bs = brute_force_separate(ch).objective;
            if (agree(s, bs))
                ++pass_s;
            else
                report("separate", s, bs, reported_s);
            const double t = hooks.total(ch).objective, bt = brute_force_total(ch).objective;
            if (agree(t, bt))
                ++pass_t;
            else
                report("total", t, bt, reported_t);
        }
        out << "N=" << n << " separate " << pass_s << "/" << opt.instances << " total " << pass_t << "/"
            << opt.instances << '\n';
        ok = ok && pass_s == opt.instances && pass_t == opt.instances;
    }
    out << (ok ? "verify: all instances agree\n" : "verify: FAILED\n");
    return ok ? exit_ok : exit_verify_failed;
}

struct FiguresOptions {
    std::string out_dir;
    std::optional<std::size_t> trials; // overrides every canned trial count
    std::uint64_t seed = 2017;
    unsigned threads = 0;
};

/// Canned experiments behind fig4.csv ... fig8.csv.
inline std::vector<ExperimentSpec> figure_experiments(std::optional<std::size_t> trials, std::uint64_t seed)
{
    const std::vector<std::size_t> n_grid{1, 2, 4, 8, 16, 32, 64};
    const std::vector<std::size_t> n_outage{1, 2, 3};
    const std::size_t mean_trials = trials.value_or(10000), tail_trials = trials.value_or(1000000);
    std::vector<double> db;
    for (int i = 0; i <= 110; ++i)
        db.push_back(-45.0 + 0.5 * i);

    auto make = [&](std::string name, TableKind kind, PowerMode mode, std::vector<Scheme> schemes,
                    std::vector<std::size_t> ns) {
        ExperimentSpec s;
        s.name = std::move(name);
        s.table = kind;
        s.config.schemes = std::move(schemes);
        s.config.constraint = PowerConstraint::make(mode, 1.0, 1.0);
        s.config.n_values = std::move(ns);
        s.config.master_seed = seed;
        s.config.trials = kind == TableKind::sweep ? mean_trials : tail_trials;
        if (kind == TableKind::outage) {
            s.thresholds_db = db;
            for (double d : db)
                s.config.outage_thresholds.push_back(db_to_linear(d));
        }
        return s;
    };
    using enum Scheme;
    const std::vector<Scheme> separate_schemes{phase_aligned, oabf_s, oabf_b, antenna_select};
    return {
        make("fig4", TableKind::sweep, PowerMode::separate, separate_schemes, n_grid),
        make("fig5", TableKind::sweep, PowerMode::separate, separate_schemes, n_grid),
        make("fig6", TableKind::outage, PowerMode::separate, {phase_aligned, oabf_s, antenna_select}, n_outage),
        make("fig7", TableKind::sweep, PowerMode::total, {phase_aligned, oabf_t, oabf_s, antenna_select}, n_grid),
        make("fig8", TableKind::outage, PowerMode::total, {phase_aligned, oabf_t}, n_outage),
    };
}

inline int cmd_figures(const FiguresOptions &opt, std::ostream &out, std::ostream &err)
{
    if (opt.trials && *opt.trials < 1) {
        err << "error: --trials must be at least 1\n";
        return exit_usage;
    }
    return detail::write_tables(figure_experiments(opt.trials, opt.seed), opt.out_dir, opt.threads, out, err);
}

/// Full command-line entry point; returns the process exit code.
inline int run_cli(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"On-off analog beamforming: antenna selection and Monte Carlo link simulation", "oabf"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    SimulateOptions sim;
    auto *simulate = app.add_subcommand("simulate", "Run the experiments of a config file, write CSV tables");
    simulate->add_option("--config", sim.config_path, "Experiment file")->required();
    simulate->add_option("--out", sim.out_dir, "Output directory")->required();
    simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");

    SelectOptions sel;
    std::string mode = "separate";
    auto *select = app.add_subcommand("select", "Choose the antennas to switch on for one channel vector");
    select->add_option("--input", sel.input_path, "Channel file: 're im' lines or a JSON array of [re, im]")->required();
    select->add_option("--mode", mode, "Power constraint")->check(CLI::IsMember({"separate", "total"}));
    select->add_option("--power", sel.power, "P_o (separate) or P_t (total)");
    select->add_option("--noise", sel.noise, "Noise variance");

    VerifyOptions ver;
    auto *verify = app.add_subcommand("verify", "Compare the sweeps with exhaustive search on random channels");
    verify->add_option("--n-max", ver.n_max, "Largest antenna count")->required();
    verify->add_option("--instances", ver.instances, "Random channels per antenna count")->required();
    verify->add_option("--seed", ver.seed, "Master seed")->required();

    FiguresOptions fig;
    auto *figures = app.add_subcommand("figures", "Write fig4.csv ... fig8.csv from the canned experiments");
    figures->add_option("--out", fig.out_dir, "Output directory")->required();
    figures->add_option("--trials", fig.trials, "Trials per (scheme, N), overriding the defaults");
    figures->add_option("--seed", fig.seed, "Master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (*simulate)
        return cmd_simulate(sim, out, err);
    if (*select) {
        sel.mode = mode == "total" ? PowerMode::total : PowerMode::separate;
        return cmd_select(sel, out, err);
    }
    if (*verify)
        return cmd_verify(ver, out, err);
    return cmd_figures(fig, out, err);
}

} // namespace oabf

#endif
