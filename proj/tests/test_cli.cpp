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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <oabf/cli.hpp>

using namespace oabf;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("oabf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string &name, const std::string &content)
    {
        const auto p = dir_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p.string();
    }

    static std::string slurp(const fs::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    int run(std::vector<std::string> args)
    {
        args.insert(args.begin(), "oabf");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        out_.str("");
        err_.str("");
        return run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

const char *minimal_config = R"(; one cell
[minimal]
schemes = OABF_S
n_values = 2
trials = 10
seed = 42
)";

} // namespace

TEST_F(CliTest, SelectSeparate)
{
    EXPECT_EQ(run({"select", "--input", file("a.txt", "1 0\n-1 0\n"), "--mode", "separate"}), 0);
    EXPECT_EQ(out_.str(), "10\nobjective 1\nsnr 1\n");
    EXPECT_EQ(run({"select", "--input", file("b.txt", "1 0\n0 1\n"), "--mode", "separate"}), 0);
    EXPECT_EQ(out_.str(), "11\nobjective 2\nsnr 2\n");
}

TEST_F(CliTest, SelectTotalWithPowerAndNoise)
{
    EXPECT_EQ(run({"select", "--input", file("a.txt", "2 0\n1 0\n"), "--mode", "total"}), 0);
    EXPECT_EQ(out_.str(), "11\nobjective 4.5\nsnr 4.5\n");
    EXPECT_EQ(run({"select", "--input", file("a.txt", "2 0\n1 0\n"), "--mode", "total", "--power", "2", "--noise",
                   "0.5"}),
              0);
    EXPECT_EQ(out_.str(), "11\nobjective 4.5\nsnr 18\n");
}

TEST_F(CliTest, SelectJsonInput)
{
    EXPECT_EQ(run({"select", "--input", file("c.json", "[[2, 0], [0.1, 0]]"), "--mode", "total"}), 0);
    EXPECT_EQ(out_.str(), "10\nobjective 4\nsnr 4\n");
}

TEST_F(CliTest, SelectErrors)
{
    EXPECT_EQ(run({"select", "--input", file("bad.txt", "1 0\n1 0\n2;0\n"), "--mode", "separate"}), 1);
    EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();
    EXPECT_EQ(run({"select", "--input", (dir_ / "missing.txt").string()}), 1);
    EXPECT_EQ(run({"select", "--input", file("a.txt", "1 0\n"), "--mode", "both"}), 1);
    EXPECT_EQ(run({"select", "--input", file("a.txt", "1 0\n"), "--power", "-1"}), 1);
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(run({}), 1);
    EXPECT_EQ(run({"launch"}), 1);
    EXPECT_EQ(run({"verify", "--n-max", "4", "--instances", "2", "--seed", "1", "--bogus"}), 1);
    EXPECT_EQ(run({"verify", "--n-max", "4"}), 1);
    EXPECT_EQ(run({"--help"}), 0);
}

TEST_F(CliTest, SimulateMinimalConfig)
{
    const auto cfg = file("min.ini", minimal_config);
    const auto out = dir_ / "out";
    ASSERT_EQ(run({"simulate", "--config", cfg, "--out", out.string()}), 0) << err_.str();
    std::istringstream csv(slurp(out / "minimal.csv"));
    std::string header, row, extra;
    std::getline(csv, header);
    std::getline(csv, row);
    EXPECT_EQ(header, sweep_csv_header);
    EXPECT_EQ(row.rfind("OABF_S,2,10,", 0), 0u) << row;
    EXPECT_FALSE(std::getline(csv, extra));

    const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(manifest["experiments"][0]["seed"], 42);
    EXPECT_EQ(manifest["generator_version"], RngStream::generator_version);
    EXPECT_TRUE(manifest.contains("wall_time_s"));
}

TEST_F(CliTest, SimulateIsByteIdenticalAcrossRunsAndThreads)
{
    const auto cfg = file("two.ini", std::string(minimal_config) + R"(
[tails]
schemes = OABF_T, PHASE_ALIGNED
mode = total
n_values = 1, 3
trials = 3000
seed = 5
threshold_db_range = -20, 5, 5
)");
    ASSERT_EQ(run({"simulate", "--config", cfg, "--out", (dir_ / "a").string(), "--threads", "1"}), 0);
    ASSERT_EQ(run({"simulate", "--config", cfg, "--out", (dir_ / "b").string(), "--threads", "4"}), 0);
    for (const char *name : {"minimal.csv", "tails.csv"})
        EXPECT_EQ(slurp(dir_ / "a" / name), slurp(dir_ / "b" / name)) << name;

    std::istringstream csv(slurp(dir_ / "a" / "tails.csv"));
    std::string header, first;
    std::getline(csv, header);
    std::getline(csv, first);
    EXPECT_EQ(header, outage_csv_header);
    // N = 1 at -20 dB: P(|h|^2 < 0.01) = 1 - exp(-0.01).
    ASSERT_EQ(first.rfind("OABF_T,1,-20,", 0), 0u) << first;
    ASSERT_EQ(first.substr(first.rfind(',')), ",3000");
    const double p = std::stod(first.substr(13, first.rfind(',') - 13));
    const double want = 1 - std::exp(-0.01);
    EXPECT_NEAR(p, want, 4 * std::sqrt(want * (1 - want) / 3000));
}

TEST_F(CliTest, SimulateConfigErrorsNameTheField)
{
    const std::pair<const char *, const char *> cases[] = {
        {"[e]\nschemes = OABF_S\nn_values = 2\nseed = 1\n", "e.trials"},
        {"[e]\nschemes = OABF_Q\nn_values = 2\ntrials = 3\nseed = 1\n", "e.schemes"},
        {"[e]\nschemes = OABF_S\nn_values = 2, x\ntrials = 3\nseed = 1\n", "e.n_values"},
        {"[e]\nschemes = OABF_S\nn_values = 2\ntrials = 3\nseed = 1\nmode = sideways\n", "e.mode"},
        {"[e]\nschemes = OABF_S\nn_values = 2\ntrials = 3\nseed = 1\ncolour = red\n", "e.colour"},
        {"[e]\nschemes = OABF_S\nn_values = 2\ntrials = 3\nseed = 1\ntable = outage\n", "e.thresholds_db"},
        {"[e]\nschemes = OABF_S\nn_values = 2\ntrials = 3\nseed = 1\nnoise = 0\n", "e.noise"},
        {"[e]\nschemes = OABF_S\nn_values = 0\ntrials = 3\nseed = 1\n", "e.n_values"},
    };
    for (const auto &[text, field] : cases) {
        EXPECT_EQ(run({"simulate", "--config", file("bad.ini", text), "--out", (dir_ / "o").string()}), 1) << text;
        EXPECT_NE(err_.str().find(field), std::string::npos) << err_.str();
    }
    EXPECT_EQ(run({"simulate", "--config", (dir_ / "nope.ini").string(), "--out", (dir_ / "o").string()}), 1);
}

TEST_F(CliTest, VerifyPasses)
{
    EXPECT_EQ(run({"verify", "--n-max", "8", "--instances", "100", "--seed", "3"}), 0);
    EXPECT_NE(out_.str().find("N=8 separate 100/100 total 100/100"), std::string::npos) << out_.str();
}

TEST_F(CliTest, VerifyCapacityGuard)
{
    EXPECT_EQ(run({"verify", "--n-max", "21", "--instances", "1", "--seed", "3"}), 1);
    EXPECT_NE(err_.str().find("capacity"), std::string::npos);
}

TEST(CliVerify, InjectedFaultIsCaught)
{
    // Drop the last selected antenna whenever more than one is on.
    VerifyHooks faulty;
    faulty.separate = [](const ChannelRealization &ch) {
        auto r = oabf_s(ch);
        auto idx = r.selection.indices;
        if (idx.size() > 1)
            idx.pop_back();
        return evaluate_subset(ch, idx, PowerMode::separate);
    };
    std::ostringstream out, err;
    EXPECT_EQ(cmd_verify({6, 50, 3}, out, err, faulty), 2);
    EXPECT_NE(err.str().find("mismatch (separate)"), std::string::npos);
    // The failing coefficients follow the mismatch line verbatim.
    std::istringstream lines(err.str());
    std::string first, coeff;
    std::getline(lines, first);
    std::getline(lines, coeff);
    EXPECT_EQ(std::count(coeff.begin(), coeff.end(), ' '), 1) << coeff;
}

TEST_F(CliTest, FiguresWritesAllTables)
{
    ASSERT_EQ(run({"figures", "--out", (dir_ / "figs").string(), "--trials", "40", "--seed", "3"}), 0) << err_.str();
    for (const char *name : {"fig4.csv", "fig5.csv", "fig6.csv", "fig7.csv", "fig8.csv", "manifest.json"})
        EXPECT_TRUE(fs::exists(dir_ / "figs" / name)) << name;
    EXPECT_EQ(slurp(dir_ / "figs" / "fig6.csv").rfind(outage_csv_header, 0), 0u);
    EXPECT_EQ(slurp(dir_ / "figs" / "fig7.csv").rfind(sweep_csv_header, 0), 0u);
}
