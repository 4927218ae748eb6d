// Copyright 2026 The aqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "aqec/config.hpp"
#include "aqec/errors.hpp"
#include "aqec/runner.hpp"

namespace aqec {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("aqec_test_" + name);
    fs::remove_all(p);
    return p;
}

void expect_no_orphans(const fs::path& dir) {
    const auto manifest = slurp(dir / "manifest.txt");
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (name == "manifest.txt") continue;
        EXPECT_NE(manifest.find(name), std::string::npos) << name << " missing from manifest";
    }
}

ExperimentConfig fixed_sweep(const fs::path& out, int workers) {
    auto c = parse_config(R"([model]
kind = vslq
w = 35 MHz
delta = 350 MHz

[sweep]
kind = vslq_fixed
t1 = [5, 60] us

[fixed]
omega = [2.94, 0.93] MHz
gamma_s = [24.66, 8.04] per_us
omega_s = [209.75, 209.97] MHz
)");
    c.output_dir = out.string();
    c.workers = workers;
    return c;
}

TEST(Runner, SweepIdenticalAcrossWorkerCounts) {
    const auto a = scratch("sweep1"), b = scratch("sweep2");
    cmd_sweep(fixed_sweep(a, 1));
    cmd_sweep(fixed_sweep(b, 2));
    const auto ta = slurp(a / "sweep.csv");
    EXPECT_EQ(ta, slurp(b / "sweep.csv"));
    const auto table = CsvTable::parse(ta);
    ASSERT_EQ(table.rows.size(), 2u);
    EXPECT_EQ(table.column("t1_us"), (std::vector<double>{5.0, 60.0}));
    expect_no_orphans(a);
    const auto man = slurp(a / "manifest.txt");
    std::ostringstream hash;
    hash << std::hex << std::setw(16) << std::setfill('0') << config_hash(fixed_sweep(a, 1));
    EXPECT_NE(man.find(hash.str()), std::string::npos);
}

TEST(Runner, EmptyAxisRejected) {
    auto c = fixed_sweep(scratch("empty"), 1);
    c.sweep.t1.clear();
    c.fixed = {};
    EXPECT_THROW(cmd_sweep(c), ValidationError);
}

TEST(Runner, CsvRoundTrip) {
    CsvTable t;
    t.header = {"x", "y", "error"};
    t.add({csv_number(0.1), csv_number(1.0 / 3.0), ""});
    t.add({csv_number(2.5e-7), csv_number(-4.0), "fit failed"});
    const auto back = CsvTable::parse(t.to_text());
    EXPECT_EQ(back.header, t.header);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_EQ(back.column("y")[0], std::stod(csv_number(1.0 / 3.0)));
    EXPECT_THROW(back.column("z"), ValidationError);
}

TEST(Runner, CsvNumberHasTwelveDigits) {
    EXPECT_EQ(csv_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(csv_number(2.0), "2");
}

TEST(Runner, FitCommand) {
    const auto dir = scratch("fit");
    fs::create_directories(dir);
    CsvTable t;
    t.header = {"t1_us", "residual"};
    for (double x : {5.0, 10.0, 20.0, 40.0, 60.0}) t.add({csv_number(x), csv_number(0.2 * std::pow(x, -0.81))});
    std::ofstream(dir / "in.csv") << t.to_text();
    auto c = parse_config("[model]\nkind = single_qubit\ndelta = 350 MHz\n");
    c.fit = {(dir / "in.csv").string(), "t1_us", "residual", "power_law"};
    c.output_dir = (dir / "out").string();
    cmd_fit(c);
    const auto rec = slurp(dir / "out" / "fit.txt");
    const auto at = rec.find("exponent = ");
    ASSERT_NE(at, std::string::npos);
    EXPECT_NEAR(std::stod(rec.substr(at + 11)), -0.81, 1e-9);
    expect_no_orphans(dir / "out");
}

TEST(Runner, DefaultWorkersFromEnvironment) {
    ::setenv("AQEC_WORKERS", "3", 1);
    EXPECT_EQ(default_workers(), 3);
    ::setenv("AQEC_WORKERS", "zero", 1);
    EXPECT_EQ(default_workers(), 1);
    ::unsetenv("AQEC_WORKERS");
    EXPECT_EQ(default_workers(), 1);
}

TEST(Runner, UnknownFigure) { EXPECT_THROW(cmd_reproduce("fig9", scratch("fig9").string(), 1), ValidationError); }

int run_cli(const std::string& args) {
    const int status = std::system((std::string(AQEC_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch("cli");
    fs::create_directories(dir);
    EXPECT_EQ(run_cli("presets"), 0);
    EXPECT_EQ(run_cli("optimize --config " + (dir / "missing.cfg").string()), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    std::ofstream(dir / "bad.cfg") << "[model]\nkind = single_qubit\ndelta = 350\n";
    EXPECT_EQ(run_cli("optimize --config " + (dir / "bad.cfg").string()), 2);
    // An unreachable target with no iterations is a convergence failure.
    std::ofstream(dir / "hard.cfg") << "[model]\nkind = single_qubit\ndelta = 350 MHz\n"
                                       "[pulse]\nt_p = 20 ns\nseed = 20 MHz\n"
                                       "[optimizer]\ntarget_fidelity = 1\nmax_iters = 0\n";
    EXPECT_EQ(run_cli("optimize --config " + (dir / "hard.cfg").string() + " --out " + (dir / "hard").string()), 3);
    EXPECT_TRUE(fs::exists(dir / "hard" / "pulse.txt"));
    expect_no_orphans(dir / "hard");
    EXPECT_EQ(run_cli("optimize --preset single-qubit-fig2 --out " + (dir / "ok").string() + " --workers 2"), 0);
    expect_no_orphans(dir / "ok");
}

}  // namespace
}  // namespace aqec
