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

// aqec command line.
//
// Exit codes: 0 ok, 1 I/O or other failure, 2 validation, 3 convergence,
// 4 numerical integrity.

#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "aqec/config.hpp"
#include "aqec/errors.hpp"
#include "aqec/runner.hpp"

namespace {

struct Common {
    std::string config;
    std::string preset;
    std::string out;
    int workers = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_preset = true) {
    cmd->add_option("--config", c.config, "Config file");
    if (with_preset) cmd->add_option("--preset", c.preset, "Built-in preset name");
    cmd->add_option("--out", c.out, "Output directory");
    cmd->add_option("--workers", c.workers, "Worker threads (default: AQEC_WORKERS or 1)")->check(CLI::PositiveNumber);
}

aqec::ExperimentConfig resolve(const Common& c) {
    if (!c.config.empty() && !c.preset.empty()) throw aqec::ValidationError("give either --config or --preset");
    if (c.config.empty() && c.preset.empty()) throw aqec::ValidationError("one of --config or --preset is required");
    aqec::ExperimentConfig cfg =
        c.config.empty() ? aqec::parse_config(aqec::preset_text(c.preset)) : aqec::load_config(c.config);
    if (!c.out.empty()) cfg.output_dir = c.out;
    cfg.workers = c.workers > 0 ? c.workers : aqec::default_workers();
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pulse-reset autonomous error correction simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", aqec::kVersion);

    Common optimize, evolve, sweep, scan, fit, repro;
    std::string figure;
    auto* c_opt = app.add_subcommand("optimize", "Optimize a coupling pulse");
    add_common(c_opt, optimize);
    auto* c_evo = app.add_subcommand("evolve", "Evolve pulse-reset cycles");
    add_common(c_evo, evolve);
    auto* c_swp = app.add_subcommand("sweep", "Run a parameter sweep");
    add_common(c_swp, sweep);
    auto* c_scn = app.add_subcommand("scan-reset", "Scan the reset duration");
    add_common(c_scn, scan);
    auto* c_fit = app.add_subcommand("fit", "Fit a decay or power law to CSV columns");
    add_common(c_fit, fit);
    auto* c_rep = app.add_subcommand("reproduce", "Reproduce a figure or table");
    c_rep->add_option("figure", figure, "fig2 .. fig7 or table1")->required();
    add_common(c_rep, repro, false);
    auto* c_list = app.add_subcommand("presets", "List built-in presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_opt->parsed()) aqec::cmd_optimize(resolve(optimize));
        if (c_evo->parsed()) aqec::cmd_evolve(resolve(evolve));
        if (c_swp->parsed()) aqec::cmd_sweep(resolve(sweep));
        if (c_scn->parsed()) aqec::cmd_scan_reset(resolve(scan));
        if (c_fit->parsed()) aqec::cmd_fit(resolve(fit));
        if (c_rep->parsed()) {
            if (!repro.config.empty()) throw aqec::ValidationError("reproduce takes no --config");
            aqec::cmd_reproduce(figure, repro.out.empty() ? "out/" + figure : repro.out,
                                repro.workers > 0 ? repro.workers : aqec::default_workers());
        }
        if (c_list->parsed())
            for (const auto& n : aqec::preset_names()) std::printf("%s\n", n.c_str());
    } catch (const aqec::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const aqec::ConvergenceError& e) {
        std::fprintf(stderr, "convergence error: %s (achieved %.12g)\n", e.what(), e.achieved());
        return 3;
    } catch (const aqec::IntegrityError& e) {
        std::fprintf(stderr, "numerical integrity error: %s (achieved %.3e)\n", e.what(), e.achieved());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
