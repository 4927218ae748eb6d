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

// Command implementations behind the CLI. Each command writes its files
// under the output directory and finishes with manifest.txt listing them.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "aqec/config.hpp"
#include "aqec/pulse.hpp"

namespace aqec {

inline constexpr const char* kVersion = "0.1.0";

/// Default worker count: AQEC_WORKERS if set and positive, else 1.
int default_workers();

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::vector<double> column(const std::string& name) const;
    std::string to_text() const;
    static CsvTable parse(const std::string& text);
};

/// %.12g
std::string csv_number(double x);

class RunManifest {
   public:
    RunManifest(std::string command, const ExperimentConfig& config);

    /// Writes `contents` to dir/name and records it.
    void write(const std::filesystem::path& dir, const std::string& name, const std::string& contents);
    void record(const std::string& name);
    const std::vector<std::string>& files() const { return files_; }
    /// Writes dir/manifest.txt.
    void finish(const std::filesystem::path& dir);

   private:
    std::string command_;
    std::string hash_;
    std::string started_;
    std::vector<std::string> files_;
};

/// Pulse from [pulse] file, or optimized on the lossless model. The
/// optimization result is written into the manifest when `manifest` is set.
struct PulseOutcome {
    PulseShape pulse;
    double fidelity = 0.0;
    bool converged = true;
    bool optimized = false;
};
PulseOutcome obtain_pulse(const ExperimentConfig& config, RunManifest* manifest = nullptr,
                          const std::filesystem::path& dir = {});

/// Writes pulse.txt, trace.csv, summary.txt. Throws ConvergenceError after
/// writing when the target fidelity is not reached.
void cmd_optimize(const ExperimentConfig& config);
/// Pulse-reset cycles from the model's protected state: trajectory.csv, states.txt.
void cmd_evolve(const ExperimentConfig& config);
/// Runs [sweep] kind over its axis: sweep.csv plus fit records.
void cmd_sweep(const ExperimentConfig& config);
/// Scans [schedule] t_r_grid at [model] t1: scan_reset.csv.
void cmd_scan_reset(const ExperimentConfig& config);
/// Preset pipeline for fig2..fig7 or table1 with summary.txt.
void cmd_reproduce(const std::string& figure_id, const std::string& out_dir, int workers);
/// Fits [fit] columns of a CSV: fit.txt.
void cmd_fit(const ExperimentConfig& config);

std::vector<std::string> reproduce_ids();

}  // namespace aqec
