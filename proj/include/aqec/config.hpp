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

// Experiment configuration. Every physical value in the file carries a unit:
//
//   frequency  MHz (2 pi f 1e-3 rad/ns) or rad_per_ns
//   rate       per_us (1e-3 /ns) or per_ns
//   time       ns or us
//
// Values are converted to rad/ns, 1/ns and ns on load and never again.
// write_config emits the internal units, so load(write(c)) == c exactly.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aqec/models.hpp"
#include "aqec/optimizer.hpp"

namespace aqec {

struct ModelSection {
    std::string kind = "single_qubit";  // single_qubit | three_qubit | vslq
    double delta = 0.0;                 // rad/ns
    double j = 0.0;                     // rad/ns
    double w = 0.0;                     // rad/ns
    double omega_s = 0.0;               // rad/ns; 0 selects W + delta/2
    double t1 = 0.0;                    // ns (T1, or T_E for the flip code); 0 = lossless
    double gamma_lossy = 0.0;           // 1/ns, always-on lossy rate for fixed evolution

    bool operator==(const ModelSection&) const = default;
};

struct PulseSection {
    int n_modes = 20;
    double t_p = 40.0;           // ns
    double seed = 0.0;           // rad/ns
    std::string file;            // load this pulse instead of optimizing

    bool operator==(const PulseSection&) const = default;
};

struct OptimizerSection {
    double epsilon = 6.283185307179586e-5;  // rad/ns
    double learning_rate = 1e-3;
    int max_iters = 2000;
    double target_fidelity = 0.999;
    std::string target;  // empty selects the model default

    bool operator==(const OptimizerSection&) const = default;
};

struct ScheduleSection {
    double t_r = 0.0;               // ns
    std::vector<double> t_r_grid;   // ns
    int n_cycles = 1;
    double reset_rate = 0.035;      // 1/ns, lossy rate during the reset

    bool operator==(const ScheduleSection&) const = default;
};

struct SweepSection {
    std::string kind;            // residual | vslq_fixed | vslq_pulse_reset | three_qubit | delta
    std::vector<double> t1;      // ns
    std::vector<double> deltas;  // rad/ns

    bool operator==(const SweepSection&) const = default;
};

/// Fixed VSLQ operating points, one entry per sweep T1.
struct FixedSection {
    std::vector<double> omega;    // rad/ns
    std::vector<double> gamma_s;  // 1/ns
    std::vector<double> omega_s;  // rad/ns
    bool search = false;          // run the fixed-parameter ascent from these points

    bool operator==(const FixedSection&) const = default;
};

struct FitSection {
    std::string input;           // CSV path
    std::string x_column;
    std::string y_column;
    std::string model = "exp_with_offset";  // exp | exp_with_offset | power_law | power_law_offset

    bool operator==(const FitSection&) const = default;
};

struct ExperimentConfig {
    ModelSection model;
    PulseSection pulse;
    OptimizerSection optimizer;
    ScheduleSection schedule;
    SweepSection sweep;
    FixedSection fixed;
    FitSection fit;
    std::string output_dir = "out";
    int workers = 1;

    bool operator==(const ExperimentConfig&) const = default;

    void validate() const;
    /// Physical model with the always-on rates implied by model.t1 and gamma_lossy.
    ModelSpec model_spec() const;
    /// Lossless copy of the model for pulse optimization.
    ModelSpec lossless_spec() const;
    OptimizerConfig optimizer_config() const;
};

/// Throws ValidationError with the line number on any problem.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string write_config(const ExperimentConfig& config);

/// FNV-1a 64 over write_config(config), with the worker count and output
/// directory cleared so that they do not change the hash.
std::uint64_t config_hash(const ExperimentConfig& config);

/// Built-in presets by name; throws ValidationError for an unknown name.
std::string preset_text(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace aqec
