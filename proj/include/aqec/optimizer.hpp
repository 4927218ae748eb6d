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

// Finite-difference gradient ascent over pulse coefficients and over small
// fixed parameter sets.
//
// Update rule shared by both: step along the gradient with the current step
// size; on a decrease halve the step and retry, after three accepted steps in
// a row double it, never above 8x the initial step.

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "aqec/dynamics.hpp"
#include "aqec/models.hpp"
#include "aqec/pulse.hpp"

namespace aqec {

/// Decoherence-free state-transfer objective:
///   F = sum_pairs weight |<final| U(t_p) |initial>|^2.
class Objective {
   public:
    Objective(const ModelSystem& sys, TargetOperation target, double rtol = 1e-10);

    double fidelity(const PulseShape& pulse) const;
    std::vector<double> pair_fidelities(const PulseShape& pulse) const;
    const TargetOperation& target() const { return target_; }
    const ModelSystem& system() const { return sys_; }

   private:
    struct Block {
        ReducedHamiltonian h;
        Vector initial;
        Vector final_conj;  // restricted to h.basis, conjugated
        double outside = 0;  // weight of |final> outside the block
    };
    ModelSystem sys_;
    TargetOperation target_;
    double rtol_;
    std::vector<Block> blocks_;
};

struct OptimizerConfig {
    double epsilon = 6.283185307179586e-5;  // rad/ns
    double learning_rate = 1e-3;            // (rad/ns) per unit gradient
    int max_iters = 2000;
    double target_fidelity = 0.999;
    double seed_c1x = 0.12566370614359174;  // rad/ns
    int n_modes = 20;
    double t_p = 40.0;  // ns
    int workers = 1;

    void validate() const;
};

struct TraceRow {
    int iteration = 0;
    double fidelity = 0.0;
    double step = 0.0;
    double grad_norm = 0.0;
};

struct OptimizeResult {
    PulseShape pulse;
    double fidelity = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<TraceRow> trace;
};

/// Central differences (F(c + eps e_n) - F(c - eps e_n)) / 2 eps over all 2N coefficients.
std::vector<double> gradient(const Objective& objective, const PulseShape& pulse, double epsilon, int workers = 1);

/// Starts from PulseShape::seeded(n_modes, t_p, seed_c1x).
OptimizeResult optimize_pulse(const Objective& objective, const OptimizerConfig& config);
OptimizeResult optimize_pulse_from(const Objective& objective, const OptimizerConfig& config,
                                   const PulseShape& start);

void write_trace_csv(const std::vector<TraceRow>& trace, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Generic bounded ascent over a few physical parameters.

struct AscentConfig {
    double epsilon = 1e-3;       // finite-difference step in scaled units
    double learning_rate = 0.05; // scaled units per unit scaled gradient
    int max_iters = 60;
    double min_step = 1e-6;      // stop when the step shrinks below this (scaled)
    int workers = 1;
};

struct AscentResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;  // stopped on a stationary point rather than the budget
    std::vector<TraceRow> trace;
};

/// Maximizes f over the box [lower, upper]; coordinates are divided by
/// `scale` before differencing so that parameters of different units share
/// one step size.
AscentResult ascend(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                    const std::vector<double>& scale, const std::vector<double>& lower,
                    const std::vector<double>& upper, const AscentConfig& config);

// ---------------------------------------------------------------------------

struct ResetScan {
    std::vector<double> t_r;       // ns
    std::vector<double> residual;  // same order
    double best_t_r = 0.0;
    double best_residual = 0.0;
};

/// Evaluates `residual_at(t_r)` on every grid point and returns the argmin.
ResetScan scan_reset_time(const std::vector<double>& t_r_grid, const std::function<double(double)>& residual_at);

}  // namespace aqec
