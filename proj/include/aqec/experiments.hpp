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

// Model-level experiments built on the sector transfer maps: single-qubit
// residual error, VSLQ logical lifetimes (fixed parameters and pulse-reset),
// three-qubit logical lifetimes.

#pragma once

#include <vector>

#include "aqec/analysis.hpp"
#include "aqec/liouville.hpp"
#include "aqec/models.hpp"
#include "aqec/optimizer.hpp"
#include "aqec/pulse.hpp"

namespace aqec {

// ---------------------------------------------------------------------------
// Single qubit.

/// One pulse-reset cycle of the single-qubit model at T1, starting from
/// |1_q 0_r>. The pulse map is computed once; residual(t_r) then costs one
/// matrix exponential.
class SingleQubitCycle {
   public:
    SingleQubitCycle(double delta, const PulseShape& pulse, double t1_us, double gamma_r_reset,
                     double rtol = 1e-10);

    /// 1 - <1_q 0_r| rho_end |1_q 0_r> after one cycle with reset time t_r.
    double residual(double t_r) const;
    ResetScan scan(const std::vector<double>& t_r_grid) const;

   private:
    ModelSystem sys_;
    SectorLiouvillian sector_;
    double gamma_q_, gamma_r_reset_;
    Matrix pulse_map_;
    Vector start_;
    Eigen::RowVectorXcd row_;
};

struct ConstantCoupling {
    double residual = 1.0;
    double omega = 0.0;    // rad/ns
    double gamma_r = 0.0;  // 1/ns
};

/// Steady-state residual 1 - <1_q 0_r|rho_ss|1_q 0_r> under constant Omega_x
/// and resonator loss gamma_r, always-on primary loss 1/T1.
double constant_coupling_residual(double delta, double t1_us, double omega, double gamma_r);

/// Coarse log grid over (Omega, Gamma_r) followed by gradient ascent on the
/// steady-state fidelity in log coordinates.
ConstantCoupling best_constant_coupling(double delta, double t1_us, const AscentConfig& config = {});

struct ResidualPoint {
    double t1_us = 0.0;
    double pulse_reset = 0.0;
    double best_t_r = 0.0;
    ConstantCoupling constant;
};

/// Per-T1 pulse-reset residual (scanned t_r) and best constant-coupling residual.
std::vector<ResidualPoint> residual_scaling(double delta, const PulseShape& pulse, const std::vector<double>& t1s_us,
                                            const std::vector<double>& t_r_grid, double gamma_r_reset,
                                            int workers = 1);

// ---------------------------------------------------------------------------
// VSLQ.

struct LogicalLifetimes {
    LongTimeDecay x;  // <X_L> from |0_L>
    LongTimeDecay y;  // <Y_L> from the Y_L +1 eigenstate
};

struct LogicalValues {
    double x = 0.0;
    double y = 0.0;
};

/// Fixed parameters: constant Omega_x = omega, shadow loss m.gamma_s, primary loss m.gamma_p.
class VslqFixed {
   public:
    VslqFixed(const VslqModel& m, double omega);

    LogicalLifetimes lifetimes(const LongTimeOptions& options = {}) const;
    LogicalValues values_at(double t_ns) const;

   private:
    ModelSystem sys_;
    SectorLiouvillian sector_;
    SparseSuper generator_;
    double t1_us_;
    Vector vx_, vy_;
    Eigen::RowVectorXcd rx_, ry_;
};

/// Pulse-reset cycles: during the pulse every channel decays at m.gamma_p,
/// during the reset the shadows decay at gamma_s_reset.
class VslqPulseReset {
   public:
    VslqPulseReset(const VslqModel& m, const PulseShape& pulse, double gamma_s_reset, double rtol = 1e-7);

    Matrix cycle_map(double t_r) const;
    LogicalLifetimes lifetimes(double t_r, const LongTimeOptions& options = {}) const;
    /// Exactly at t_ns: full cycles, then the partial pulse or partial reset.
    LogicalValues values_at(double t_r, double t_ns) const;
    /// Scan t_r minimizing the logical X error rate 1/T_X (1/us).
    ResetScan scan(const std::vector<double>& t_r_grid, const LongTimeOptions& options = {}) const;

   private:
    ModelSystem sys_;
    PulseShape pulse_;
    SectorLiouvillian sector_;
    std::vector<double> pulse_rates_, reset_rates_;
    double rtol_, t1_us_;
    Matrix pulse_map_;
    Vector vx_, vy_;
    Eigen::RowVectorXcd rx_, ry_;
};

struct FixedParameters {
    double omega = 0.0;    // rad/ns
    double gamma_s = 0.0;  // 1/ns
    double omega_s = 0.0;  // rad/ns
};

struct FixedOptimum {
    FixedParameters params;
    LogicalLifetimes lifetimes;
    AscentResult ascent;
};

/// Gradient ascent over {Omega, Gamma_S, omega_S} maximizing T_X at fixed T1
/// (gamma_p = 1/T1 taken from `base`). Coordinates are scaled by `start`.
FixedOptimum optimize_fixed_parameters(const VslqModel& base, const FixedParameters& start,
                                       const FixedParameters& lower, const FixedParameters& upper,
                                       const AscentConfig& config = {}, const LongTimeOptions& options = {});

// ---------------------------------------------------------------------------
// Three-qubit flip code.

/// Pulse-reset cycles of the flip code: during the pulse the lossy qubits
/// decay at gamma_p, during the reset at gamma_r_reset. The observable is the
/// majority-vote population of the starting code word.
class ThreeQubitPulseReset {
   public:
    ThreeQubitPulseReset(const ThreeQubitModel& m, const PulseShape& pulse, double gamma_r_reset,
                         double rtol = 1e-9);

    /// `logical` is 0 or 1. Fitted with an offset (population decays to 1/2).
    LongTimeDecay lifetime(int logical, double t_r, const LongTimeOptions& options = {}) const;
    ResetScan scan(int logical, const std::vector<double>& t_r_grid, const LongTimeOptions& options = {}) const;
    double t_e_us() const { return t_e_us_; }

   private:
    ModelSystem sys_;
    SectorLiouvillian sector_;
    std::vector<double> pulse_rates_, reset_rates_;
    double t_e_us_;
    double period_t_p_ = 0.0;
    Matrix pulse_map_;
    Vector v0_, v1_;
    Eigen::RowVectorXcd r0_, r1_;
};

}  // namespace aqec
