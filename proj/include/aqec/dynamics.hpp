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

// Time evolution under H(t) = h_static + Omega_x(t) h_x + Omega_y(t) h_y:
// Schrodinger propagation for pure states and the Lindblad master equation
//
//   drho/dt = -i[H, rho] + sum_k gamma_k(t) (L rho L^dag - {L^dag L, rho}/2)
//
// for mixed states. Times in ns, rates in 1/ns.

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "aqec/hilbert.hpp"
#include "aqec/models.hpp"
#include "aqec/pulse.hpp"

namespace aqec {

using CouplingFn = std::function<CouplingValue(double)>;
using RateFn = std::function<double(double)>;

struct TimedChannel {
    Operator op;
    RateFn rate;
};

struct EvolutionProblem {
    Operator h_static;
    Operator h_x;
    Operator h_y;
    CouplingFn coupling;                // empty means zero coupling
    std::vector<TimedChannel> channels;
    double t0 = 0.0;
    double t1 = 0.0;
    QuantumState initial;
    std::vector<double> output_times;   // strictly inside (t0, t1]; t0 and t1 always recorded
    std::vector<double> breakpoints;    // rate or coupling discontinuities; never straddled by a step
    double rtol = 0.0;                  // 0 picks 1e-10 (unitary) or 1e-9 (Lindblad)

    void validate() const;
};

/// Builds the problem skeleton from a model: operators, nominal channel rates.
EvolutionProblem problem_from_model(const ModelSystem& sys, const QuantumState& initial, double t0, double t1);

struct Trajectory {
    std::vector<double> times;
    std::vector<QuantumState> states;
    std::map<std::string, std::vector<double>> observables;

    /// Evaluates <op> on every stored state and stores it under `name`.
    void record(const std::string& name, const Operator& op);
    void record_population(const std::string& name, const QuantumState& target);
    const QuantumState& final_state() const;
};

Trajectory evolve_unitary(const EvolutionProblem& problem);
Trajectory evolve_lindblad(const EvolutionProblem& problem);

struct CycleOptions {
    int samples_per_phase = 0;  // extra equally spaced samples inside each phase
    double rtol = 1e-9;
};

/// Alternates pulse and reset phases per `schedule`. Channel names in the
/// schedule must match the model's channels. Records every phase boundary.
Trajectory evolve_cycles(const ModelSystem& sys, const PulseShape& pulse, const CycleSchedule& schedule,
                         const QuantumState& initial, const CycleOptions& options = {});

/// Schedule with every channel at its nominal rate during the pulse and
/// `reset_rates` (by channel name) overriding during the reset.
CycleSchedule make_schedule(const ModelSystem& sys, double t_p, double t_r,
                            const std::map<std::string, double>& pulse_rates,
                            const std::map<std::string, double>& reset_rates, int n_cycles);

/// Restriction of a Hamiltonian family to the smallest set of basis states
/// closed under all terms and containing a given support.
struct ReducedHamiltonian {
    std::vector<int> basis;
    Matrix h_static;
    Matrix h_x;
    Matrix h_y;

    static ReducedHamiltonian closure(const Operator& h_static, const Operator& h_x, const Operator& h_y,
                                      const std::vector<int>& support);
    Vector restrict(const Vector& full) const;
    Vector expand(const Vector& reduced, int full_dim) const;
};

/// Propagates a reduced state through [t0, t1]. Samples at `outputs` when given.
Vector propagate_reduced(const ReducedHamiltonian& h, const Vector& psi0, const CouplingFn& coupling, double t0,
                         double t1, double rtol, const std::vector<double>& outputs = {},
                         std::vector<Vector>* samples = nullptr);

/// CSV with columns time_ns and one per observable, 12 significant digits.
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
std::string trajectory_state_dump(const Trajectory& traj);

}  // namespace aqec
