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

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "aqec/dynamics.hpp"
#include "aqec/hilbert.hpp"

namespace aqec {

struct DecayFit {
    double lifetime = 0.0;  // same unit as the fitted times
    double amplitude = 0.0;
    double offset = 0.0;
    double r_squared = 0.0;
};

enum class DecayModel { Exp, ExpWithOffset };

/// Least-squares fit of A exp(-t/T) (+ B). The rate is found by a bracketed
/// one-dimensional search with A (and B) solved linearly at each trial rate.
DecayFit fit_lifetime(const std::vector<double>& times, const std::vector<double>& values,
                      DecayModel model = DecayModel::ExpWithOffset);

struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double offset = 0.0;
    double residual = 0.0;  // RMS relative residual
};

/// y = a x^b (+ c). With an offset, c is searched on [0, min y).
ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, bool with_offset = false);

/// 1 - <target| rho_end |target> for the last state of the trajectory.
double residual_error(const Trajectory& traj, const QuantumState& target);

/// T_L / T_phys.
double improvement_factor(const DecayFit& logical, double physical_time);

// ---------------------------------------------------------------------------
// Long-time decay from a transfer map.

struct LongTimeOptions {
    int samples = 120;         // per window
    double window_factor = 3;  // window = factor * fitted lifetime
    int max_rounds = 10;
    double rel_tol = 0.01;
};

struct LongTimeDecay {
    DecayFit fit;                 // lifetime in us
    std::vector<double> times_us;
    std::vector<double> values;
    int rounds = 0;
};

/// `base_map` advances the sector vector by `base_step_ns`. Samples
/// <row . v> every `stride` base steps, with the stride chosen so that the
/// sampling window tracks window_factor times the fitted lifetime.
LongTimeDecay long_time_decay(const Matrix& base_map, double base_step_ns, const Vector& v0,
                              const Eigen::RowVectorXcd& row, double lifetime_guess_us,
                              const LongTimeOptions& options = {});

std::string decay_fit_record(const DecayFit& fit, const std::map<std::string, std::string>& provenance);
std::string scaling_fit_record(const ScalingFit& fit, const std::map<std::string, std::string>& provenance);

}  // namespace aqec
