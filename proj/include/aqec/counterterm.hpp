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

// Spectral content of the optimized Omega_y quadrature versus nonlinearity.

#pragma once

#include <filesystem>
#include <vector>

#include "aqec/models.hpp"
#include "aqec/optimizer.hpp"
#include "aqec/pulse.hpp"

namespace aqec {

struct SpectralPeak {
    double frequency_mhz = 0.0;  // linear frequency
    double power_fraction = 0.0;
};

/// Direct DFT magnitude over bins 0..N/2, peak bin refined by a parabola
/// through the neighbouring magnitudes. Needs at least 64 samples.
SpectralPeak dominant_frequency(const std::vector<double>& series, double dt_ns);

/// Omega_x or Omega_y sampled every dt_ns over [0, t_p].
std::vector<double> sample_quadrature(const PulseShape& pulse, bool y_quadrature, double dt_ns = 0.05);

/// Largest population of `leak` along a decoherence-free pulse starting from
/// `start`, sampled every dt_ns.
double max_leakage(const ModelSystem& sys, const PulseShape& pulse, const QuantumState& start,
                   const QuantumState& leak, double dt_ns = 0.05);

struct DeltaSweepRow {
    double delta_mhz = 0.0;
    double peak_mhz = 0.0;
    double power_fraction = 0.0;
    double max_leakage_with_y = 0.0;
    double max_leakage_without_y = 0.0;
    double fidelity = 0.0;
    double min_target_population = 0.0;
    PulseShape pulse;
};

/// For each delta (rad/ns): optimize the single-qubit pulse, find the dominant
/// Omega_y frequency and the peak |2_q 1_r> population starting from |1_q 0_r>
/// with and without the y quadrature. Rows follow the input order.
std::vector<DeltaSweepRow> run_delta_sweep(const std::vector<double>& deltas, const OptimizerConfig& config,
                                           int workers = 1);

void write_delta_sweep_csv(const std::vector<DeltaSweepRow>& rows, const std::filesystem::path& path);

}  // namespace aqec
