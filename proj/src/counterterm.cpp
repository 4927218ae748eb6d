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

#include "aqec/counterterm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "aqec/dynamics.hpp"
#include "aqec/errors.hpp"
#include "aqec/parallel.hpp"

namespace aqec {

SpectralPeak dominant_frequency(const std::vector<double>& series, double dt_ns) {
    const size_t n = series.size();
    if (n < 64) throw ValidationError("dominant_frequency: need at least 64 samples");
    if (!(dt_ns > 0.0)) throw ValidationError("dominant_frequency: dt must be positive");
    const size_t half = n / 2;
    std::vector<double> mag(half + 1);
    double total = 0.0;
    for (size_t k = 0; k <= half; ++k) {
        Complex acc = 0.0;
        const double w = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        for (size_t j = 0; j < n; ++j) acc += series[j] * std::polar(1.0, w * static_cast<double>(j));
        mag[k] = std::abs(acc);
        total += mag[k] * mag[k];
    }
    SpectralPeak p;
    if (total == 0.0) return p;
    const size_t k = std::max_element(mag.begin(), mag.end()) - mag.begin();
    double shift = 0.0;
    if (k > 0 && k < half) {
        const double a = mag[k - 1], b = mag[k], c = mag[k + 1];
        const double den = a - 2.0 * b + c;
        if (den != 0.0) shift = std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
    }
    const double bin_ghz = 1.0 / (static_cast<double>(n) * dt_ns);
    p.frequency_mhz = std::max(0.0, (static_cast<double>(k) + shift) * bin_ghz * 1e3);
    p.power_fraction = mag[k] * mag[k] / total;
    return p;
}

std::vector<double> sample_quadrature(const PulseShape& pulse, bool y_quadrature, double dt_ns) {
    if (!(dt_ns > 0.0)) throw ValidationError("sample_quadrature: dt must be positive");
    const long n = std::lround(std::floor(pulse.t_p() / dt_ns + 1e-9));
    std::vector<double> out;
    out.reserve(n + 1);
    for (long i = 0; i <= n; ++i) {
        const auto v = pulse.evaluate(std::min(i * dt_ns, pulse.t_p()));
        out.push_back(y_quadrature ? v.y : v.x);
    }
    return out;
}

double max_leakage(const ModelSystem& sys, const PulseShape& pulse, const QuantumState& start,
                   const QuantumState& leak, double dt_ns) {
    EvolutionProblem p = problem_from_model(sys, start, 0.0, pulse.t_p());
    p.coupling = [&pulse](double t) { return pulse.evaluate(std::clamp(t, 0.0, pulse.t_p())); };
    for (double t = dt_ns; t < pulse.t_p(); t += dt_ns) p.output_times.push_back(t);
    const auto traj = evolve_unitary(p);
    double peak = 0.0;
    for (const auto& s : traj.states) peak = std::max(peak, population(s, leak));
    return peak;
}

std::vector<DeltaSweepRow> run_delta_sweep(const std::vector<double>& deltas, const OptimizerConfig& config,
                                           int workers) {
    if (deltas.empty()) throw ValidationError("run_delta_sweep: no delta values");
    std::vector<DeltaSweepRow> rows(deltas.size());
    parallel_for(deltas.size(), workers, [&](size_t i) {
        const SingleQubitModel m{deltas[i], 0.0, 0.0};
        const auto sys = build_single_qubit(m);
        const Objective obj(sys, target_operation(m, "excited"));
        const auto res = optimize_pulse(obj, config);
        auto& row = rows[i];
        row.delta_mhz = deltas[i] / (2.0 * std::numbers::pi * 1e-3);
        row.pulse = res.pulse;
        row.fidelity = res.fidelity;
        const auto peak = dominant_frequency(sample_quadrature(res.pulse, true), 0.05);
        row.peak_mhz = peak.frequency_mhz;
        row.power_fraction = peak.power_fraction;
        const auto start = basis_state(sys.space, {1, 0});
        const auto leak = basis_state(sys.space, {2, 1});
        row.max_leakage_with_y = max_leakage(sys, res.pulse, start, leak);
        const PulseShape x_only(res.pulse.cx(), std::vector<double>(res.pulse.n_modes(), 0.0), res.pulse.t_p());
        row.max_leakage_without_y = max_leakage(sys, x_only, start, leak);
        // Lowest |1_q 0_r> population along the optimized pulse.
        EvolutionProblem p = problem_from_model(sys, start, 0.0, res.pulse.t_p());
        const auto& pulse = res.pulse;
        p.coupling = [&pulse](double t) { return pulse.evaluate(std::clamp(t, 0.0, pulse.t_p())); };
        for (double t = 0.05; t < pulse.t_p(); t += 0.05) p.output_times.push_back(t);
        const auto traj = evolve_unitary(p);
        row.min_target_population = 1.0;
        for (const auto& s : traj.states) row.min_target_population = std::min(row.min_target_population, population(s, start));
    });
    return rows;
}

void write_delta_sweep_csv(const std::vector<DeltaSweepRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "delta_mhz,peak_mhz,power_fraction,max_leakage_with_y,max_leakage_without_y\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", r.delta_mhz, r.peak_mhz, r.power_fraction,
                      r.max_leakage_with_y, r.max_leakage_without_y);
        out << buf;
    }
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace aqec
