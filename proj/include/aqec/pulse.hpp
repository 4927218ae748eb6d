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

// Two-quadrature coupling pulses in a Fourier-sine basis, and the alternating
// pulse/reset schedule they are played in.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace aqec {

struct CouplingValue {
    double x = 0.0;  // rad/ns
    double y = 0.0;  // rad/ns
};

/// Omega_{x,y}(t) = sum_{n=1..N} c_n^{x,y} sin(n pi t / t_p). Vanishes at both ends.
class PulseShape {
   public:
    PulseShape() = default;
    PulseShape(std::vector<double> cx, std::vector<double> cy, double t_p);

    /// c_1^x = seed_c1x, every other coefficient zero.
    static PulseShape seeded(int n_modes, double t_p, double seed_c1x);

    int n_modes() const { return static_cast<int>(cx_.size()); }
    double t_p() const { return t_p_; }
    const std::vector<double>& cx() const { return cx_; }
    const std::vector<double>& cy() const { return cy_; }

    /// Flat view [cx..., cy...] used by the optimizers.
    std::vector<double> coefficients() const;
    PulseShape with_coefficients(const std::vector<double>& flat) const;

    /// Throws ValidationError for t outside [0, t_p].
    CouplingValue evaluate(double t) const;

    /// Largest |Omega_x| or |Omega_y| over a uniform grid of `samples` points.
    double peak_amplitude(int samples = 2001) const;

    bool operator==(const PulseShape&) const = default;

   private:
    std::vector<double> cx_;
    std::vector<double> cy_;
    double t_p_ = 0.0;
};

enum class CyclePhase { Pulse, Reset };

/// Alternating pulse (coupling on, low loss) and reset (coupling off, high loss)
/// phases. Rates are piecewise constant and switch at phase boundaries.
struct CycleSchedule {
    double t_p = 0.0;  // ns
    double t_r = 0.0;  // ns
    std::map<std::string, double> rate_pulse;  // channel -> 1/ns
    std::map<std::string, double> rate_reset;  // channel -> 1/ns
    int n_cycles = 1;

    double period() const { return t_p + t_r; }
    void validate() const;
};

/// Phase at time t. Boundaries belong to the phase that starts there, except
/// that the very end of a pulse (t mod period == t_p) counts as the reset.
CyclePhase phase_at(const CycleSchedule& schedule, double t);

/// Position within the current cycle, in [0, period).
double cycle_offset(const CycleSchedule& schedule, double t);

double schedule_rate(const CycleSchedule& schedule, const std::string& channel, double t);

CouplingValue schedule_coupling(const CycleSchedule& schedule, const PulseShape& pulse, double t);

// Plain structured-text record (see textrec.hpp), 17 significant digits.
std::string pulse_to_text(const PulseShape& pulse);
PulseShape pulse_from_text(const std::string& text);
void save_pulse(const PulseShape& pulse, const std::filesystem::path& path);
PulseShape load_pulse(const std::filesystem::path& path);

}  // namespace aqec
