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

#include "aqec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "aqec/errors.hpp"
#include "aqec/parallel.hpp"

namespace aqec {

namespace {

double t1_of(double gamma) {
    if (!(gamma > 0.0)) throw ValidationError("primary loss rate must be positive");
    return 1e-3 / gamma;
}

double value(const Eigen::RowVectorXcd& row, const Vector& v) { return (row * v)(0).real(); }

// Single-qubit sector: every (j, k) of the 6-dim space.
SectorLiouvillian full_sector(const ModelSystem& sys) {
    const int n = sys.space.total_dim();
    return SectorLiouvillian(sys, {Matrix::Ones(n, n)});
}

}  // namespace

// ---------------------------------------------------------------------------

SingleQubitCycle::SingleQubitCycle(double delta, const PulseShape& pulse, double t1_us, double gamma_r_reset,
                                   double rtol)
    : sys_(build_single_qubit({delta, 0.0, 0.0})),
      sector_(full_sector(sys_)),
      gamma_q_(1e-3 / t1_us),
      gamma_r_reset_(gamma_r_reset) {
    if (!(t1_us > 0.0)) throw ValidationError("SingleQubitCycle: T1 must be positive");
    if (!(gamma_r_reset >= 0.0)) throw ValidationError("SingleQubitCycle: reset rate must be non-negative");
    pulse_map_ = sector_.pulse_map(pulse, {gamma_q_, gamma_q_}, rtol);
    const auto target = basis_state(sys_.space, {1, 0});
    start_ = sector_.vec(target.density_matrix());
    row_ = sector_.observable_row(Operator(sys_.space, target.density_matrix()));
}

double SingleQubitCycle::residual(double t_r) const {
    if (t_r < 0.0) throw ValidationError("SingleQubitCycle: negative reset time");
    Vector v = pulse_map_ * start_;
    if (t_r > 0.0) v = sector_.constant_map({}, {gamma_q_, gamma_r_reset_}, t_r) * v;
    return std::clamp(1.0 - value(row_, v), 0.0, 1.0);
}

ResetScan SingleQubitCycle::scan(const std::vector<double>& t_r_grid) const {
    return scan_reset_time(t_r_grid, [this](double t_r) { return residual(t_r); });
}

double constant_coupling_residual(double delta, double t1_us, double omega, double gamma_r) {
    if (!(t1_us > 0.0)) throw ValidationError("constant coupling: T1 must be positive");
    const auto sys = build_single_qubit({delta, 0.0, 0.0});
    const SectorLiouvillian sector = full_sector(sys);
    const Vector v = sector.steady_state(sector.generator({omega, 0.0}, {1e-3 / t1_us, gamma_r}));
    const auto target = basis_state(sys.space, {1, 0});
    const auto row = sector.observable_row(Operator(sys.space, target.density_matrix()));
    return std::clamp(1.0 - value(row, v), 0.0, 1.0);
}

ConstantCoupling best_constant_coupling(double delta, double t1_us, const AscentConfig& config) {
    // Search in log coordinates: Omega in [1e-4, 1] rad/ns, Gamma_r in [1e-4, 1] 1/ns.
    const double lo = std::log(1e-4), hi = 0.0;
    auto fidelity = [&](const std::vector<double>& x) {
        return 1.0 - constant_coupling_residual(delta, t1_us, std::exp(x[0]), std::exp(x[1]));
    };
    std::vector<double> best{lo, lo};
    double best_f = -1.0;
    constexpr int kGrid = 24;
    for (int i = 0; i <= kGrid; ++i)
        for (int j = 0; j <= kGrid; ++j) {
            const std::vector<double> x{lo + (hi - lo) * i / kGrid, lo + (hi - lo) * j / kGrid};
            const double f = fidelity(x);
            if (f > best_f) {
                best_f = f;
                best = x;
            }
        }
    const auto r = ascend(fidelity, best, {1.0, 1.0}, {lo, lo}, {hi, hi}, config);
    ConstantCoupling c;
    c.residual = 1.0 - r.value;
    c.omega = std::exp(r.x[0]);
    c.gamma_r = std::exp(r.x[1]);
    return c;
}

std::vector<ResidualPoint> residual_scaling(double delta, const PulseShape& pulse, const std::vector<double>& t1s_us,
                                            const std::vector<double>& t_r_grid, double gamma_r_reset,
                                            int workers) {
    if (t1s_us.empty()) throw ValidationError("residual_scaling: empty T1 axis");
    std::vector<ResidualPoint> out(t1s_us.size());
    parallel_for(t1s_us.size(), workers, [&](size_t i) {
        const SingleQubitCycle cycle(delta, pulse, t1s_us[i], gamma_r_reset);
        const auto s = cycle.scan(t_r_grid);
        out[i].t1_us = t1s_us[i];
        out[i].pulse_reset = s.best_residual;
        out[i].best_t_r = s.best_t_r;
        out[i].constant = best_constant_coupling(delta, t1s_us[i]);
    });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

SectorLiouvillian vslq_sector(const ModelSystem& sys, const VslqLogical& lg) {
    return SectorLiouvillian(sys, {lg.zero.density_matrix(), lg.y_plus.density_matrix()});
}

// Lifetime guesses from the fixed-parameter regime: T_X ~ 40 T1, T_Y ~ 20 T1.
constexpr double kGuessX = 40.0;
constexpr double kGuessY = 20.0;

}  // namespace

VslqFixed::VslqFixed(const VslqModel& m, double omega)
    : sys_(build_vslq(m)), sector_(vslq_sector(sys_, vslq_logical(sys_.space))), t1_us_(t1_of(m.gamma_p)) {
    if (!(m.gamma_s > 0.0)) throw ValidationError("VslqFixed: shadow loss must be positive");
    const auto lg = vslq_logical(sys_.space);
    std::vector<double> rates;
    for (const auto& ch : sys_.channels) rates.push_back(ch.rate);
    generator_ = sector_.generator({omega, 0.0}, rates);
    vx_ = sector_.vec(lg.zero.density_matrix());
    vy_ = sector_.vec(lg.y_plus.density_matrix());
    rx_ = sector_.observable_row(lg.x_l);
    ry_ = sector_.observable_row(lg.y_l);
}

LogicalLifetimes VslqFixed::lifetimes(const LongTimeOptions& options) const {
    constexpr double kStepNs = 1000.0;
    const Matrix base = (Matrix(generator_) * Complex(kStepNs)).exp();
    LogicalLifetimes out;
    out.x = long_time_decay(base, kStepNs, vx_, rx_, kGuessX * t1_us_, options);
    out.y = long_time_decay(base, kStepNs, vy_, ry_, kGuessY * t1_us_, options);
    return out;
}

LogicalValues VslqFixed::values_at(double t_ns) const {
    if (t_ns < 0.0) throw ValidationError("VslqFixed: negative time");
    const Matrix m = (Matrix(generator_) * Complex(t_ns)).exp();
    return {value(rx_, m * vx_), value(ry_, m * vy_)};
}

VslqPulseReset::VslqPulseReset(const VslqModel& m, const PulseShape& pulse, double gamma_s_reset, double rtol)
    : sys_(build_vslq(m)),
      pulse_(pulse),
      sector_(vslq_sector(sys_, vslq_logical(sys_.space))),
      rtol_(rtol),
      t1_us_(t1_of(m.gamma_p)) {
    if (!(gamma_s_reset > 0.0)) throw ValidationError("VslqPulseReset: reset rate must be positive");
    for (const auto& ch : sys_.channels) {
        const bool shadow = ch.name == "sl" || ch.name == "sr";
        pulse_rates_.push_back(m.gamma_p);
        reset_rates_.push_back(shadow ? gamma_s_reset : m.gamma_p);
    }
    pulse_map_ = sector_.pulse_map(pulse_, pulse_rates_, rtol_);
    const auto lg = vslq_logical(sys_.space);
    vx_ = sector_.vec(lg.zero.density_matrix());
    vy_ = sector_.vec(lg.y_plus.density_matrix());
    rx_ = sector_.observable_row(lg.x_l);
    ry_ = sector_.observable_row(lg.y_l);
}

Matrix VslqPulseReset::cycle_map(double t_r) const {
    if (t_r < 0.0) throw ValidationError("VslqPulseReset: negative reset time");
    if (t_r == 0.0) return pulse_map_;
    return sector_.constant_map({}, reset_rates_, t_r) * pulse_map_;
}

LogicalLifetimes VslqPulseReset::lifetimes(double t_r, const LongTimeOptions& options) const {
    const Matrix c = cycle_map(t_r);
    const double period = pulse_.t_p() + t_r;
    LogicalLifetimes out;
    out.x = long_time_decay(c, period, vx_, rx_, kGuessX * t1_us_, options);
    out.y = long_time_decay(c, period, vy_, ry_, kGuessY * t1_us_, options);
    return out;
}

LogicalValues VslqPulseReset::values_at(double t_r, double t_ns) const {
    if (t_ns < 0.0) throw ValidationError("VslqPulseReset: negative time");
    const double period = pulse_.t_p() + t_r;
    const long k = static_cast<long>(std::floor(t_ns / period + 1e-12));
    const double rem = std::max(0.0, t_ns - k * period);
    Matrix m = matrix_power(cycle_map(t_r), k);
    if (rem > 1e-9) {
        if (rem < pulse_.t_p())
            m = sector_.pulse_map(pulse_, pulse_rates_, rtol_, rem) * m;
        else
            m = sector_.constant_map({}, reset_rates_, rem - pulse_.t_p()) * (pulse_map_ * m);
    }
    return {value(rx_, m * vx_), value(ry_, m * vy_)};
}

ResetScan VslqPulseReset::scan(const std::vector<double>& t_r_grid, const LongTimeOptions& options) const {
    return scan_reset_time(t_r_grid, [&](double t_r) {
        const Matrix c = cycle_map(t_r);
        return 1.0 / long_time_decay(c, pulse_.t_p() + t_r, vx_, rx_, kGuessX * t1_us_, options).fit.lifetime;
    });
}

FixedOptimum optimize_fixed_parameters(const VslqModel& base, const FixedParameters& start,
                                       const FixedParameters& lower, const FixedParameters& upper,
                                       const AscentConfig& config, const LongTimeOptions& options) {
    const std::vector<double> x0{start.omega, start.gamma_s, start.omega_s};
    for (double s : x0)
        if (!(s > 0.0)) throw ValidationError("optimize_fixed_parameters: start values must be positive");
    auto model_at = [&](const std::vector<double>& x) {
        VslqModel m = base;
        m.gamma_s = x[1];
        m.omega_s = x[2];
        return m;
    };
    auto t_x = [&](const std::vector<double>& x) {
        try {
            return VslqFixed(model_at(x), x[0]).lifetimes(options).x.fit.lifetime;
        } catch (const ConvergenceError&) {
            return 0.0;
        }
    };
    // omega_s enters through a narrow resonance; scale it by the detuning
    // range rather than its absolute value.
    const std::vector<double> scale{start.omega, start.gamma_s, 0.01 * start.omega_s};
    FixedOptimum out;
    out.ascent = ascend(t_x, x0, scale, {lower.omega, lower.gamma_s, lower.omega_s},
                        {upper.omega, upper.gamma_s, upper.omega_s}, config);
    out.params = {out.ascent.x[0], out.ascent.x[1], out.ascent.x[2]};
    out.lifetimes = VslqFixed(model_at(out.ascent.x), out.params.omega).lifetimes(options);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Operator majority_projector(const TensorSpace& space, int logical) {
    const int n = space.total_dim();
    Matrix p = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const auto occ = space.occupations(i);
        if (majority_vote({occ[0], occ[1], occ[2]}) == logical) p(i, i) = 1.0;
    }
    return Operator(space, p);
}

}  // namespace

ThreeQubitPulseReset::ThreeQubitPulseReset(const ThreeQubitModel& m, const PulseShape& pulse, double gamma_r_reset,
                                           double rtol)
    : sys_(build_three_qubit(m)),
      sector_(sys_, {three_qubit_code(sys_.space).zero.density_matrix(),
                     three_qubit_code(sys_.space).one.density_matrix()}),
      t_e_us_(t1_of(m.gamma_p)) {
    if (!(gamma_r_reset > 0.0)) throw ValidationError("ThreeQubitPulseReset: reset rate must be positive");
    for (const auto& ch : sys_.channels) {
        const bool lossy = ch.name[0] == 'r';
        pulse_rates_.push_back(m.gamma_p);
        reset_rates_.push_back(lossy ? gamma_r_reset : m.gamma_p);
    }
    pulse_map_ = sector_.pulse_map(pulse, pulse_rates_, rtol);
    const auto code = three_qubit_code(sys_.space);
    v0_ = sector_.vec(code.zero.density_matrix());
    v1_ = sector_.vec(code.one.density_matrix());
    r0_ = sector_.observable_row(majority_projector(sys_.space, 0));
    r1_ = sector_.observable_row(majority_projector(sys_.space, 1));
    period_t_p_ = pulse.t_p();
}

LongTimeDecay ThreeQubitPulseReset::lifetime(int logical, double t_r, const LongTimeOptions& options) const {
    if (logical != 0 && logical != 1) throw ValidationError("ThreeQubitPulseReset: logical must be 0 or 1");
    if (t_r < 0.0) throw ValidationError("ThreeQubitPulseReset: negative reset time");
    Matrix c = pulse_map_;
    if (t_r > 0.0) c = sector_.constant_map({}, reset_rates_, t_r) * c;
    return long_time_decay(c, period_t_p_ + t_r, logical ? v1_ : v0_, logical ? r1_ : r0_, 10.0 * t_e_us_,
                           options);
}

ResetScan ThreeQubitPulseReset::scan(int logical, const std::vector<double>& t_r_grid,
                                     const LongTimeOptions& options) const {
    return scan_reset_time(t_r_grid,
                           [&](double t_r) { return 1.0 / lifetime(logical, t_r, options).fit.lifetime; });
}

}  // namespace aqec
