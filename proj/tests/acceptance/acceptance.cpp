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


// Acceptance run. One PASS/FAIL line per criterion AC1..AC8; the exit status
// is nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "aqec/analysis.hpp"
#include "aqec/config.hpp"
#include "aqec/counterterm.hpp"
#include "aqec/dynamics.hpp"
#include "aqec/experiments.hpp"
#include "aqec/optimizer.hpp"

namespace {

using namespace aqec;

constexpr double kMhz = 2.0 * std::numbers::pi * 1e-3;

int failures = 0;

void report(const char* id, bool pass, const char* fmt, ...) {
    char buf[2048];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    std::printf("%s %s: %s\n", id, pass ? "PASS" : "FAIL", buf);
    std::fflush(stdout);
    if (!pass) ++failures;
}

ExperimentConfig preset(const std::string& name) { return parse_config(preset_text(name)); }

OptimizeResult optimize_preset(const std::string& name) {
    const auto c = preset(name);
    const auto spec = c.lossless_spec();
    const auto sys = build_model(spec);
    const auto label = c.optimizer.target.empty() ? default_target_label(spec) : c.optimizer.target;
    return optimize_pulse(Objective(sys, target_operation(spec, label)), c.optimizer_config());
}

bool within(double x, double ref, double rel) { return std::abs(x / ref - 1.0) <= rel; }

VslqModel vslq(const ExperimentConfig& c, double t1_us, double gamma_s) {
    return VslqModel::with_default_shadow(c.model.w, c.model.delta, 1.0 / (t1_us * 1e3), gamma_s);
}

// ---------------------------------------------------------------------------

PulseShape ac1() {
    const auto r = optimize_preset("single-qubit-fig2");
    report("AC1", r.fidelity >= 0.9989, "single-qubit operation fidelity %.6f (require >= 0.9989), %d iterations",
           r.fidelity, r.iterations);
    return r.pulse;
}

void ac2() {
    const auto r = optimize_preset("three-qubit-fig5");
    report("AC2", 1.0 - r.fidelity <= 1e-5, "three-qubit 1-F = %.3e (require <= 1e-5), %d iterations",
           1.0 - r.fidelity, r.iterations);
}

PulseShape ac3() {
    const auto r = optimize_preset("vslq-fig6");
    report("AC3", r.fidelity >= 0.999, "VSLQ operation fidelity %.6f (require >= 0.999), %d iterations", r.fidelity,
           r.iterations);
    return r.pulse;
}

void ac4() {
    const auto c = preset("table1");
    const double tx_ref[] = {117, 2016, 5955}, ty_ref[] = {66, 1005, 2879};
    const size_t rows[] = {0, 5, 11};
    bool pass = true;
    std::string detail;
    for (int k = 0; k < 3; ++k) {
        const size_t i = rows[k];
        const double t1_us = c.sweep.t1[i] * 1e-3;
        auto m = vslq(c, t1_us, c.fixed.gamma_s[i]);
        m.omega_s = c.fixed.omega_s[i];
        const auto lt = VslqFixed(m, c.fixed.omega[i]).lifetimes();
        const double tx = lt.x.fit.lifetime, ty = lt.y.fit.lifetime;
        pass = pass && within(tx, tx_ref[k], 0.15) && within(ty, ty_ref[k], 0.15);
        char buf[200];
        std::snprintf(buf, sizeof buf, "%sT1=%g: T_X %.0f (%.0f, %+.1f%%) T_Y %.0f (%.0f, %+.1f%%)", k ? "; " : "",
                      t1_us, tx, tx_ref[k], 100 * (tx / tx_ref[k] - 1), ty, ty_ref[k], 100 * (ty / ty_ref[k] - 1));
        detail += buf;
    }
    report("AC4", pass, "%s (require within 15%%)", detail.c_str());
}

void ac5(const PulseShape& pulse) {
    const auto c = preset("fig3");
    std::vector<double> t1s;
    for (double t : c.sweep.t1) t1s.push_back(t * 1e-3);
    const auto pts = residual_scaling(c.model.delta, pulse, t1s, c.schedule.t_r_grid, c.schedule.reset_rate);
    std::vector<double> pr, cc;
    bool below = true;
    for (const auto& p : pts) {
        pr.push_back(p.pulse_reset);
        cc.push_back(p.constant.residual);
        if (p.t1_us <= 20.0) below = below && p.pulse_reset < p.constant.residual;
    }
    const double e_pr = fit_power_law(t1s, pr).exponent, e_cc = fit_power_law(t1s, cc).exponent;
    const bool ok_pr = e_pr >= -0.95 && e_pr <= -0.65, ok_cc = e_cc >= -0.85 && e_cc <= -0.55;
    report("AC5", ok_pr && ok_cc && below,
           "pulse-reset exponent %.3f [%s, require -0.95..-0.65]; constant-coupling exponent %.3f [%s, require "
           "-0.85..-0.55]; pulse-reset below constant for T1 <= 20 us [%s]",
           e_pr, ok_pr ? "ok" : "out", e_cc, ok_cc ? "ok" : "out", below ? "ok" : "no");
}

void ac6() {
    const auto c = preset("fig4");
    const auto rows = run_delta_sweep(c.sweep.deltas, c.optimizer_config());
    bool pass = true;
    std::string detail;
    for (size_t i = 0; i < rows.size(); ++i) {
        pass = pass && within(rows[i].peak_mhz, rows[i].delta_mhz, 0.25);
        if (i > 0) pass = pass && rows[i].peak_mhz > rows[i - 1].peak_mhz;
        char buf[120];
        std::snprintf(buf, sizeof buf, "%sdelta %g MHz -> peak %.1f MHz (%+.1f%%)", i ? "; " : "", rows[i].delta_mhz,
                      rows[i].peak_mhz, 100 * (rows[i].peak_mhz / rows[i].delta_mhz - 1));
        detail += buf;
    }
    report("AC6", pass, "%s (require within 25%% and increasing)", detail.c_str());
}

void ac7(const PulseShape& pulse) {
    const auto c = preset("fig7");
    bool pass = true;
    std::string detail;
    for (size_t i = 0; i < c.sweep.t1.size(); ++i) {
        const double t1_us = c.sweep.t1[i] * 1e-3;
        auto fm = vslq(c, t1_us, c.fixed.gamma_s[i]);
        fm.omega_s = c.fixed.omega_s[i];
        const auto f = VslqFixed(fm, c.fixed.omega[i]).values_at(2000.0);
        const VslqPulseReset engine(vslq(c, t1_us, 0.0), pulse, c.schedule.reset_rate);
        const double t_r = engine.scan(c.schedule.t_r_grid).best_t_r;
        const auto p = engine.values_at(t_r, 2000.0);
        pass = pass && p.x >= f.x && p.y >= f.y;
        char buf[200];
        std::snprintf(buf, sizeof buf, "%sT1=%g (t_r %g ns): X %.5f vs fixed %.5f, Y %.5f vs fixed %.5f", i ? "; " : "",
                      t1_us, t_r, p.x, f.x, p.y, f.y);
        detail += buf;
    }
    report("AC7", pass, "%s (require pulse-reset >= fixed at t = 2 us)", detail.c_str());
}

// ---------------------------------------------------------------------------
// AC8 properties.

struct Check {
    std::string name;
    bool pass;
    double value;
};

Check trace_and_positivity(double* min_eig) {
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const auto pulse = PulseShape::seeded(20, 20.0, 20 * kMhz);
    const auto sched = make_schedule(sys, 20.0, 50.0, {{"q", 2e-4}, {"r", 2e-4}}, {{"q", 2e-4}, {"r", 0.035}}, 3);
    CycleOptions opt;
    opt.samples_per_phase = 8;
    const auto traj = evolve_cycles(sys, pulse, sched, basis_state(sys.space, {0, 0}), opt);
    double drift = 0.0;
    *min_eig = 1.0;
    for (const auto& st : traj.states) {
        const Matrix rho = st.density_matrix();
        drift = std::max(drift, std::abs(rho.trace() - 1.0));
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        *min_eig = std::min(*min_eig, es.eigenvalues().minCoeff());
    }
    return {"trace drift", drift <= 1e-8, drift};
}

Check norm_drift(const PulseShape& vslq_pulse) {
    const auto sys = build_vslq(VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 0, 0));
    auto p = problem_from_model(sys, vslq_error_left(sys.space, 1), 0.0, vslq_pulse.t_p());
    p.coupling = [&](double t) { return vslq_pulse.evaluate(std::clamp(t, 0.0, vslq_pulse.t_p())); };
    for (double t = 0.5; t < vslq_pulse.t_p(); t += 0.5) p.output_times.push_back(t);
    double drift = 0.0;
    for (const auto& st : evolve_unitary(p).states) drift = std::max(drift, std::abs(st.vector().squaredNorm() - 1.0));
    return {"norm drift", drift <= 1e-8, drift};
}

Check analytic_decay() {
    const TensorSpace s({2});
    const double gamma = 0.02;
    EvolutionProblem p;
    p.h_static = p.h_x = p.h_y = Operator::zero(s);
    p.channels.push_back({Operator(s, ladder(2)), [gamma](double) { return gamma; }});
    p.initial = basis_state(s, {1});
    p.t1 = 1.0 / gamma;
    const double p1 = population(evolve_lindblad(p).final_state(), basis_state(s, {1}));
    const double err = std::abs(p1 / std::exp(-1.0) - 1.0);
    return {"analytic decay rel. error", err <= 1e-6, err};
}

Check rabi() {
    const TensorSpace s({2});
    const double omega = 20 * kMhz;
    EvolutionProblem p;
    p.h_static = p.h_y = Operator::zero(s);
    p.h_x = Operator(s, pauli_x());
    p.coupling = [omega](double) { return CouplingValue{omega, 0.0}; };
    p.initial = basis_state(s, {0});
    p.t1 = std::numbers::pi / (2.0 * omega);
    const double err = std::abs(1.0 - population(evolve_unitary(p).final_state(), basis_state(s, {1})));
    return {"Rabi transfer error", err <= 1e-8, err};
}

Check gradient_vs_scan() {
    const SingleQubitModel m{350 * kMhz, 0, 0};
    const Objective obj(build_single_qubit(m), target_operation(m, "excited"));
    const auto seed = PulseShape::seeded(20, 20.0, 20 * kMhz);
    const double g = gradient(obj, seed, 6.283185307179586e-5)[0];
    const double h = 2e-3;
    double f[5];
    for (int k = -2; k <= 2; ++k) {
        auto c = seed.coefficients();
        c[0] += k * h;
        f[k + 2] = obj.fidelity(seed.with_coefficients(c));
    }
    const double slope = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h);
    const double err = std::abs(g / slope - 1.0);
    return {"gradient vs scan rel. error", err <= 1e-4, err};
}

Check power_law() {
    std::vector<double> x, y;
    for (double v = 5; v <= 60; v += 5) {
        x.push_back(v);
        y.push_back(0.7 * std::pow(v, -0.81));
    }
    const double err = std::abs(fit_power_law(x, y).exponent + 0.81);
    return {"power-law exponent error", err <= 1e-9, err};
}

Check round_trip() {
    int bad = 0;
    for (const auto& n : preset_names()) {
        const auto c = preset(n);
        if (!(parse_config(write_config(c)) == c)) ++bad;
    }
    return {"config round-trip mismatches", bad == 0, double(bad)};
}

Check determinism(const PulseShape& pulse) {
    const std::vector<double> t1s{5, 10, 20, 40}, grid{0, 50, 100};
    const auto a = residual_scaling(350 * kMhz, pulse, t1s, grid, 0.035, 1);
    const auto b = residual_scaling(350 * kMhz, pulse, t1s, grid, 0.035, 2);
    int diff = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].pulse_reset != b[i].pulse_reset || a[i].constant.residual != b[i].constant.residual ||
            a[i].best_t_r != b[i].best_t_r)
            ++diff;
    return {"sweep rows differing across workers", diff == 0 && a.size() == t1s.size(), double(diff)};
}

void ac8(const PulseShape& single_pulse, const PulseShape& vslq_pulse) {
    double min_eig = 0.0;
    std::vector<Check> checks{trace_and_positivity(&min_eig)};
    checks.push_back({"min eigenvalue", min_eig >= -1e-7, min_eig});
    checks.push_back(norm_drift(vslq_pulse));
    checks.push_back(analytic_decay());
    checks.push_back(rabi());
    checks.push_back(gradient_vs_scan());
    checks.push_back(power_law());
    checks.push_back(round_trip());
    checks.push_back(determinism(single_pulse));
    bool pass = true;
    std::string detail;
    for (const auto& ch : checks) {
        pass = pass && ch.pass;
        char buf[120];
        std::snprintf(buf, sizeof buf, "%s%s %.2e%s", detail.empty() ? "" : "; ", ch.name.c_str(), ch.value,
                      ch.pass ? "" : " (FAILED)");
        detail += buf;
    }
    report("AC8", pass, "%s", detail.c_str());
}

template <class F>
void guarded(const char* id, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(id, false, "exception: %s", e.what());
    }
}

}  // namespace

int main() {
    PulseShape single = PulseShape::seeded(20, 20.0, 20 * kMhz);
    PulseShape vslq_pulse = PulseShape::seeded(20, 40.0, 10 * kMhz);
    guarded("AC1", [&] { single = ac1(); });
    guarded("AC2", [] { ac2(); });
    guarded("AC3", [&] { vslq_pulse = ac3(); });
    guarded("AC4", [] { ac4(); });
    guarded("AC5", [&] { ac5(single); });
    guarded("AC6", [] { ac6(); });
    guarded("AC7", [&] { ac7(vslq_pulse); });
    guarded("AC8", [&] { ac8(single, vslq_pulse); });
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
