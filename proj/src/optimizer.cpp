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

#include "aqec/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "aqec/errors.hpp"
#include "aqec/parallel.hpp"

namespace aqec {

namespace {

constexpr int kAcceptsBeforeGrowth = 3;
constexpr double kMaxStepFactor = 8.0;

double max_norm(const std::vector<double>& g) {
    double m = 0.0;
    for (double x : g) m = std::max(m, std::abs(x));
    return m;
}

std::vector<int> support_of(const Vector& v) {
    std::vector<int> s;
    for (int i = 0; i < v.size(); ++i)
        if (v(i) != Complex(0.0)) s.push_back(i);
    return s;
}

}  // namespace

Objective::Objective(const ModelSystem& sys, TargetOperation target, double rtol)
    : sys_(sys), target_(std::move(target)), rtol_(rtol) {
    target_.validate();
    if (!(rtol_ > 0.0)) throw ValidationError("Objective: rtol must be positive");
    for (const auto& p : target_.pairs) {
        if (!(p.initial.space() == sys_.space) || !(p.final.space() == sys_.space))
            throw ValidationError("Objective: target states live on a different space");
        Block b;
        b.h = ReducedHamiltonian::closure(sys_.h_static, sys_.h_x, sys_.h_y, support_of(p.initial.vector()));
        b.initial = b.h.restrict(p.initial.vector());
        b.final_conj = b.h.restrict(p.final.vector()).conjugate();
        b.outside = std::max(0.0, 1.0 - b.final_conj.squaredNorm());
        blocks_.push_back(std::move(b));
    }
}

std::vector<double> Objective::pair_fidelities(const PulseShape& pulse) const {
    const CouplingFn coupling = [&pulse](double t) { return pulse.evaluate(std::clamp(t, 0.0, pulse.t_p())); };
    std::vector<double> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) {
        if (b.final_conj.squaredNorm() == 0.0) {
            out.push_back(0.0);
            continue;
        }
        const Vector psi = propagate_reduced(b.h, b.initial, coupling, 0.0, pulse.t_p(), rtol_);
        out.push_back(std::norm(b.final_conj.cwiseProduct(psi).sum()));
    }
    return out;
}

double Objective::fidelity(const PulseShape& pulse) const {
    const auto f = pair_fidelities(pulse);
    double total = 0.0;
    for (size_t i = 0; i < f.size(); ++i) total += target_.pairs[i].weight * f[i];
    return std::clamp(total, 0.0, 1.0);
}

void OptimizerConfig::validate() const {
    if (!(epsilon > 0.0)) throw ValidationError("optimizer: epsilon must be positive");
    if (!(learning_rate > 0.0)) throw ValidationError("optimizer: learning_rate must be positive");
    if (max_iters < 0) throw ValidationError("optimizer: max_iters must be non-negative");
    if (!(target_fidelity > 0.0 && target_fidelity <= 1.0))
        throw ValidationError("optimizer: target_fidelity must lie in (0, 1]");
    if (n_modes < 1) throw ValidationError("optimizer: n_modes must be at least 1");
    if (!(t_p > 0.0)) throw ValidationError("optimizer: t_p must be positive");
    if (workers < 1) throw ValidationError("optimizer: workers must be at least 1");
}

std::vector<double> gradient(const Objective& objective, const PulseShape& pulse, double epsilon, int workers) {
    if (!(epsilon > 0.0)) throw ValidationError("gradient: epsilon must be positive");
    const auto c = pulse.coefficients();
    std::vector<double> g(c.size());
    parallel_for(c.size(), workers, [&](size_t i) {
        auto up = c, down = c;
        up[i] += epsilon;
        down[i] -= epsilon;
        g[i] = (objective.fidelity(pulse.with_coefficients(up)) - objective.fidelity(pulse.with_coefficients(down))) /
               (2.0 * epsilon);
    });
    return g;
}

OptimizeResult optimize_pulse(const Objective& objective, const OptimizerConfig& config) {
    config.validate();
    return optimize_pulse_from(objective, config, PulseShape::seeded(config.n_modes, config.t_p, config.seed_c1x));
}

OptimizeResult optimize_pulse_from(const Objective& objective, const OptimizerConfig& config,
                                   const PulseShape& start) {
    config.validate();
    OptimizeResult r;
    r.pulse = start;
    r.fidelity = objective.fidelity(start);
    double step = config.learning_rate;
    const double max_step = kMaxStepFactor * config.learning_rate;
    const double min_step = 1e-9 * config.learning_rate;
    int accepts = 0;
    r.trace.push_back({0, r.fidelity, step, 0.0});
    for (int it = 1; it <= config.max_iters; ++it) {
        if (r.fidelity >= config.target_fidelity) break;
        const auto g = gradient(objective, r.pulse, config.epsilon, config.workers);
        const double gn = max_norm(g);
        if (gn == 0.0) break;
        const auto c = r.pulse.coefficients();
        bool moved = false;
        while (step >= min_step) {
            auto trial = c;
            for (size_t i = 0; i < c.size(); ++i) trial[i] += step * g[i];
            const auto p = r.pulse.with_coefficients(trial);
            const double f = objective.fidelity(p);
            if (f > r.fidelity) {
                r.pulse = p;
                r.fidelity = f;
                moved = true;
                if (++accepts >= kAcceptsBeforeGrowth) {
                    step = std::min(2.0 * step, max_step);
                    accepts = 0;
                }
                break;
            }
            step *= 0.5;
            accepts = 0;
        }
        r.iterations = it;
        r.trace.push_back({it, r.fidelity, step, gn});
        if (!moved) break;
    }
    r.converged = r.fidelity >= config.target_fidelity;
    return r;
}

void write_trace_csv(const std::vector<TraceRow>& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "iteration,fidelity,step,grad_norm\n";
    char buf[128];
    for (const auto& row : trace) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g\n", row.iteration, row.fidelity, row.step,
                      row.grad_norm);
        out << buf;
    }
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

AscentResult ascend(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                    const std::vector<double>& scale, const std::vector<double>& lower,
                    const std::vector<double>& upper, const AscentConfig& config) {
    const size_t n = x0.size();
    if (scale.size() != n || lower.size() != n || upper.size() != n)
        throw ValidationError("ascend: parameter vectors differ in length");
    for (size_t i = 0; i < n; ++i) {
        if (!(scale[i] > 0.0)) throw ValidationError("ascend: scales must be positive");
        if (!(lower[i] <= upper[i])) throw ValidationError("ascend: empty bound interval");
        x0[i] = std::clamp(x0[i], lower[i], upper[i]);
    }
    auto clip = [&](std::vector<double> x) {
        for (size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
        return x;
    };
    AscentResult r;
    r.x = x0;
    r.value = f(r.x);
    double step = config.learning_rate;
    const double max_step = kMaxStepFactor * config.learning_rate;
    int accepts = 0;
    r.trace.push_back({0, r.value, step, 0.0});
    for (int it = 1; it <= config.max_iters; ++it) {
        std::vector<double> g(n);
        parallel_for(n, config.workers, [&](size_t i) {
            auto up = r.x, down = r.x;
            up[i] = std::min(upper[i], r.x[i] + config.epsilon * scale[i]);
            down[i] = std::max(lower[i], r.x[i] - config.epsilon * scale[i]);
            const double du = (up[i] - down[i]) / scale[i];
            g[i] = du > 0.0 ? (f(clip(up)) - f(clip(down))) / du : 0.0;
        });
        bool moved = false;
        while (step >= config.min_step) {
            auto trial = r.x;
            for (size_t i = 0; i < n; ++i) trial[i] += step * g[i] * scale[i];
            trial = clip(trial);
            const double v = f(trial);
            if (v > r.value) {
                r.x = trial;
                r.value = v;
                moved = true;
                if (++accepts >= kAcceptsBeforeGrowth) {
                    step = std::min(2.0 * step, max_step);
                    accepts = 0;
                }
                break;
            }
            step *= 0.5;
            accepts = 0;
        }
        r.iterations = it;
        r.trace.push_back({it, r.value, step, max_norm(g)});
        if (!moved) {
            r.converged = true;
            break;
        }
    }
    return r;
}

ResetScan scan_reset_time(const std::vector<double>& t_r_grid, const std::function<double(double)>& residual_at) {
    if (t_r_grid.empty()) throw ValidationError("scan_reset_time: empty grid");
    ResetScan s;
    s.t_r = t_r_grid;
    for (double t : t_r_grid) {
        if (t < 0.0) throw ValidationError("scan_reset_time: negative reset time");
        s.residual.push_back(residual_at(t));
    }
    const auto it = std::min_element(s.residual.begin(), s.residual.end());
    s.best_t_r = s.t_r[it - s.residual.begin()];
    s.best_residual = *it;
    return s;
}

}  // namespace aqec
