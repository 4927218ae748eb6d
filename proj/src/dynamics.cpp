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

#include "aqec/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>

#include "aqec/errors.hpp"
#include "aqec/integrator.hpp"
#include "aqec/textrec.hpp"

namespace aqec {

namespace {

using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

constexpr double kUnitaryRtol = 1e-10;
constexpr double kLindbladRtol = 1e-9;
constexpr double kNormDrift = 1e-8;
constexpr double kTraceDrift = 1e-8;
constexpr double kPositivityFloor = -1e-7;

Sparse to_sparse(const Matrix& m) { return m.sparseView(Complex(1.0), 1e-300); }

bool has_coupling(const CouplingFn& c) { return static_cast<bool>(c); }

// Merges t0, t1, outputs and breakpoints into the sorted grid of segment ends.
std::vector<double> segment_grid(double t0, double t1, const std::vector<double>& outputs,
                                 const std::vector<double>& breakpoints) {
    std::vector<double> grid{t0, t1};
    for (double t : outputs)
        if (t > t0 && t < t1) grid.push_back(t);
    for (double t : breakpoints)
        if (t > t0 && t < t1) grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

bool is_output(double t, double t0, double t1, const std::vector<double>& outputs) {
    if (t == t0 || t == t1) return true;
    return std::find(outputs.begin(), outputs.end(), t) != outputs.end();
}

void check_density(const Matrix& rho, double t) {
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > kTraceDrift)
        throw IntegrityError("trace drift " + std::to_string(tr - 1.0) + " at t = " + std::to_string(t) + " ns",
                             tr - 1.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < kPositivityFloor)
        throw IntegrityError("negative eigenvalue " + std::to_string(lo) + " at t = " + std::to_string(t) + " ns",
                             lo);
}

// Sparse Lindblad right-hand side: X = H_eff rho, drho = -iX + (-iX)^dag + sum gamma L rho L^dag.
class LindbladRhs {
   public:
    LindbladRhs(const Operator& hs, const Operator& hx, const Operator& hy, const std::vector<Operator>& ops)
        : hs_(to_sparse(hs.matrix())), hx_(to_sparse(hx.matrix())), hy_(to_sparse(hy.matrix())) {
        for (const auto& op : ops) {
            l_.push_back(to_sparse(op.matrix()));
            ld_.push_back(to_sparse(op.matrix().adjoint()));
            ldl_.push_back(to_sparse(op.matrix().adjoint() * op.matrix()));
        }
    }

    size_t num_channels() const { return l_.size(); }

    void operator()(double t, const Matrix& rho, Matrix& drho, const CouplingFn& coupling,
                    const std::vector<RateFn>& rates) const {
        Matrix x = hs_ * rho;
        if (has_coupling(coupling)) {
            const auto c = coupling(t);
            if (c.x != 0.0) x += c.x * (hx_ * rho);
            if (c.y != 0.0) x += c.y * (hy_ * rho);
        }
        std::vector<double> g(l_.size());
        for (size_t k = 0; k < l_.size(); ++k) {
            g[k] = rates[k](t);
            if (g[k] != 0.0) x -= Complex(0.0, 0.5 * g[k]) * (ldl_[k] * rho);
        }
        x *= Complex(0.0, -1.0);
        drho = x + x.adjoint();
        for (size_t k = 0; k < l_.size(); ++k)
            if (g[k] != 0.0) drho += g[k] * (l_[k] * (rho * ld_[k]));
    }

   private:
    Sparse hs_, hx_, hy_;
    std::vector<Sparse> l_, ld_, ldl_;
};

struct Symmetrize {
    void operator()(Matrix& rho) const {
        Matrix h = 0.5 * (rho + rho.adjoint());
        rho.swap(h);
    }
};

}  // namespace

void EvolutionProblem::validate() const {
    const auto& sp = h_static.space();
    if (!(h_x.space() == sp) || !(h_y.space() == sp) || !(initial.space() == sp))
        throw ValidationError("EvolutionProblem: operators and initial state must share one space");
    for (const auto& c : channels) {
        if (!(c.op.space() == sp)) throw ValidationError("EvolutionProblem: channel on a different space");
        if (!c.rate) throw ValidationError("EvolutionProblem: channel without a rate function");
    }
    if (!(t1 >= t0)) throw ValidationError("EvolutionProblem: t1 < t0");
    if (!h_static.is_hermitian(1e-12) || !h_x.is_hermitian(1e-12) || !h_y.is_hermitian(1e-12))
        throw ValidationError("EvolutionProblem: Hamiltonian terms must be Hermitian");
    if (rtol < 0.0) throw ValidationError("EvolutionProblem: rtol must be non-negative");
}

EvolutionProblem problem_from_model(const ModelSystem& sys, const QuantumState& initial, double t0, double t1) {
    EvolutionProblem p;
    p.h_static = sys.h_static;
    p.h_x = sys.h_x;
    p.h_y = sys.h_y;
    for (const auto& ch : sys.channels) {
        const double r = ch.rate;
        p.channels.push_back({ch.op, [r](double) { return r; }});
    }
    p.t0 = t0;
    p.t1 = t1;
    p.initial = initial;
    return p;
}

void Trajectory::record(const std::string& name, const Operator& op) {
    std::vector<double> v;
    v.reserve(states.size());
    for (const auto& s : states) v.push_back(expectation(op, s));
    observables[name] = std::move(v);
}

void Trajectory::record_population(const std::string& name, const QuantumState& target) {
    std::vector<double> v;
    v.reserve(states.size());
    for (const auto& s : states) v.push_back(population(s, target));
    observables[name] = std::move(v);
}

const QuantumState& Trajectory::final_state() const {
    if (states.empty()) throw ValidationError("trajectory has no samples");
    return states.back();
}

ReducedHamiltonian ReducedHamiltonian::closure(const Operator& h_static, const Operator& h_x, const Operator& h_y,
                                               const std::vector<int>& support) {
    const int n = h_static.dim();
    const Matrix pattern =
        h_static.matrix().cwiseAbs().cast<Complex>() + h_x.matrix().cwiseAbs().cast<Complex>() +
        h_y.matrix().cwiseAbs().cast<Complex>();
    std::vector<char> seen(n, 0);
    std::deque<int> queue;
    for (int i : support) {
        if (i < 0 || i >= n) throw ValidationError("ReducedHamiltonian: support index out of range");
        if (!seen[i]) {
            seen[i] = 1;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        for (int j = 0; j < n; ++j)
            if (!seen[j] && pattern(j, i).real() > 0.0) {
                seen[j] = 1;
                queue.push_back(j);
            }
    }
    ReducedHamiltonian r;
    for (int i = 0; i < n; ++i)
        if (seen[i]) r.basis.push_back(i);
    const int m = static_cast<int>(r.basis.size());
    auto sub = [&](const Matrix& full) {
        Matrix out(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) out(a, b) = full(r.basis[a], r.basis[b]);
        return out;
    };
    r.h_static = sub(h_static.matrix());
    r.h_x = sub(h_x.matrix());
    r.h_y = sub(h_y.matrix());
    return r;
}

Vector ReducedHamiltonian::restrict(const Vector& full) const {
    Vector out(basis.size());
    for (size_t a = 0; a < basis.size(); ++a) out(a) = full(basis[a]);
    return out;
}

Vector ReducedHamiltonian::expand(const Vector& reduced, int full_dim) const {
    Vector out = Vector::Zero(full_dim);
    for (size_t a = 0; a < basis.size(); ++a) out(basis[a]) = reduced(a);
    return out;
}

Vector propagate_reduced(const ReducedHamiltonian& h, const Vector& psi0, const CouplingFn& coupling, double t0,
                         double t1, double rtol, const std::vector<double>& outputs, std::vector<Vector>* samples) {
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = 1e-3 * rtol;
    auto rhs = [&](double t, const Vector& y, Vector& dy) {
        dy.noalias() = h.h_static * y;
        if (has_coupling(coupling)) {
            const auto c = coupling(t);
            if (c.x != 0.0) dy.noalias() += c.x * (h.h_x * y);
            if (c.y != 0.0) dy.noalias() += c.y * (h.h_y * y);
        }
        dy *= Complex(0.0, -1.0);
    };
    Vector psi = psi0;
    double step = 0.0;
    const auto grid = segment_grid(t0, t1, outputs, {});
    if (samples) {
        samples->clear();
        samples->push_back(psi);
    }
    for (size_t i = 1; i < grid.size(); ++i) {
        dopri5(rhs, grid[i - 1], grid[i], psi, opt, step);
        if (samples) samples->push_back(psi);
    }
    return psi;
}

Trajectory evolve_unitary(const EvolutionProblem& problem) {
    problem.validate();
    if (!problem.initial.is_pure()) throw ValidationError("evolve_unitary: initial state must be pure");
    const Vector& psi0 = problem.initial.vector();
    std::vector<int> support;
    for (int i = 0; i < psi0.size(); ++i)
        if (psi0(i) != Complex(0.0)) support.push_back(i);
    const auto red = ReducedHamiltonian::closure(problem.h_static, problem.h_x, problem.h_y, support);

    const double rtol = problem.rtol > 0.0 ? problem.rtol : kUnitaryRtol;
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = 1e-3 * rtol;
    auto rhs = [&](double t, const Vector& y, Vector& dy) {
        dy.noalias() = red.h_static * y;
        if (has_coupling(problem.coupling)) {
            const auto c = problem.coupling(t);
            if (c.x != 0.0) dy.noalias() += c.x * (red.h_x * y);
            if (c.y != 0.0) dy.noalias() += c.y * (red.h_y * y);
        }
        dy *= Complex(0.0, -1.0);
    };

    const int n = problem.initial.space().total_dim();
    Trajectory traj;
    Vector psi = red.restrict(psi0);
    const double n0 = psi.squaredNorm();
    double step = 0.0;
    const auto grid = segment_grid(problem.t0, problem.t1, problem.output_times, problem.breakpoints);
    auto store = [&](double t) {
        const double drift = std::abs(psi.squaredNorm() - n0);
        if (drift > kNormDrift)
            throw IntegrityError("norm drift " + std::to_string(drift) + " at t = " + std::to_string(t) + " ns", drift);
        traj.times.push_back(t);
        traj.states.push_back(QuantumState::pure_unchecked(problem.initial.space(), red.expand(psi, n)));
    };
    store(grid.front());
    for (size_t i = 1; i < grid.size(); ++i) {
        dopri5(rhs, grid[i - 1], grid[i], psi, opt, step);
        if (is_output(grid[i], problem.t0, problem.t1, problem.output_times)) store(grid[i]);
    }
    return traj;
}

Trajectory evolve_lindblad(const EvolutionProblem& problem) {
    problem.validate();
    std::vector<Operator> ops;
    std::vector<RateFn> rates;
    for (const auto& c : problem.channels) {
        ops.push_back(c.op);
        rates.push_back(c.rate);
    }
    const LindbladRhs lrhs(problem.h_static, problem.h_x, problem.h_y, ops);
    const double rtol = problem.rtol > 0.0 ? problem.rtol : kLindbladRtol;
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = 1e-3 * rtol;

    const auto grid = segment_grid(problem.t0, problem.t1, problem.output_times, problem.breakpoints);
    for (double t : grid)
        for (const auto& r : rates)
            if (r(t) < 0.0) throw ValidationError("evolve_lindblad: negative rate at t = " + std::to_string(t));

    auto rhs = [&](double t, const Matrix& rho, Matrix& drho) { lrhs(t, rho, drho, problem.coupling, rates); };
    Matrix rho = problem.initial.density_matrix();
    Trajectory traj;
    auto store = [&](double t) {
        check_density(rho, t);
        traj.times.push_back(t);
        traj.states.push_back(QuantumState::density_unchecked(problem.initial.space(), rho));
    };
    double step = 0.0;
    store(grid.front());
    for (size_t i = 1; i < grid.size(); ++i) {
        dopri5(rhs, grid[i - 1], grid[i], rho, opt, step, nullptr, Symmetrize{});
        if (is_output(grid[i], problem.t0, problem.t1, problem.output_times)) store(grid[i]);
    }
    return traj;
}

CycleSchedule make_schedule(const ModelSystem& sys, double t_p, double t_r,
                            const std::map<std::string, double>& pulse_rates,
                            const std::map<std::string, double>& reset_rates, int n_cycles) {
    CycleSchedule s;
    s.t_p = t_p;
    s.t_r = t_r;
    s.n_cycles = n_cycles;
    for (const auto& [name, r] : pulse_rates) sys.channel(name);
    for (const auto& [name, r] : reset_rates) sys.channel(name);
    for (const auto& ch : sys.channels) {
        const auto p = pulse_rates.find(ch.name);
        s.rate_pulse[ch.name] = p != pulse_rates.end() ? p->second : ch.rate;
        const auto q = reset_rates.find(ch.name);
        s.rate_reset[ch.name] = q != reset_rates.end() ? q->second : s.rate_pulse[ch.name];
    }
    s.validate();
    return s;
}

Trajectory evolve_cycles(const ModelSystem& sys, const PulseShape& pulse, const CycleSchedule& schedule,
                         const QuantumState& initial, const CycleOptions& options) {
    schedule.validate();
    if (std::abs(schedule.t_p - pulse.t_p()) > 1e-12 * pulse.t_p())
        throw ValidationError("evolve_cycles: schedule t_p differs from the pulse duration");
    if (!(initial.space() == sys.space)) throw ValidationError("evolve_cycles: initial state on a different space");
    std::vector<Operator> ops;
    std::vector<double> pulse_rates, reset_rates;
    for (const auto& ch : sys.channels) {
        ops.push_back(ch.op);
        const auto p = schedule.rate_pulse.find(ch.name);
        const auto r = schedule.rate_reset.find(ch.name);
        if (p == schedule.rate_pulse.end() || r == schedule.rate_reset.end())
            throw ValidationError("evolve_cycles: schedule has no rate for channel '" + ch.name + "'");
        pulse_rates.push_back(p->second);
        reset_rates.push_back(r->second);
    }
    for (const auto& [name, rate] : schedule.rate_pulse) sys.channel(name);

    const LindbladRhs lrhs(sys.h_static, sys.h_x, sys.h_y, ops);
    OdeOptions opt;
    opt.rtol = options.rtol;
    opt.atol = 1e-3 * options.rtol;

    auto constant_rates = [](const std::vector<double>& v) {
        std::vector<RateFn> out;
        for (double r : v) out.push_back([r](double) { return r; });
        return out;
    };
    const auto pr = constant_rates(pulse_rates);
    const auto rr = constant_rates(reset_rates);

    Matrix rho = initial.density_matrix();
    Trajectory traj;
    auto store = [&](double t) {
        check_density(rho, t);
        traj.times.push_back(t);
        traj.states.push_back(QuantumState::density_unchecked(sys.space, rho));
    };
    store(0.0);
    const double period = schedule.period();
    const int sub = std::max(0, options.samples_per_phase) + 1;
    double step_p = 0.0, step_r = 0.0;
    for (int k = 0; k < schedule.n_cycles; ++k) {
        const double start = k * period;
        // Pulse phase: the coupling uses the time since the cycle started.
        const CouplingFn coupling = [&pulse, start](double t) {
            return pulse.evaluate(std::clamp(t - start, 0.0, pulse.t_p()));
        };
        auto rhs_p = [&](double t, const Matrix& y, Matrix& dy) { lrhs(t, y, dy, coupling, pr); };
        for (int j = 1; j <= sub; ++j) {
            const double a = start + schedule.t_p * (j - 1) / sub;
            const double b = j == sub ? start + schedule.t_p : start + schedule.t_p * j / sub;
            dopri5(rhs_p, a, b, rho, opt, step_p, nullptr, Symmetrize{});
            store(b);
        }
        if (schedule.t_r > 0.0) {
            auto rhs_r = [&](double t, const Matrix& y, Matrix& dy) { lrhs(t, y, dy, CouplingFn{}, rr); };
            for (int j = 1; j <= sub; ++j) {
                const double a = start + schedule.t_p + schedule.t_r * (j - 1) / sub;
                const double b = j == sub ? start + period : start + schedule.t_p + schedule.t_r * j / sub;
                dopri5(rhs_r, a, b, rho, opt, step_r, nullptr, Symmetrize{});
                store(b);
            }
        }
    }
    return traj;
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "time_ns";
    for (const auto& [name, v] : traj.observables) {
        if (v.size() != traj.times.size()) throw ValidationError("observable '" + name + "' has wrong length");
        out << "," << name;
    }
    out << "\n";
    char buf[40];
    for (size_t i = 0; i < traj.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", traj.times[i]);
        out << buf;
        for (const auto& [name, v] : traj.observables) {
            std::snprintf(buf, sizeof buf, "%.12g", v[i]);
            out << "," << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string trajectory_state_dump(const Trajectory& traj) {
    textrec::Document doc;
    for (size_t i = 0; i < traj.states.size(); ++i) {
        auto& sec = doc.section("sample_" + std::to_string(i));
        const auto& s = traj.states[i];
        sec.set("time", textrec::Value::of(traj.times[i], "ns"));
        sec.set("dims", textrec::Value::of(std::vector<double>(s.space().dims().begin(), s.space().dims().end())));
        std::vector<double> re, im;
        if (s.is_pure()) {
            sec.set("kind", textrec::Value::of_word("pure"));
            for (int k = 0; k < s.vector().size(); ++k) {
                re.push_back(s.vector()(k).real());
                im.push_back(s.vector()(k).imag());
            }
        } else {
            sec.set("kind", textrec::Value::of_word("density"));
            const Matrix rho = s.density_matrix();
            for (int r = 0; r < rho.rows(); ++r)
                for (int c = 0; c < rho.cols(); ++c) {
                    re.push_back(rho(r, c).real());
                    im.push_back(rho(r, c).imag());
                }
        }
        sec.set("re", textrec::Value::of(std::move(re)));
        sec.set("im", textrec::Value::of(std::move(im)));
    }
    return doc.to_text();
}

}  // namespace aqec
