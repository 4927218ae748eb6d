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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "aqec/dynamics.hpp"
#include "aqec/errors.hpp"
#include "aqec/liouville.hpp"
#include "aqec/models.hpp"

namespace aqec {
namespace {

constexpr double kMhz = 2.0 * std::numbers::pi * 1e-3;

CouplingFn pulse_fn(const PulseShape& p) {
    return [p](double t) { return p.evaluate(std::clamp(t, 0.0, p.t_p())); };
}

PulseShape test_pulse() { return PulseShape({20 * kMhz, 0.0, 3 * kMhz}, {0.0, 2 * kMhz, 0.0}, 20.0); }

TEST(Unitary, ZeroHamiltonianIsIdentity) {
    const TensorSpace s({3, 2});
    const auto psi = QuantumState::normalized(s, Vector::Ones(6));
    EvolutionProblem p;
    p.h_static = p.h_x = p.h_y = Operator::zero(s);
    p.initial = psi;
    p.t1 = 100.0;
    p.output_times = {10.0, 50.0};
    const auto traj = evolve_unitary(p);
    for (const auto& st : traj.states) EXPECT_LT((st.vector() - psi.vector()).norm(), 1e-14);
}

TEST(Unitary, RabiPiPulseTransfer) {
    // Two-level restriction {|00>, |11>} with constant off-diagonal coupling.
    const TensorSpace s({2});
    const double omega = 20 * kMhz;
    EvolutionProblem p;
    p.h_static = Operator::zero(s);
    p.h_x = Operator(s, pauli_x());
    p.h_y = Operator::zero(s);
    p.coupling = [omega](double) { return CouplingValue{omega, 0.0}; };
    p.initial = basis_state(s, {0});
    p.t1 = std::numbers::pi / (2.0 * omega);
    const auto traj = evolve_unitary(p);
    EXPECT_NEAR(population(traj.final_state(), basis_state(s, {1})), 1.0, 1e-8);
}

TEST(Unitary, NormPreserved) {
    const auto sys = build_vslq(VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 0, 0));
    const auto pulse = PulseShape({10 * kMhz, 4 * kMhz}, {1 * kMhz, -2 * kMhz}, 40.0);
    auto p = problem_from_model(sys, vslq_error_left(sys.space, 1), 0.0, 40.0);
    p.coupling = pulse_fn(pulse);
    for (double t = 1.0; t < 40.0; t += 1.0) p.output_times.push_back(t);
    for (const auto& st : evolve_unitary(p).states) EXPECT_NEAR(st.vector().norm(), 1.0, 1e-8);
}

TEST(Unitary, LeakageMatchesDenseExponential) {
    const double delta = 350 * kMhz, omega = 5 * kMhz;
    const auto sys = build_single_qubit({delta, 0, 0});
    auto p = problem_from_model(sys, basis_state(sys.space, {1, 0}), 0.0, 200.0);
    p.coupling = [omega](double) { return CouplingValue{omega, 0.0}; };
    for (int k = 1; k < 200; ++k) p.output_times.push_back(k * 1.0);
    const auto traj = evolve_unitary(p);
    const Matrix h = (sys.h_static + Complex(omega) * sys.h_x).matrix();
    const auto leak = basis_state(sys.space, {2, 1});
    const Vector psi0 = basis_state(sys.space, {1, 0}).vector();
    double peak = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const Vector ref = (Matrix(h * Complex(0.0, -traj.times[i]))).exp() * psi0;
        EXPECT_LT((traj.states[i].vector() - ref).norm(), 1e-8);
        peak = std::max(peak, population(traj.states[i], leak));
    }
    const double scale = 2.0 * omega * omega / (delta * delta);
    EXPECT_LT(peak, 4.0 * scale);
    EXPECT_GT(peak, 0.0);
}

TEST(Unitary, RejectsMixedInitial) {
    const TensorSpace s({2});
    EvolutionProblem p;
    p.h_static = p.h_x = p.h_y = Operator::zero(s);
    p.initial = basis_state(s, {0}).to_density();
    p.t1 = 1.0;
    EXPECT_THROW(evolve_unitary(p), ValidationError);
}

TEST(Unitary, ToleranceHalvingIsStable) {
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const auto pulse = PulseShape::seeded(20, 20.0, 20 * kMhz);
    auto fid = [&](double rtol) {
        auto p = problem_from_model(sys, basis_state(sys.space, {0, 0}), 0.0, 20.0);
        p.coupling = pulse_fn(pulse);
        p.rtol = rtol;
        return population(evolve_unitary(p).final_state(), basis_state(sys.space, {1, 1}));
    };
    EXPECT_LT(std::abs(fid(1e-10) - fid(5e-11)), 1e-9);
}

EvolutionProblem decay_problem(double gamma, double t1) {
    const TensorSpace s({2});
    EvolutionProblem p;
    p.h_static = p.h_x = p.h_y = Operator::zero(s);
    p.channels.push_back({Operator(s, ladder(2)), [gamma](double) { return gamma; }});
    p.initial = basis_state(s, {1});
    p.t1 = t1;
    return p;
}

TEST(Lindblad, AnalyticDecay) {
    const double gamma = 0.02;
    const auto traj = evolve_lindblad(decay_problem(gamma, 1.0 / gamma));
    const double p1 = population(traj.final_state(), basis_state(traj.final_state().space(), {1}));
    EXPECT_NEAR(p1 / std::exp(-1.0), 1.0, 1e-6);
}

TEST(Lindblad, NoChannelsNoHamiltonianIsConstant) {
    auto p = decay_problem(0.0, 50.0);
    p.channels.clear();
    const auto traj = evolve_lindblad(p);
    EXPECT_LT((traj.final_state().density_matrix() - p.initial.density_matrix()).norm(), 1e-14);
}

TEST(Lindblad, BitFlipDephasesSigmaZ) {
    const auto sys = build_three_qubit({20 * kMhz, 0, 0});
    const double gamma = 0.01;
    EvolutionProblem p;
    p.h_static = p.h_x = p.h_y = Operator::zero(sys.space);
    p.channels.push_back({embed(pauli_x(), 0, sys.space), [gamma](double) { return gamma; }});
    p.initial = three_qubit_code(sys.space).zero;
    p.t1 = 60.0;
    p.output_times = {15.0, 30.0, 45.0};
    const auto traj = evolve_lindblad(p);
    const auto z = embed(pauli_z(), 0, sys.space);
    for (size_t i = 0; i < traj.times.size(); ++i)
        EXPECT_NEAR(expectation(z, traj.states[i]), std::exp(-2.0 * gamma * traj.times[i]), 1e-8);
}

TEST(Lindblad, MatchesUnitaryWithoutLoss) {
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const auto pulse = test_pulse();
    auto p = problem_from_model(sys, basis_state(sys.space, {0, 0}), 0.0, pulse.t_p());
    p.coupling = pulse_fn(pulse);
    p.output_times = {5.0, 10.0, 15.0};
    const auto u = evolve_unitary(p);
    const auto l = evolve_lindblad(p);
    for (size_t i = 0; i < u.times.size(); ++i)
        EXPECT_LT((l.states[i].density_matrix() - u.states[i].density_matrix()).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Lindblad, TraceHermiticityPositivityAlongCycles) {
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const auto pulse = test_pulse();
    const auto sched = make_schedule(sys, pulse.t_p(), 30.0, {{"q", 1e-3}, {"r", 1e-3}}, {{"r", 0.05}}, 3);
    CycleOptions opt;
    opt.samples_per_phase = 5;
    const auto traj = evolve_cycles(sys, pulse, sched, basis_state(sys.space, {0, 0}), opt);
    ASSERT_GE(traj.times.size(), 7u);
    for (const auto& st : traj.states) {
        const Matrix rho = st.density_matrix();
        EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-8);
        EXPECT_LT((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-7);
    }
}

TEST(Cycles, ZeroCyclesReturnsInitial) {
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const auto pulse = test_pulse();
    const auto sched = make_schedule(sys, pulse.t_p(), 30.0, {}, {}, 0);
    const auto traj = evolve_cycles(sys, pulse, sched, basis_state(sys.space, {1, 0}));
    ASSERT_EQ(traj.states.size(), 1u);
    EXPECT_EQ(traj.times[0], 0.0);
}

TEST(Cycles, IdleCodeStateUnchanged) {
    const auto sys = build_vslq(VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 0, 0));
    const PulseShape idle({0.0, 0.0}, {0.0, 0.0}, 40.0);
    const auto sched = make_schedule(sys, 40.0, 20.0, {}, {}, 2);
    const auto zero = vslq_logical(sys.space).zero;
    const auto traj = evolve_cycles(sys, idle, sched, zero);
    EXPECT_LT((traj.final_state().density_matrix() - zero.density_matrix()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Cycles, RecordsEveryPhaseBoundary) {
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const auto pulse = test_pulse();
    const auto sched = make_schedule(sys, pulse.t_p(), 30.0, {}, {{"r", 0.05}}, 2);
    const auto traj = evolve_cycles(sys, pulse, sched, basis_state(sys.space, {1, 0}));
    const std::vector<double> expected{0.0, 20.0, 50.0, 70.0, 100.0};
    ASSERT_EQ(traj.times.size(), expected.size());
    for (size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(traj.times[i], expected[i], 1e-12);
}

TEST(Cycles, RejectsMismatchedDuration) {
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const auto sched = make_schedule(sys, 40.0, 30.0, {}, {}, 1);
    EXPECT_THROW(evolve_cycles(sys, test_pulse(), sched, basis_state(sys.space, {1, 0})), ValidationError);
}

// The sector transfer maps against direct master-equation integration.
TEST(Liouville, CycleMapMatchesDirectEvolution) {
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const auto pulse = test_pulse();
    const auto sched = make_schedule(sys, pulse.t_p(), 25.0, {{"q", 1e-3}, {"r", 1e-3}}, {{"q", 1e-3}, {"r", 0.035}}, 2);
    const QuantumState start = QuantumState::normalized(sys.space, Vector::Ones(6));
    const auto traj = evolve_cycles(sys, pulse, sched, start, {0, 1e-10});
    const int n = sys.space.total_dim();
    const SectorLiouvillian sector(sys, {Matrix::Ones(n, n)});
    const Matrix m = sector.cycle_map(pulse, sched, sys, 1e-10);
    const Vector v = m * (m * sector.vec(start.density_matrix()));
    EXPECT_LT((sector.unvec(v) - traj.final_state().density_matrix()).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Liouville, SteadyStateIsNullVector) {
    const auto sys = build_single_qubit({350 * kMhz, 1e-4, 0.02});
    const int n = sys.space.total_dim();
    const SectorLiouvillian sector(sys, {Matrix::Ones(n, n)});
    const auto l = sector.generator({5 * kMhz, 0.0}, {1e-4, 0.02});
    const Vector v = sector.steady_state(l);
    EXPECT_LT((l * v).norm(), 1e-10);
    EXPECT_NEAR(std::abs((sector.trace_row() * v)(0) - 1.0), 0.0, 1e-12);
}

}  // namespace
}  // namespace aqec
