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
#include <random>

#include "aqec/analysis.hpp"
#include "aqec/dynamics.hpp"
#include "aqec/errors.hpp"
#include "aqec/experiments.hpp"

namespace aqec {
namespace {

constexpr double kMhz = 2.0 * std::numbers::pi * 1e-3;

TEST(FitLifetime, SyntheticExponential) {
    std::vector<double> t, y;
    for (int i = 0; i < 20; ++i) {
        t.push_back(i * 1.5);
        y.push_back(std::exp(-t.back() / 7.0));
    }
    const auto f = fit_lifetime(t, y, DecayModel::Exp);
    EXPECT_NEAR(f.lifetime, 7.0, 1e-6);
    EXPECT_NEAR(f.amplitude, 1.0, 1e-6);
    EXPECT_GE(f.r_squared, 0.0);
    EXPECT_LE(f.r_squared, 1.0);
}

TEST(FitLifetime, SyntheticWithOffset) {
    std::vector<double> t, y;
    for (int i = 0; i < 30; ++i) {
        t.push_back(i * 2.0);
        y.push_back(0.5 * std::exp(-t.back() / 12.0) + 0.5);
    }
    const auto f = fit_lifetime(t, y, DecayModel::ExpWithOffset);
    EXPECT_NEAR(f.lifetime, 12.0, 1e-6);
    EXPECT_NEAR(f.offset, 0.5, 1e-6);
}

TEST(FitLifetime, ConstantSeriesIsDegenerate) {
    const std::vector<double> t{0, 1, 2, 3, 4, 5}, y(6, 0.8);
    EXPECT_THROW(fit_lifetime(t, y), ValidationError);
}

TEST(FitLifetime, TooFewSamples) {
    EXPECT_THROW(fit_lifetime({0, 1, 2, 3}, {1, 0.5, 0.25, 0.125}), ValidationError);
}

TEST(FitLifetime, ScaleEquivariant) {
    std::vector<double> t, ts, y;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.003);
    for (int i = 0; i < 25; ++i) {
        t.push_back(i * 0.8);
        ts.push_back(i * 0.8 * 4.0);
        y.push_back(0.9 * std::exp(-t.back() / 5.0) + 0.05 + noise(rng));
    }
    const auto a = fit_lifetime(t, y);
    const auto b = fit_lifetime(ts, y);
    EXPECT_NEAR(b.lifetime / a.lifetime, 4.0, 1e-9);
}

TEST(FitPowerLaw, ExactExponent) {
    std::vector<double> x, y;
    for (double v = 5; v <= 60; v += 5) {
        x.push_back(v);
        y.push_back(std::pow(v, -0.81));
    }
    EXPECT_NEAR(fit_power_law(x, y).exponent, -0.81, 1e-9);
}

TEST(FitPowerLaw, Quadratic) {
    const std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * v * v);
    const auto f = fit_power_law(x, y);
    EXPECT_NEAR(f.exponent, 2.0, 1e-12);
    EXPECT_NEAR(f.prefactor, 3.0, 1e-11);
}

TEST(FitPowerLaw, SeededNoise) {
    std::mt19937_64 rng(2026);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> x, y;
    for (double v = 5; v <= 60; v += 5) {
        x.push_back(v);
        y.push_back(0.3 * std::pow(v, -0.69) * (1.0 + noise(rng)));
    }
    EXPECT_NEAR(fit_power_law(x, y).exponent, -0.69, 0.03);
}

TEST(FitPowerLaw, RecoversOffset) {
    std::vector<double> x, y;
    for (double v = 5; v <= 60; v += 5) {
        x.push_back(v);
        y.push_back(0.05 * std::pow(v, -0.8) + 0.002);
    }
    const auto f = fit_power_law(x, y, true);
    EXPECT_NEAR(f.exponent, -0.8, 1e-3);
    EXPECT_NEAR(f.offset, 0.002, 1e-5);
}

TEST(FitPowerLaw, Rejections) {
    EXPECT_THROW(fit_power_law({1, 2, 3}, {1, 2, 3}), ValidationError);
    EXPECT_THROW(fit_power_law({1, 2, 3, 4}, {1, -2, 3, 4}), ValidationError);
}

TEST(Improvement, TabulatedRows) {
    DecayFit f;
    f.lifetime = 2016;
    EXPECT_NEAR(improvement_factor(f, 30), 67.2, 1e-12);
    f.lifetime = 117;
    EXPECT_NEAR(improvement_factor(f, 5), 23.4, 1e-12);
    f.lifetime = 8;
    EXPECT_EQ(improvement_factor(f, 8), 1.0);
}

TEST(ResidualError, PureStates) {
    const TensorSpace s({3, 2});
    Trajectory traj;
    traj.times = {0.0};
    traj.states = {basis_state(s, {1, 0})};
    EXPECT_NEAR(residual_error(traj, basis_state(s, {1, 0})), 0.0, 1e-15);
    EXPECT_NEAR(residual_error(traj, basis_state(s, {2, 1})), 1.0, 1e-15);
    traj.states.clear();
    EXPECT_THROW(residual_error(traj, basis_state(s, {1, 0})), ValidationError);
}

TEST(ResidualError, UncorrectedLossyQubit) {
    const double gamma = 0.01;
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const PulseShape idle(std::vector<double>(4, 0.0), std::vector<double>(4, 0.0), 20.0);
    const auto sched = make_schedule(sys, 20.0, 30.0, {{"q", gamma}}, {{"q", gamma}}, 1);
    const auto start = basis_state(sys.space, {1, 0});
    const double r = residual_error(evolve_cycles(sys, idle, sched, start), start);
    EXPECT_NEAR(r, 1.0 - std::exp(-gamma * 50.0), 1e-6);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
}

// Per-cycle route: <X_L> sampled once per microsecond over a short window and
// fit over the cycle index. Long route: the adaptive long-time window.
TEST(LongTimeDecay, PerCycleFitMatchesLongEvolution) {
    auto m = VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 1.0 / 5000.0, 24.66e-3);
    m.omega_s = 209.75 * kMhz;
    const VslqFixed fixed(m, 2.94 * kMhz);
    const auto lt = fixed.lifetimes();
    std::vector<double> k, x;
    for (int i = 1; i <= 40; ++i) {
        k.push_back(i);
        x.push_back(fixed.values_at(i * 1000.0).x);
    }
    const double per_cycle = fit_lifetime(k, x, DecayModel::Exp).lifetime;  // in 1 us cycles
    EXPECT_NEAR(per_cycle / lt.x.fit.lifetime, 1.0, 0.05);
}

TEST(LongTimeDecay, RecoversDiagonalMapRate) {
    // A 2x2 map with eigenvalues exp(-dt/T) and 1, read through a row picking
    // the decaying component plus a constant.
    const double dt = 1000.0, t_us = 37.0;
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(-1.0 / t_us);
    m(1, 1) = 1.0;
    Vector v0(2);
    v0 << 1.0, 1.0;
    Eigen::RowVectorXcd row(2);
    row << 0.6, 0.2;
    const auto d = long_time_decay(m, dt, v0, row, 10.0);
    EXPECT_NEAR(d.fit.lifetime, t_us, 1e-6 * t_us);
    EXPECT_NEAR(d.fit.offset, 0.2, 1e-8);
}

TEST(FitRecords, CarryProvenance) {
    DecayFit f;
    f.lifetime = 12.5;
    const auto rec = decay_fit_record(f, {{"config_hash", "abc"}});
    EXPECT_NE(rec.find("config_hash"), std::string::npos);
    EXPECT_NE(rec.find("12.5"), std::string::npos);
    ScalingFit s;
    s.exponent = -0.81;
    EXPECT_NE(scaling_fit_record(s, {{"grid", "5..60"}}).find("-0.81"), std::string::npos);
}

}  // namespace
}  // namespace aqec
