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

#include "aqec/counterterm.hpp"
#include "aqec/errors.hpp"

namespace aqec {
namespace {

constexpr double kMhz = 2.0 * std::numbers::pi * 1e-3;

std::vector<double> sine(double f_mhz, double amp = 1.0, double dt = 0.05, double t = 40.0) {
    std::vector<double> s;
    for (int i = 0; i * dt <= t; ++i) s.push_back(amp * std::sin(2.0 * std::numbers::pi * f_mhz * 1e-3 * i * dt));
    return s;
}

TEST(Spectrum, SyntheticTone) {
    const auto s = sine(100.0);
    const double bin = 1e3 / (s.size() * 0.05);
    const auto p = dominant_frequency(s, 0.05);
    EXPECT_NEAR(p.frequency_mhz, 100.0, bin);
    EXPECT_GE(p.power_fraction, 0.0);
    EXPECT_LE(p.power_fraction, 1.0);
}

TEST(Spectrum, ConstantSeries) {
    EXPECT_EQ(dominant_frequency(std::vector<double>(100, 2.5), 0.05).frequency_mhz, 0.0);
}

TEST(Spectrum, AmplitudeInvariant) {
    const auto a = dominant_frequency(sine(230.0), 0.05);
    const auto b = dominant_frequency(sine(230.0, 3.7), 0.05);
    EXPECT_NEAR(a.frequency_mhz, b.frequency_mhz, 1e-9);
    EXPECT_NEAR(a.power_fraction, b.power_fraction, 1e-12);
}

TEST(Spectrum, WithinNyquist) {
    const double dt = 0.5;  // Nyquist 1000 MHz
    for (double f : {10.0, 400.0, 990.0}) {
        const auto p = dominant_frequency(sine(f, 1.0, dt, 200.0), dt);
        EXPECT_GE(p.frequency_mhz, 0.0);
        EXPECT_LE(p.frequency_mhz, 1000.0);
    }
}

TEST(Spectrum, TooFewSamples) {
    EXPECT_THROW(dominant_frequency(std::vector<double>(63, 1.0), 0.05), ValidationError);
}

TEST(Quadrature, SamplesSpanPulse) {
    const PulseShape p({0.1}, {0.2}, 20.0);
    const auto y = sample_quadrature(p, true, 0.05);
    EXPECT_EQ(y.size(), 401u);
    EXPECT_NEAR(y.front(), 0.0, 1e-15);
    EXPECT_NEAR(y[200], p.evaluate(10.0).y, 1e-15);
}

class DeltaSweep : public ::testing::Test {
   protected:
    static void SetUpTestSuite() {
        OptimizerConfig cfg;
        cfg.t_p = 20.0;
        cfg.seed_c1x = 20 * kMhz;
        cfg.target_fidelity = 0.99999;
        cfg.max_iters = 100;
        rows_ = run_delta_sweep({350 * kMhz}, cfg);
    }
    static std::vector<DeltaSweepRow> rows_;
};
std::vector<DeltaSweepRow> DeltaSweep::rows_;

TEST_F(DeltaSweep, ForcingCyToZeroLeaksMore) {
    ASSERT_EQ(rows_.size(), 1u);
    EXPECT_GT(rows_[0].max_leakage_without_y, rows_[0].max_leakage_with_y);
}

TEST_F(DeltaSweep, TargetPopulationStaysHigh) {
    EXPECT_GT(rows_[0].min_target_population, 0.99);
}

TEST_F(DeltaSweep, LeakageMatchesDirectEvaluation) {
    const auto sys = build_single_qubit({350 * kMhz, 0, 0});
    const double l = max_leakage(sys, rows_[0].pulse, basis_state(sys.space, {1, 0}), basis_state(sys.space, {2, 1}));
    EXPECT_NEAR(l, rows_[0].max_leakage_with_y, 1e-12);
}

TEST(DeltaSweepInput, EmptyRejected) { EXPECT_THROW(run_delta_sweep({}, OptimizerConfig{}), ValidationError); }

}  // namespace
}  // namespace aqec
