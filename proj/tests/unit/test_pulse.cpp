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

#include "aqec/errors.hpp"
#include "aqec/pulse.hpp"

namespace aqec {
namespace {

constexpr double kMhz = 2.0 * std::numbers::pi * 1e-3;

TEST(Pulse, VanishesAtEnds) {
    const PulseShape p({0.1, -0.2, 0.3}, {0.05, 0.0, -0.07}, 40.0);
    for (double t : {0.0, 40.0}) {
        const auto v = p.evaluate(t);
        EXPECT_NEAR(v.x, 0.0, 1e-15);
        EXPECT_NEAR(v.y, 0.0, 1e-15);
    }
}

TEST(Pulse, FirstModeAtMidpoint) {
    const PulseShape p({0.3, 0.0}, {0.0, 0.0}, 40.0);
    EXPECT_NEAR(p.evaluate(20.0).x, 0.3, 1e-15);
    const PulseShape q({0.0, 0.3}, {0.0, 0.0}, 40.0);
    EXPECT_NEAR(q.evaluate(20.0).x, 0.0, 1e-15);
}

TEST(Pulse, RejectsOutsideWindow) {
    const auto p = PulseShape::seeded(20, 40.0, 10 * kMhz);
    EXPECT_THROW(p.evaluate(-1e-3), ValidationError);
    EXPECT_THROW(p.evaluate(40.001), ValidationError);
    EXPECT_THROW(PulseShape({}, {}, 40.0), ValidationError);
    EXPECT_THROW(PulseShape({0.1}, {0.1}, 0.0), ValidationError);
}

TEST(Pulse, SeededLayout) {
    const auto p = PulseShape::seeded(20, 20.0, 20 * kMhz);
    EXPECT_EQ(p.n_modes(), 20);
    EXPECT_DOUBLE_EQ(p.cx()[0], 20 * kMhz);
    for (int n = 1; n < 20; ++n) EXPECT_EQ(p.cx()[n], 0.0);
    for (double c : p.cy()) EXPECT_EQ(c, 0.0);
}

TEST(Pulse, TextRoundTrip) {
    const PulseShape p({0.1, 1.0 / 3.0, -2.5e-7}, {std::numbers::pi, 0.0, 1e-300}, 37.5);
    EXPECT_EQ(pulse_from_text(pulse_to_text(p)), p);
}

TEST(Pulse, CoefficientsRoundTrip) {
    const PulseShape p({0.1, 0.2}, {0.3, 0.4}, 10.0);
    EXPECT_EQ(p.with_coefficients(p.coefficients()), p);
    EXPECT_THROW(p.with_coefficients({1.0}), ValidationError);
}

CycleSchedule schedule() {
    CycleSchedule s;
    s.t_p = 40.0;
    s.t_r = 60.0;
    s.rate_pulse = {{"q", 1e-5}, {"r", 1e-5}};
    s.rate_reset = {{"q", 1e-5}, {"r", 0.035}};
    s.n_cycles = 3;
    return s;
}

TEST(Schedule, RatesByPhase) {
    const auto s = schedule();
    EXPECT_EQ(schedule_rate(s, "r", 20.0), 1e-5);
    EXPECT_EQ(schedule_rate(s, "r", 40.0 + 30.0), 0.035);
    EXPECT_EQ(schedule_rate(s, "r", 100.0 + 4.0), 1e-5);
    EXPECT_THROW(schedule_rate(s, "sl", 1.0), ValidationError);
}

TEST(Schedule, CouplingOffDuringReset) {
    const auto s = schedule();
    const PulseShape p({0.3}, {0.1}, 40.0);
    EXPECT_NEAR(schedule_coupling(s, p, 120.0).x, 0.3, 1e-15);
    EXPECT_EQ(schedule_coupling(s, p, 70.0).x, 0.0);
    EXPECT_EQ(schedule_coupling(s, p, 70.0).y, 0.0);
}

}  // namespace
}  // namespace aqec
