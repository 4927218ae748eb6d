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

#include <numbers>

#include "aqec/errors.hpp"
#include "aqec/models.hpp"

namespace aqec {
namespace {

constexpr double kMhz = 2.0 * std::numbers::pi * 1e-3;

TEST(Models, ChannelNames) {
    const auto s = build_single_qubit({350 * kMhz, 1e-5, 2e-5});
    ASSERT_EQ(s.channels.size(), 2u);
    EXPECT_EQ(s.channel("q").rate, 1e-5);
    EXPECT_EQ(s.channel("r").rate, 2e-5);
    const auto v = build_vslq(VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 1e-5, 0.01));
    EXPECT_EQ(v.channel("sl").rate, 0.01);
    EXPECT_EQ(v.channel("l").rate, 1e-5);
    EXPECT_THROW(v.channel("q"), ValidationError);
}

TEST(Models, DefaultShadowFrequency) {
    const auto m = VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 0, 0);
    EXPECT_NEAR(m.omega_s, 210 * kMhz, 1e-15);
}

TEST(Models, LogicalStatesAreStaticEigenstates) {
    const auto sys = build_vslq(VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 0, 0));
    const auto lg = vslq_logical(sys.space);
    for (const auto* s : {&lg.zero, &lg.one}) {
        const Vector h = sys.h_static.matrix() * s->vector();
        const Complex e = s->vector().dot(h);
        EXPECT_LT((h - e * s->vector()).norm(), 1e-12);
    }
}

TEST(Models, ErrorStatesNormalized) {
    const auto sys = build_vslq(VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 0, 0));
    for (int sign : {1, -1}) {
        EXPECT_NEAR(vslq_error_left(sys.space, sign).vector().norm(), 1.0, 1e-14);
        EXPECT_NEAR(vslq_error_right(sys.space, sign).vector().norm(), 1.0, 1e-14);
    }
}

TEST(Models, MajorityVote) {
    EXPECT_EQ(majority_vote({0, 0, 0}), 0);
    EXPECT_EQ(majority_vote({1, 0, 0}), 0);
    EXPECT_EQ(majority_vote({1, 1, 0}), 1);
    EXPECT_EQ(majority_vote({1, 1, 1}), 1);
}

TEST(Targets, WeightsSumToOne) {
    const std::vector<std::pair<ModelSpec, std::string>> cases{
        {SingleQubitModel{350 * kMhz, 0, 0}, "excited"},
        {ThreeQubitModel{20 * kMhz, 0, 0}, "0L"},
        {ThreeQubitModel{20 * kMhz, 0, 0}, "1L"},
        {ThreeQubitModel{20 * kMhz, 0, 0}, "both"},
        {VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 0, 0), "logical"}};
    for (const auto& [spec, label] : cases) {
        const auto t = target_operation(spec, label);
        double w = 0.0;
        for (const auto& p : t.pairs) w += p.weight;
        EXPECT_NEAR(w, 1.0, 1e-14) << label;
        EXPECT_NO_THROW(t.validate());
    }
    EXPECT_EQ(target_operation(ThreeQubitModel{20 * kMhz, 0, 0}, "both").pairs.size(), 8u);
    EXPECT_THROW(target_operation(SingleQubitModel{1.0, 0, 0}, "logical"), ValidationError);
}

TEST(Targets, VslqMapsErrorsIntoShadowExcitations) {
    const auto spec = VslqModel::with_default_shadow(35 * kMhz, 350 * kMhz, 0, 0);
    const auto t = target_operation(spec, "logical");
    ASSERT_EQ(t.pairs.size(), 6u);
    // Code states stay put; every error branch ends with exactly one shadow photon.
    const auto sys = build_vslq(spec);
    const Operator n_s = embed(number_op(2), 0, sys.space) + embed(number_op(2), 3, sys.space);
    int stay = 0;
    for (const auto& p : t.pairs) {
        if (overlap_sq(p.initial, p.final) > 1.0 - 1e-12) {
            ++stay;
            continue;
        }
        EXPECT_NEAR(expectation(n_s, p.final), 1.0, 1e-12);
    }
    EXPECT_EQ(stay, 2);
}

TEST(Validity, WarnsForStrongCoupling) {
    const SingleQubitModel m{350 * kMhz, 0, 0};
    EXPECT_TRUE(validity_warnings(m, 1e-3).empty());
    EXPECT_FALSE(validity_warnings(m, 350 * kMhz).empty());
}

}  // namespace
}  // namespace aqec
