// Copyright 2026 The qkdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "qkdsim/adversary.hpp"
#include "qkdsim/protocol.hpp"
#include "test_support.hpp"

namespace qkd {
namespace {

using testing::throws_code;

ProtocolConfig sweep(int d, int rounds, int eve = 1) {
    ProtocolConfig c;
    c.d = d;
    c.rounds = rounds;
    c.key_seed = 0;
    c.eve_registers = eve;
    return c;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

TEST(ConditionalStates, NoAttackLeaksNothing) {
    const auto config = sweep(3, 2);
    const auto cs = eve_conditional_states(config, compile_schedule("none", config));
    EXPECT_EQ(cs.key_tuples.size(), 9u);
    EXPECT_EQ(cs.key_tuples.front(), (std::vector<int>{0, 0}));
    EXPECT_EQ(cs.key_tuples.back(), (std::vector<int>{2, 2}));
    EXPECT_LE(max_of(cs.max_distance_per_round), 1e-12);
    ASSERT_TRUE(cs.max_pairwise_distance);
    EXPECT_LE(*cs.max_pairwise_distance, 1e-12);
}

TEST(ConditionalStates, SingleEntangledRoundLeaksNothing) {
    const auto config = sweep(3, 1);
    const auto cs = eve_conditional_states(config, compile_schedule("persistent_entangle", config));
    ASSERT_EQ(cs.eve_states.size(), 3u);
    for (const auto& rho : cs.eve_states) {
        ASSERT_TRUE(rho);
        EXPECT_LE(testing::max_abs_diff(rho->entries(), Eigen::MatrixXcd::Identity(3, 3) / 3.0), 1e-12);
    }
    EXPECT_LE(cs.max_distance_per_round.at(0), 1e-12);
}

TEST(ConditionalStates, EntangleThenReverseNextRoundRevealsDifference) {
    for (int d : {2, 3}) {
        const auto config = sweep(d, 2);
        AttackScript script;
        script.rounds[1].push_back({GateSpec{ControlledAdd{"k", "e", 1}}, Timing::PreBob});
        script.rounds[2].push_back({GateSpec{ControlledAdd{"k", "e", d - 1}}, Timing::PreBob});
        const auto cs = eve_conditional_states(config, script);
        for (std::size_t i = 0; i < cs.key_tuples.size(); ++i) {
            const auto& q = cs.key_tuples[i];
            const int diff = ((q[0] - q[1]) % d + d) % d;
            Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(d, d);
            projector(diff, diff) = 1.0;
            EXPECT_LE(testing::max_abs_diff(cs.eve_states[i]->entries(), projector), 1e-12);
        }
        EXPECT_NEAR(cs.max_distance_per_round.at(0), 1.0, 1e-12);
        EXPECT_NEAR(cs.max_distance_per_round.at(1), 1.0, 1e-12);
    }
}

TEST(ConditionalStates, InterceptResendRecordsNeedTwoRounds) {
    // One intercepted round: the record j + q is uniform whatever q is.
    const auto one = sweep(2, 1);
    EXPECT_LE(eve_conditional_states(one, compile_schedule("intercept_resend", one)).max_distance_per_round.at(0), 1e-12);

    // From the second round on the carrier is collapsed and records differ by q2 - q1.
    const auto two = sweep(2, 2);
    const auto cs = eve_conditional_states(two, compile_schedule("intercept_resend", two));
    EXPECT_NEAR(cs.max_distance_per_round.at(0), 1.0, 1e-12);
    EXPECT_NEAR(cs.max_distance_per_round.at(1), 1.0, 1e-12);
}

TEST(ConditionalStates, NoEveRegistersGivesNoQuantumState) {
    const auto config = sweep(2, 2, 0);
    const auto cs = eve_conditional_states(config, compile_schedule("none", config));
    for (const auto& rho : cs.eve_states) EXPECT_FALSE(rho);
}

TEST(ConditionalStates, ExplosionGuard) {
    const auto config = sweep(10, 5);
    EXPECT_TRUE(throws_code([&] { eve_conditional_states(config, compile_schedule("none", config)); },
                            ErrorCode::ExplosionGuard));
}

}  // namespace
}  // namespace qkd
