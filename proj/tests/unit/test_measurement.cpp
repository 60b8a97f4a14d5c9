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

#include "chi_square.hpp"
#include "qkdsim/protocol.hpp"
#include "qkdsim/state.hpp"
#include "test_support.hpp"

namespace qkd {
namespace {

using testing::throws_code;

TEST(Measure, BasisStateIsDeterministicAndUnchanged) {
    const auto s = basis_state(RegisterLayout(3, {"k"}), {2});
    SeedStream rng(1);
    for (int i = 0; i < 10; ++i) {
        const auto r = measure(s, "k", rng);
        EXPECT_EQ(r.outcome, 2);
        EXPECT_EQ(r.post_state, s);
    }
    const auto branches = measurement_branches(s, "k");
    ASSERT_EQ(branches.size(), 1u);
    EXPECT_EQ(branches[0].probability, 1.0);
}

TEST(Measure, CarrierHalfFrequencyD2) {
    const auto carrier = init_carrier(2);
    SeedStream rng(12345);
    long zeros = 0;
    const long n = 100000;
    for (long i = 0; i < n; ++i) zeros += measure(carrier, "a", rng).outcome == 0 ? 1 : 0;
    const double f = static_cast<double>(zeros) / n;
    EXPECT_GE(f, 0.49);
    EXPECT_LE(f, 0.51);
}

TEST(Measure, ChiSquareAgainstUniformMarginal) {
    for (int d : {2, 3, 5}) {
        const auto carrier = init_carrier(d);
        SeedStream rng(static_cast<std::uint64_t>(1000 + d));
        std::vector<long> counts(static_cast<std::size_t>(d), 0);
        for (long i = 0; i < 100000; ++i) ++counts[static_cast<std::size_t>(measure(carrier, "b", rng).outcome)];
        const std::vector<double> uniform(static_cast<std::size_t>(d), 1.0 / d);
        EXPECT_LT(testing::chi_square_statistic(counts, uniform), testing::chi_square_critical_0001(d - 1)) << "d=" << d;
    }
}

TEST(Measure, ChiSquareAgainstNonUniformBornMarginal) {
    const RegisterLayout layout(3, {"k"});
    const PureState s(layout, {Complex(std::sqrt(0.5)), Complex(0.0, std::sqrt(0.3)), Complex(std::sqrt(0.2))});
    SeedStream rng(8);
    std::vector<long> counts(3, 0);
    for (long i = 0; i < 100000; ++i) ++counts[static_cast<std::size_t>(measure(s, "k", rng).outcome)];
    EXPECT_LT(testing::chi_square_statistic(counts, {0.5, 0.3, 0.2}), testing::chi_square_critical_0001(2));
}

TEST(Measure, CarrierCollapsesToCorrelatedPair) {
    for (int d : {2, 3, 5}) {
        const auto carrier = init_carrier(d);
        SeedStream rng(3);
        for (int i = 0; i < 20; ++i) {
            const auto r = measure(carrier, "a", rng);
            EXPECT_EQ(r.post_state, basis_state(carrier.layout(), {r.outcome, r.outcome}));
        }
    }
}

TEST(Measure, SameSeedSameOutcomes) {
    const auto carrier = init_carrier(5);
    SeedStream x(99), y(99);
    for (int i = 0; i < 200; ++i) EXPECT_EQ(measure(carrier, "a", x).outcome, measure(carrier, "a", y).outcome);
}

TEST(Measure, UnknownRegister) {
    SeedStream rng(0);
    EXPECT_TRUE(throws_code([&] { measure(init_carrier(2), "k", rng); }, ErrorCode::UnknownRegister));
}

TEST(Measure, BranchesSumToOneAndAreNormalized) {
    const auto encoded = alice_encode(init_carrier(3), 2);
    double total = 0.0;
    for (const auto& b : measurement_branches(encoded, "k")) {
        total += b.probability;
        EXPECT_NEAR(b.post_state.norm(), 1.0, 1e-12);
        EXPECT_NEAR(marginal_probabilities(b.post_state, "k")[static_cast<std::size_t>(b.outcome)], 1.0, 1e-12);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

}  // namespace
}  // namespace qkd
