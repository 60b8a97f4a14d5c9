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

#include <random>

#include "dense_oracle.hpp"
#include "qkdsim/adversary.hpp"
#include "qkdsim/feasibility.hpp"
#include "qkdsim/protocol.hpp"
#include "test_support.hpp"

namespace qkd {
namespace {

using testing::max_abs_diff;
using testing::random_state;
using testing::throws_code;
using testing::to_oracle;

PureState with_eve(const PureState& s) { return insert_register(s, "e", 0, s.layout().size()); }

ProtocolConfig session(int d, int rounds, int eve = 1) {
    ProtocolConfig c;
    c.d = d;
    c.rounds = rounds;
    c.key_seed = 31;
    c.eve_registers = eve;
    return c;
}

TEST(EveEntangle, QuotedMapOnRoundOneTemplateD2) {
    const auto s = eve_entangle(with_eve(alice_encode(init_carrier(2), 1)), "e");
    const double r = 1.0 / std::sqrt(2.0);
    const auto& layout = s.layout();
    std::vector<Complex> expected(16);
    expected[layout.index_of(std::vector<int>{0, 0, 1, 1})] = r;
    expected[layout.index_of(std::vector<int>{1, 1, 0, 0})] = r;
    EXPECT_EQ(s, PureState(layout, expected));
}

TEST(EveEntangle, BasisInputCopiesKey) {
    const RegisterLayout layout(3, {"k", "e"});
    EXPECT_EQ(eve_entangle(basis_state(layout, {2, 0})), basis_state(layout, {2, 2}));
}

TEST(EveEntangle, RaisesSchmidtRankToD) {
    for (int d : {2, 3, 5}) {
        const auto before = with_eve(alice_encode(init_carrier(d), 1));
        EXPECT_EQ(schmidt_rank(before, {"e"}), 1);
        const auto after = eve_entangle(before);
        EXPECT_EQ(schmidt_rank(after, {"e"}), d);
        EXPECT_EQ(oracle::schmidt_rank(to_oracle(after), {"e"}), d);
    }
}

TEST(EveEntangle, WarnsWhenEveIsNotBlank) {
    const RegisterLayout layout(3, {"k", "e"});
    std::vector<std::string> warnings;
    (void)eve_entangle(basis_state(layout, {1, 1}), "e", &warnings);
    EXPECT_EQ(warnings.size(), 1u);
    warnings.clear();
    (void)eve_entangle(basis_state(layout, {1, 0}), "e", &warnings);
    EXPECT_TRUE(warnings.empty());
}

TEST(EveEntangle, MissingRegisters) {
    EXPECT_TRUE(throws_code([] { eve_entangle(alice_encode(init_carrier(2), 0)); }, ErrorCode::MissingRegister));
    EXPECT_TRUE(throws_code([] { eve_disentangle(with_eve(init_carrier(2))); }, ErrorCode::MissingRegister));
}

TEST(EveDisentangle, StageFiveReversalRestoresProduct) {
    for (int d : {2, 3, 5}) {
        for (int q1 = 0; q1 < d; ++q1) {
            const auto stage5 = stage5_round1_template(d).build(std::vector<int>{q1});
            const auto out = eve_disentangle(stage5);
            EXPECT_EQ(schmidt_rank(out, {"e"}), 1);
            EXPECT_NEAR(marginal_probabilities(out, "e")[0], 1.0, 1e-12);
            EXPECT_EQ(out, with_eve(alice_encode(init_carrier(d), q1)));
        }
    }
}

TEST(EveDisentangle, InversePairIsExactIdentity) {
    std::mt19937_64 rng(8);
    for (int d : {2, 3, 5}) {
        for (int i = 0; i < 10; ++i) {
            const auto s = with_eve(random_state(RegisterLayout(d, {"a", "b", "k"}), rng));
            EXPECT_EQ(eve_disentangle(eve_entangle(s)), s);
        }
    }
}

TEST(EveDisentangle, EvenRoundTemplateLeavesKeyDifference) {
    for (int d : {2, 3}) {
        const auto tmpl = post_round1_round2_template(d);
        for (int q1 = 0; q1 < d; ++q1) {
            for (int q2 = 0; q2 < d; ++q2) {
                const auto out = eve_disentangle(tmpl.build(std::vector<int>{q1, q2}));
                EXPECT_EQ(schmidt_rank(out, {"e"}), 1);
                const int expected = ((q1 - q2) % d + d) % d;
                EXPECT_NEAR(marginal_probabilities(out, "e")[static_cast<std::size_t>(expected)], 1.0, 1e-12);

                // Full-space oracle: same state built from scratch.
                const oracle::Space space{d, {"a", "b", "k", "e"}};
                std::vector<std::pair<oracle::Values, oracle::cplx>> terms;
                for (int j = 0; j < d; ++j) terms.push_back({{j, j, j + q2, j + q1}, 1.0});
                const auto reference =
                    oracle::apply(oracle::cadd_matrix(space, "k", "e", d - 1), oracle::superposition(space, terms));
                EXPECT_EQ(oracle::schmidt_rank(reference, {"e"}), 1);
                EXPECT_NEAR(oracle::marginal(reference, "e")[static_cast<std::size_t>(expected)], 1.0, 1e-12);
            }
        }
    }
}

TEST(CompileSchedule, PresetShapes) {
    EXPECT_EQ(compile_schedule("none", session(3, 6)).action_count(), 0u);

    const auto odd = compile_schedule("reply_odd_stop_restart", session(3, 4));
    std::vector<int> rounds;
    for (const auto& [round, actions] : odd.rounds) {
        if (!actions.empty()) rounds.push_back(round);
    }
    EXPECT_EQ(rounds, (std::vector<int>{1, 3}));
    ASSERT_EQ(odd.actions_for(1).size(), 2u);
    EXPECT_EQ(describe(odd.actions_for(1)[0]), "cadd(k->e, s=1)@pre_bob");
    EXPECT_EQ(describe(odd.actions_for(1)[1]), "cadd(k->e, s=2)@pre_bob");

    for (int n : {1, 5, 9}) {
        const auto persistent = compile_schedule("persistent_entangle", session(2, n));
        EXPECT_EQ(persistent.action_count(), 1u);
        EXPECT_EQ(persistent.actions_for(1).size(), 1u);
    }

    const auto intercept = compile_schedule("intercept_resend", session(2, 3));
    EXPECT_EQ(intercept.action_count(), 3u);
    EXPECT_TRUE(std::holds_alternative<MeasureRegister>(intercept.actions_for(2)[0].op));
}

TEST(CompileSchedule, Errors) {
    EXPECT_TRUE(throws_code([] { compile_schedule("bogus", session(2, 2)); }, ErrorCode::UnknownPreset));
    EXPECT_TRUE(throws_code([] { compile_schedule("persistent_entangle", session(2, 2, 0)); }, ErrorCode::InvalidConfig));
    EXPECT_NO_THROW(compile_schedule("none", session(2, 2, 0)));
}

TEST(ApplyScript, EmptyScriptLeavesStateUnchanged) {
    SeedStream rng(0);
    const auto s = with_eve(alice_encode(init_carrier(3), 2));
    const auto step = apply_script(s, AttackScript{}, 1, Timing::PreBob, rng);
    EXPECT_EQ(step.state, s);
    EXPECT_TRUE(step.records.empty());
}

TEST(ApplyScript, TouchingAliceOrBobIsIllegal) {
    AttackScript script;
    script.rounds[1].push_back({GateSpec{Shift{"a", 1}}, Timing::PreBob});
    SeedStream rng(0);
    EXPECT_TRUE(throws_code([&] { apply_script(with_eve(alice_encode(init_carrier(2), 0)), script, 1, Timing::PreBob, rng); },
                            ErrorCode::IllegalRegisterAccess));
    EXPECT_TRUE(throws_code([&] { validate_script(script, session(2, 2)); }, ErrorCode::IllegalRegisterAccess));
    AttackScript measure_b;
    measure_b.rounds[1].push_back({MeasureRegister{"b"}, Timing::PostDecode});
    EXPECT_TRUE(throws_code([&] { validate_script(measure_b, session(2, 2)); }, ErrorCode::IllegalRegisterAccess));
}

TEST(ApplyScript, ValidationOfRegistersAndRounds) {
    AttackScript unknown;
    unknown.rounds[1].push_back({GateSpec{Shift{"e2", 1}}, Timing::PreBob});
    EXPECT_TRUE(throws_code([&] { validate_script(unknown, session(2, 2)); }, ErrorCode::ScriptRegisterUnknown));
    AttackScript late_k;
    late_k.rounds[1].push_back({GateSpec{Shift{"k", 1}}, Timing::PostDecode});
    EXPECT_TRUE(throws_code([&] { validate_script(late_k, session(2, 2)); }, ErrorCode::ScriptRegisterUnknown));
    AttackScript out_of_range;
    out_of_range.rounds[3].push_back({GateSpec{Shift{"e", 1}}, Timing::PreBob});
    EXPECT_TRUE(throws_code([&] { validate_script(out_of_range, session(2, 2)); }, ErrorCode::InvalidConfig));
}

TEST(ApplyScript, MeasurementsProduceRecords) {
    AttackScript script;
    script.rounds[1].push_back({MeasureRegister{"k"}, Timing::PreBob});
    SeedStream rng(5);
    const auto step = apply_script(with_eve(alice_encode(init_carrier(3), 1)), script, 1, Timing::PreBob, rng);
    ASSERT_EQ(step.records.size(), 1u);
    EXPECT_EQ(step.records[0].round, 1);
    EXPECT_EQ(step.records[0].label, "k");
    EXPECT_EQ(apply_script(step.state, script, 1, Timing::PostDecode, rng).records.size(), 0u);
}

TEST(ApplyScript, RoundOneEntangleGoesUndetected) {
    for (int d : {2, 3, 5}) {
        auto config = session(d, 1);
        config.keys = {d - 1};
        config.key_seed.reset();
        AttackScript script;
        script.rounds[1].push_back({GateSpec{ControlledAdd{"k", "e", 1}}, Timing::PreBob});
        const auto result = run_session(config, compile_schedule(script, config));
        EXPECT_EQ(result.transcripts[0].key_decoded, d - 1);
        EXPECT_EQ(schmidt_rank(result.final_state, {"e"}), d);
    }
}

TEST(Locality, EveOnlyScriptsLeaveAliceAndBobUntouched) {
    std::mt19937_64 rng(13);
    for (int d : {2, 3}) {
        const auto encoded = insert_register(insert_register(alice_encode(init_carrier(d), 1), "e1", 0, 3), "e2", 0, 4);
        const auto before = partial_trace(encoded, {"a", "b"});
        for (int trial = 0; trial < 10; ++trial) {
            AttackScript script;
            auto& actions = script.rounds[1];
            actions.push_back({GateSpec{Fourier{"e1"}}, Timing::PreBob});
            actions.push_back({GateSpec{ControlledAdd{"e1", "e2", 1 + trial % (d - 1)}}, Timing::PreBob});
            actions.push_back({GateSpec{DenseGate({"e2", "e1"}, oracle::random_unitary(d * d, rng))}, Timing::PreBob});
            actions.push_back({MeasureRegister{"e2"}, Timing::PreBob});
            SeedStream srng(static_cast<std::uint64_t>(trial));
            const auto after = apply_script(encoded, script, 1, Timing::PreBob, srng).state;
            EXPECT_LE(max_abs_diff(partial_trace(after, {"a", "b"}).entries(), before.entries()), 1e-12);
        }
    }
}

TEST(Schedules, ReplyOddKeepsEveProductAtEveryRoundEnd) {
    for (int d : {2, 3, 5}) {
        auto config = session(d, 8);
        config.diagnostics = {"round_end"};
        const auto result = run_session(config, compile_schedule("reply_odd_stop_restart", config));
        for (const auto& t : result.transcripts) {
            EXPECT_EQ(t.rank_e, 1) << "d=" << d << " round " << t.round;
            EXPECT_EQ(t.diagnostics.at(0).rank(kCutEveVsAB), 1);
            EXPECT_EQ(t.key_decoded, t.key_sent);
        }
    }
}

TEST(Schedules, PersistentEntangleRoundOneRankIsD) {
    for (int d : {2, 3, 5}) {
        auto config = session(d, 1);
        config.diagnostics = {"post_decode"};
        const auto result = run_session(config, compile_schedule("persistent_entangle", config));
        EXPECT_EQ(result.transcripts[0].diagnostics.at(0).rank(kCutEveVsAB), d);
        EXPECT_EQ(schmidt_rank(result.final_state, {"e"}), d);
    }
}

TEST(ScriptJson, RoundTripAndDefaults) {
    const Json doc = Json::parse(R"({"rounds": {"2": [
        {"op": "cadd", "control": "k", "target": "e", "s": 1},
        {"op": "phase", "target": "e", "s": 1, "timing": "post_decode"},
        {"op": "dense", "targets": ["e"], "matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]},
        {"op": "measure", "target": "e", "timing": "post_decode"}]}})");
    const auto script = script_from_json(doc, 2);
    ASSERT_EQ(script.actions_for(2).size(), 4u);
    EXPECT_EQ(script.actions_for(2)[0].timing, Timing::PreBob);
    EXPECT_EQ(script.actions_for(2)[1].timing, Timing::PostDecode);
    const auto again = script_from_json(script_to_json(script), 2);
    EXPECT_EQ(dump_json(script_to_json(again)), dump_json(script_to_json(script)));
}

TEST(ScriptJson, ErrorsNameTheField) {
    const auto expect_field = [](const char* text, const std::string& field) {
        try {
            (void)script_from_json(Json::parse(text), 3);
            ADD_FAILURE() << "accepted " << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
            EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
        }
    };
    expect_field(R"({"rounds": {"1": [{"op": "cadd", "control": "k", "target": "e", "s": 3}]}})",
                 "attack.script.rounds.1[0].s");
    expect_field(R"({"rounds": {"1": [{"op": "swap", "target": "e"}]}})", "attack.script.rounds.1[0].op");
    expect_field(R"({"rounds": {"1": [{"op": "shift", "target": "e", "colour": 1}]}})", "colour");
    expect_field(R"({"rounds": {"x": []}})", "attack.script.rounds.x");
    expect_field(R"({"rounds": {"1": [{"op": "shift", "target": "e", "timing": "later"}]}})", "timing");
    expect_field(R"({"rounds": {"1": [{"op": "dense", "targets": ["e"], "matrix": [[[2, 0], [0, 0]], [[0, 0], [1, 0]]]}]}})",
                 "matrix");
}

}  // namespace
}  // namespace qkd
