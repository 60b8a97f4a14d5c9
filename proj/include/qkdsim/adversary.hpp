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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qkdsim/attack_script.hpp"
#include "qkdsim/json_format.hpp"
#include "qkdsim/protocol.hpp"

namespace qkd {

/// |x, 0>_{k,e} -> |x, x>_{k,e}: controlled addition k -> e.
/// If e is not in |0>, a warning is appended to `warnings` (when given) and
/// the gate is applied anyway.
PureState eve_entangle(const PureState& state, const std::string& e = "e",
                       std::vector<std::string>* warnings = nullptr);

/// |x, x>_{k,e} -> |x, 0>_{k,e}: controlled subtraction k -> e.
PureState eve_disentangle(const PureState& state, const std::string& e = "e");

inline constexpr std::string_view kPresetNone = "none";
inline constexpr std::string_view kPresetPersistentEntangle = "persistent_entangle";
inline constexpr std::string_view kPresetReplyOddStopRestart = "reply_odd_stop_restart";
inline constexpr std::string_view kPresetInterceptResend = "intercept_resend";

bool is_preset(std::string_view name) noexcept;

/// Builds the script for a named preset. Custom scripts are passed through
/// the other overload.
AttackScript compile_schedule(std::string_view preset, const ProtocolConfig& config);
AttackScript compile_schedule(const AttackScript& custom, const ProtocolConfig& config);

/// Checks every action against the registers Eve can reach in `config`:
/// IllegalRegisterAccess for a or b, ScriptRegisterUnknown for anything
/// else that is not k (pre_bob only) or one of Eve's registers, and
/// InvalidConfig for rounds outside 1..rounds.
void validate_script(const AttackScript& script, const ProtocolConfig& config);

struct ScriptStep {
    PureState state;
    std::vector<ClassicalRecord> records;
};

/// Runs the actions of `round` whose timing matches, in order.
ScriptStep apply_script(const PureState& state, const AttackScript& script, int round, Timing timing,
                        SeedStream& rng);

/// {"rounds": {"1": [{"op": "cadd", "control": "k", "target": "e", "s": 1, "timing": "pre_bob"}]}}
AttackScript script_from_json(const Json& value, int d);
Json script_to_json(const AttackScript& script);

/// One gate in the script format, without the timing field.
Json gate_to_json(const GateSpec& gate);

struct ConditionalStates {
    /// Key tuples in lexicographic order.
    std::vector<std::vector<int>> key_tuples;
    /// Eve's quantum registers at session end, classical records averaged
    /// out; nullopt when Eve holds no registers.
    std::vector<std::optional<DensityMatrix>> eve_states;
    /// Max trace distance between Eve's full conditional states (quantum
    /// registers plus records) over key tuples that differ only in round r.
    std::vector<double> max_distance_per_round;
    /// Max over all pairs of key tuples; only computed for at most 1024 tuples.
    std::optional<double> max_pairwise_distance;
};

/// Exact (branching, not sampled) sweep over every key assignment.
/// Throws ExplosionGuard when d^rounds exceeds 10^4.
ConditionalStates eve_conditional_states(const ProtocolConfig& config, const AttackScript& script);

}  // namespace qkd
