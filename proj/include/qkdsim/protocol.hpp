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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qkdsim/attack_script.hpp"
#include "qkdsim/diagnostics.hpp"
#include "qkdsim/state.hpp"

namespace qkd {

inline constexpr std::string_view kStagePostEncode = "post_encode";
inline constexpr std::string_view kStagePreDecode = "pre_decode";
inline constexpr std::string_view kStagePostDecode = "post_decode";
inline constexpr std::string_view kStageRoundEnd = "round_end";

bool is_stage_tag(std::string_view tag) noexcept;

struct ProtocolConfig {
    int d = 2;
    int rounds = 1;
    /// Explicit keys (one per round) take precedence over key_seed.
    std::vector<int> keys;
    std::optional<std::uint64_t> key_seed;
    /// 1-based rounds whose keys are compared publicly.
    std::set<int> control_rounds;
    int eve_registers = 1;
    /// Drives every measurement collapse in the session.
    std::uint64_t seed = 0;
    /// Stage tags for which full diagnostics (with amplitudes) are recorded.
    std::vector<std::string> diagnostics;
    double rank_tol = tol::kSchmidtCutoff;
};

/// Throws InvalidConfig (or ValueOutOfRange for keys) naming the bad field.
void validate(const ProtocolConfig& config);

/// Keys actually used: the explicit list, or a uniform draw from key_seed.
std::vector<int> resolve_keys(const ProtocolConfig& config);

/// "e" for a single Eve register, "e1".."em" otherwise.
std::vector<std::string> eve_register_labels(int count);

enum class RoundMode { Message, Control };
std::string_view mode_name(RoundMode mode) noexcept;

struct RoundTranscript {
    int round = 0;
    RoundMode mode = RoundMode::Message;
    int key_sent = 0;
    int key_decoded = 0;
    std::vector<ClassicalRecord> eve_records;
    /// Schmidt rank of Eve's registers against everything else at round end.
    std::optional<int> rank_e;
    /// Entropy of the in-flight key qudit right after encoding.
    double entropy_k = 0.0;
    std::vector<StageDiagnostics> diagnostics;
};

struct SessionResult {
    std::vector<int> keys;
    std::vector<RoundTranscript> transcripts;
    PureState final_state;
    /// Invariants that failed while running; empty for a healthy run.
    std::vector<std::string> violations;
};

PureState init_carrier(int d);

/// Adjoins k in |q> right after b, then applies the controlled addition a -> k.
PureState alice_encode(const PureState& carrier_state, int q);

/// Bob's local inverse: controlled subtraction b -> k.
PureState bob_unentangle(const PureState& state);

struct DecodeResult {
    int q;
    PureState post_state;
};

/// Unentangles, measures k and removes it from the layout.
DecodeResult bob_decode(const PureState& state, SeedStream& rng);

SessionResult run_session(const ProtocolConfig& config, const AttackScript& script);

struct ControlStatistic {
    int checked = 0;
    int mismatches = 0;
    double rate = 0.0;
};

ControlStatistic control_check(const std::vector<RoundTranscript>& transcripts, const std::set<int>& control_rounds);

/// Transcript JSON ("transcript/1"). Amplitudes appear only inside
/// diagnostics that were requested.
Json session_to_json(const ProtocolConfig& config, const AttackScript& script, const SessionResult& result);

/// Human-oriented per-round table.
std::string session_to_text(const ProtocolConfig& config, const AttackScript& script, const SessionResult& result);

}  // namespace qkd
