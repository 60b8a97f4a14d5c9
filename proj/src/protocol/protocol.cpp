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

#include "qkdsim/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "qkdsim/adversary.hpp"
#include "qkdsim/error.hpp"
#include "qkdsim/gate.hpp"

namespace qkd {

namespace {

constexpr std::string_view kStages[] = {kStagePostEncode, kStagePreDecode, kStagePostDecode, kStageRoundEnd};

bool wants(const ProtocolConfig& config, std::string_view stage) {
    return std::find(config.diagnostics.begin(), config.diagnostics.end(), stage) != config.diagnostics.end();
}

}  // namespace

bool is_stage_tag(std::string_view tag) noexcept {
    return std::find(std::begin(kStages), std::end(kStages), tag) != std::end(kStages);
}

std::string_view mode_name(RoundMode mode) noexcept { return mode == RoundMode::Control ? "control" : "message"; }

void validate(const ProtocolConfig& config) {
    if (config.d < 2 || config.d > RegisterLayout::kMaxDimension) {
        throw Error(ErrorCode::InvalidConfig, "d: must be in [2, 16], got " + std::to_string(config.d));
    }
    if (config.rounds < 1) throw Error(ErrorCode::InvalidConfig, "rounds: must be positive");
    if (config.keys.empty() && !config.key_seed) {
        throw Error(ErrorCode::InvalidConfig, "keys: need an explicit list or a seed");
    }
    if (!config.keys.empty() && static_cast<int>(config.keys.size()) != config.rounds) {
        throw Error(ErrorCode::InvalidConfig, "keys: expected " + std::to_string(config.rounds) + " values, got " +
                                                  std::to_string(config.keys.size()));
    }
    for (std::size_t i = 0; i < config.keys.size(); ++i) {
        if (config.keys[i] < 0 || config.keys[i] >= config.d) {
            throw Error(ErrorCode::ValueOutOfRange, "keys[" + std::to_string(i) + "]: value " +
                                                        std::to_string(config.keys[i]) + " outside [0, " +
                                                        std::to_string(config.d) + ")");
        }
    }
    for (int r : config.control_rounds) {
        if (r < 1 || r > config.rounds) {
            throw Error(ErrorCode::InvalidConfig, "control_rounds: round " + std::to_string(r) + " outside 1.." +
                                                      std::to_string(config.rounds));
        }
    }
    // a, b, k plus Eve must fit the register cap.
    if (config.eve_registers < 0 || config.eve_registers + 3 > static_cast<int>(RegisterLayout::kMaxRegisters)) {
        throw Error(ErrorCode::InvalidConfig, "eve_registers: must be in [0, 5]");
    }
    for (const auto& tag : config.diagnostics) {
        if (!is_stage_tag(tag)) throw Error(ErrorCode::InvalidConfig, "diagnostics: unknown stage tag '" + tag + "'");
    }
    if (!(config.rank_tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
}

std::vector<int> resolve_keys(const ProtocolConfig& config) {
    if (!config.keys.empty()) return config.keys;
    SeedStream rng(*config.key_seed);
    std::vector<int> keys(static_cast<std::size_t>(config.rounds));
    for (auto& key : keys) key = rng.uniform_int(config.d);
    return keys;
}

std::vector<std::string> eve_register_labels(int count) {
    if (count == 1) return {"e"};
    std::vector<std::string> labels;
    for (int i = 1; i <= count; ++i) labels.push_back("e" + std::to_string(i));
    return labels;
}

PureState init_carrier(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "carrier dimension must be at least 2, got " + std::to_string(d));
    RegisterLayout layout(d, {"a", "b"});
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<Complex> amplitudes(layout.state_size());
    for (int j = 0; j < d; ++j) amplitudes[static_cast<std::size_t>(j * d + j)] = amplitude;
    return PureState(std::move(layout), std::move(amplitudes));
}

PureState alice_encode(const PureState& carrier_state, int q) {
    const auto& layout = carrier_state.layout();
    if (q < 0 || q >= layout.dim()) {
        throw Error(ErrorCode::ValueOutOfRange, "key value " + std::to_string(q) + " outside [0, " +
                                                    std::to_string(layout.dim()) + ")");
    }
    if (layout.contains("k")) throw Error(ErrorCode::RegisterCollision, "register 'k' already present");
    if (!layout.contains("a")) throw Error(ErrorCode::MissingRegister, "alice_encode needs register 'a'");
    const std::size_t position = layout.contains("b") ? layout.position("b") + 1 : layout.size();
    const PureState with_key = insert_register(carrier_state, "k", q, position);
    return apply_gate(with_key, ControlledAdd{"a", "k", 1});
}

PureState bob_unentangle(const PureState& state) {
    const auto& layout = state.layout();
    for (const char* label : {"b", "k"}) {
        if (!layout.contains(label)) {
            throw Error(ErrorCode::MissingRegister, std::string("bob_decode needs register '") + label + "'");
        }
    }
    return apply_gate(state, ControlledAdd{"b", "k", state.dim() - 1});
}

DecodeResult bob_decode(const PureState& state, SeedStream& rng) {
    auto measured = measure(bob_unentangle(state), "k", rng);
    return {measured.outcome, remove_register(measured.post_state, "k")};
}

SessionResult run_session(const ProtocolConfig& config, const AttackScript& script) {
    validate(config);
    validate_script(script, config);

    SessionResult result{resolve_keys(config), {}, init_carrier(config.d), {}};
    SeedStream rng(config.seed);

    PureState state = result.final_state;
    for (const auto& label : eve_register_labels(config.eve_registers)) {
        state = insert_register(state, label, 0, state.layout().size());
    }

    const auto check_norm = [&](const PureState& s, int round, std::string_view stage) {
        if (std::abs(s.norm() - 1.0) > tol::kNorm) {
            result.violations.push_back("round " + std::to_string(round) + " " + std::string(stage) +
                                        ": norm drifted to " + std::to_string(s.norm()));
        }
    };
    const auto snapshot = [&](RoundTranscript& t, const PureState& s, std::string_view stage,
                              std::optional<bool> decode_ok = std::nullopt) {
        check_norm(s, t.round, stage);
        if (!wants(config, stage)) return;
        auto diag = diagnose(s, t.round, std::string(stage), config.rank_tol);
        diag.decode_ok = decode_ok;
        diag.state = s;
        double total = 0.0;
        for (double lambda : diag.rho_k_spectrum) total += lambda;
        if (!diag.rho_k_spectrum.empty() && std::abs(total - 1.0) > tol::kNorm) {
            result.violations.push_back("round " + std::to_string(t.round) + " " + std::string(stage) +
                                        ": rho_k spectrum does not sum to 1");
        }
        t.diagnostics.push_back(std::move(diag));
    };

    for (int round = 1; round <= config.rounds; ++round) {
        RoundTranscript t;
        t.round = round;
        t.mode = config.control_rounds.count(round) ? RoundMode::Control : RoundMode::Message;
        t.key_sent = result.keys[static_cast<std::size_t>(round - 1)];

        state = alice_encode(state, t.key_sent);
        t.entropy_k = von_neumann_entropy(partial_trace(state, {"k"}));
        snapshot(t, state, kStagePostEncode);

        auto pre = apply_script(state, script, round, Timing::PreBob, rng);
        state = std::move(pre.state);
        t.eve_records = std::move(pre.records);
        snapshot(t, state, kStagePreDecode);

        auto decoded = bob_decode(state, rng);
        state = std::move(decoded.post_state);
        t.key_decoded = decoded.q;
        snapshot(t, state, kStagePostDecode, t.key_decoded == t.key_sent);

        auto post = apply_script(state, script, round, Timing::PostDecode, rng);
        state = std::move(post.state);
        t.eve_records.insert(t.eve_records.end(), post.records.begin(), post.records.end());
        snapshot(t, state, kStageRoundEnd);

        const auto eve = eve_labels_in(state.layout());
        if (!eve.empty()) t.rank_e = schmidt_rank(state, eve, config.rank_tol);

        if (script.actions_for(round).empty() && t.key_decoded != t.key_sent) {
            result.violations.push_back("round " + std::to_string(round) + ": attack-free round decoded " +
                                        std::to_string(t.key_decoded) + " for key " + std::to_string(t.key_sent));
        }
        result.transcripts.push_back(std::move(t));
    }
    result.final_state = std::move(state);
    return result;
}

ControlStatistic control_check(const std::vector<RoundTranscript>& transcripts, const std::set<int>& control_rounds) {
    ControlStatistic stat;
    for (const auto& t : transcripts) {
        if (!control_rounds.count(t.round)) continue;
        ++stat.checked;
        if (t.key_decoded != t.key_sent) ++stat.mismatches;
    }
    stat.rate = stat.checked ? static_cast<double>(stat.mismatches) / stat.checked : 0.0;
    return stat;
}

}  // namespace qkd
