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

#include "qkdsim/adversary.hpp"

#include <algorithm>

#include "qkdsim/error.hpp"

namespace qkd {

namespace {

bool is_legitimate_register(std::string_view label) { return label == "a" || label == "b"; }

void check_locality(const EveAction& action) {
    for (const auto& label : action_registers(action)) {
        if (is_legitimate_register(label)) {
            throw Error(ErrorCode::IllegalRegisterAccess,
                        "Eve cannot act on register '" + label + "' (" + describe(action) + ")");
        }
    }
}

const std::string& first_eve_register(const ProtocolConfig& config, std::string_view preset) {
    static const std::vector<std::string> single{"e"};
    static const std::vector<std::string> many{"e1"};
    if (config.eve_registers < 1) {
        throw Error(ErrorCode::InvalidConfig, "attack preset '" + std::string(preset) + "' needs eve_registers >= 1");
    }
    return config.eve_registers == 1 ? single.front() : many.front();
}

}  // namespace

std::string_view timing_name(Timing timing) noexcept { return timing == Timing::PreBob ? "pre_bob" : "post_decode"; }

std::vector<std::string> action_registers(const EveAction& action) {
    if (const auto* gate = std::get_if<GateSpec>(&action.op)) return gate_registers(*gate);
    return {std::get<MeasureRegister>(action.op).target};
}

std::string describe(const EveAction& action) {
    const std::string body = std::holds_alternative<GateSpec>(action.op)
                                 ? describe(std::get<GateSpec>(action.op))
                                 : "measure(" + std::get<MeasureRegister>(action.op).target + ")";
    return body + "@" + std::string(timing_name(action.timing));
}

std::size_t AttackScript::action_count() const {
    std::size_t count = 0;
    for (const auto& [round, actions] : rounds) count += actions.size();
    return count;
}

const std::vector<EveAction>& AttackScript::actions_for(int round) const {
    static const std::vector<EveAction> none;
    const auto it = rounds.find(round);
    return it == rounds.end() ? none : it->second;
}

PureState eve_entangle(const PureState& state, const std::string& e, std::vector<std::string>* warnings) {
    const auto& layout = state.layout();
    for (const auto& label : {std::string("k"), e}) {
        if (!layout.contains(label)) {
            throw Error(ErrorCode::MissingRegister, "eve_entangle needs register '" + label + "'");
        }
    }
    if (warnings && marginal_probabilities(state, e)[0] < 1.0 - tol::kNorm) {
        warnings->push_back("eve_entangle: register '" + e + "' is not in |0>; the result is not the quoted map");
    }
    return apply_gate(state, ControlledAdd{"k", e, 1});
}

PureState eve_disentangle(const PureState& state, const std::string& e) {
    const auto& layout = state.layout();
    for (const auto& label : {std::string("k"), e}) {
        if (!layout.contains(label)) {
            throw Error(ErrorCode::MissingRegister, "eve_disentangle needs register '" + label + "'");
        }
    }
    return apply_gate(state, ControlledAdd{"k", e, state.dim() - 1});
}

bool is_preset(std::string_view name) noexcept {
    return name == kPresetNone || name == kPresetPersistentEntangle || name == kPresetReplyOddStopRestart ||
           name == kPresetInterceptResend;
}

AttackScript compile_schedule(std::string_view preset, const ProtocolConfig& config) {
    AttackScript script;
    script.name = std::string(preset);
    if (preset == kPresetNone) return script;
    if (preset == kPresetPersistentEntangle) {
        const auto& e = first_eve_register(config, preset);
        script.rounds[1] = {EveAction{GateSpec{ControlledAdd{"k", e, 1}}, Timing::PreBob}};
        return script;
    }
    if (preset == kPresetReplyOddStopRestart) {
        const auto& e = first_eve_register(config, preset);
        for (int round = 1; round <= config.rounds; round += 2) {
            script.rounds[round] = {
                EveAction{GateSpec{ControlledAdd{"k", e, 1}}, Timing::PreBob},
                EveAction{GateSpec{ControlledAdd{"k", e, config.d - 1}}, Timing::PreBob},
            };
        }
        return script;
    }
    if (preset == kPresetInterceptResend) {
        // Measuring k leaves it in the basis state Eve observed, which is
        // exactly the fresh qudit she forwards.
        for (int round = 1; round <= config.rounds; ++round) {
            script.rounds[round] = {EveAction{MeasureRegister{"k"}, Timing::PreBob}};
        }
        return script;
    }
    throw Error(ErrorCode::UnknownPreset, "unknown attack preset '" + std::string(preset) + "'");
}

AttackScript compile_schedule(const AttackScript& custom, const ProtocolConfig& config) {
    validate_script(custom, config);
    return custom;
}

void validate_script(const AttackScript& script, const ProtocolConfig& config) {
    const auto eve = eve_register_labels(config.eve_registers);
    for (const auto& [round, actions] : script.rounds) {
        if (round < 1 || round > config.rounds) {
            throw Error(ErrorCode::InvalidConfig, "attack script round " + std::to_string(round) + " outside 1.." +
                                                      std::to_string(config.rounds));
        }
        for (const auto& action : actions) {
            check_locality(action);
            const auto registers = action_registers(action);
            for (const auto& label : registers) {
                const bool is_eve = std::find(eve.begin(), eve.end(), label) != eve.end();
                const bool is_key = label == "k" && action.timing == Timing::PreBob;
                if (!is_eve && !is_key) {
                    throw Error(ErrorCode::ScriptRegisterUnknown,
                                "round " + std::to_string(round) + ": " + describe(action) + " references '" + label +
                                    "', which Eve cannot reach at that point");
                }
            }
            if (const auto* gate = std::get_if<GateSpec>(&action.op)) {
                if (const auto* dense = std::get_if<DenseGate>(gate)) {
                    long side = 1;
                    for (std::size_t i = 0; i < registers.size(); ++i) side *= config.d;
                    if (dense->matrix().rows() != side) {
                        throw Error(ErrorCode::InvalidGate, "round " + std::to_string(round) + ": dense matrix side " +
                                                                std::to_string(dense->matrix().rows()) +
                                                                " != d^#targets = " + std::to_string(side));
                    }
                }
                if (const auto* cadd = std::get_if<ControlledAdd>(gate); cadd && cadd->control == cadd->target) {
                    throw Error(ErrorCode::InvalidGate, "round " + std::to_string(round) + ": cadd control equals target");
                }
            }
        }
    }
}

ScriptStep apply_script(const PureState& state, const AttackScript& script, int round, Timing timing,
                        SeedStream& rng) {
    ScriptStep step{state, {}};
    for (const auto& action : script.actions_for(round)) {
        if (action.timing != timing) continue;
        check_locality(action);
        if (const auto* gate = std::get_if<GateSpec>(&action.op)) {
            step.state = apply_gate(step.state, *gate);
        } else {
            const auto& target = std::get<MeasureRegister>(action.op).target;
            auto result = measure(step.state, target, rng);
            step.records.push_back({round, target, result.outcome});
            step.state = std::move(result.post_state);
        }
    }
    return step;
}

}  // namespace qkd
