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
#include <string>
#include <string_view>
#include <vector>

#include "qkdsim/attack_script.hpp"
#include "qkdsim/feasibility.hpp"
#include "qkdsim/json_format.hpp"
#include "qkdsim/protocol.hpp"

namespace qkd {

inline constexpr std::string_view kScenarioSchema = "scenario/1";

/// Parsed scenario file. Field-by-field mirror of docs/scenario.schema.json.
struct Scenario {
    int d = 2;
    std::optional<int> rounds;
    std::vector<int> keys;
    std::optional<std::uint64_t> key_seed;
    std::vector<int> control_rounds;
    int eve_registers = 1;
    std::optional<std::uint64_t> seed;
    /// Preset name, or "custom" when `script` is set.
    std::string attack_preset = "none";
    std::optional<AttackScript> script;
    std::vector<std::string> diagnostics;
    std::optional<std::string> output;
    /// Search inputs: a built-in template id or an embedded state family.
    std::optional<std::string> template_id;
    std::optional<Json> template_states;
    std::optional<int> depth;
};

/// Thrown for any schema violation; `field` is a dotted path and `line` the
/// 1-based line where the field (or the parse error) sits, when known.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string field, std::string message, std::optional<int> line);

    const std::string& field() const noexcept { return field_; }
    std::optional<int> line() const noexcept { return line_; }

private:
    std::string field_;
    std::optional<int> line_;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Session configuration; `seed_override` (the --seed flag) wins over the
/// scenario seed, which wins over 0.
ProtocolConfig to_protocol_config(const Scenario& scenario, std::optional<std::uint64_t> seed_override,
                                  double rank_tol);
AttackScript to_attack_script(const Scenario& scenario, const ProtocolConfig& config);
RoundTemplate to_round_template(const Scenario& scenario);

}  // namespace qkd
