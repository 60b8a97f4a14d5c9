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

#include "qkdsim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "qkdsim/adversary.hpp"
#include "qkdsim/error.hpp"
#include "qkdsim/tolerance.hpp"

namespace qkd {

namespace {

constexpr std::string_view kTopLevelFields[] = {
    "schema_version", "d", "rounds", "keys", "control_rounds", "eve_registers", "seed",
    "attack", "diagnostics", "output", "template", "depth",
};

std::optional<int> line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the first occurrence of the last component of a dotted field path.
std::optional<int> line_of_field(std::string_view text, const std::string& field) {
    std::string key = field.substr(field.find_last_of('.') == std::string::npos ? 0 : field.find_last_of('.') + 1);
    key = key.substr(0, key.find('['));
    if (key.empty()) return std::nullopt;
    const auto pos = text.find("\"" + key + "\"");
    if (pos == std::string_view::npos) return std::nullopt;
    return line_of_offset(text, pos);
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& field, const std::string& message) const {
        throw ScenarioError(field, message, line_of_field(text_, field));
    }

    int integer(const Json& doc, const char* field, long long lo, long long hi) const {
        const Json& value = doc.at(field);
        if (!value.is_number_integer()) fail(field, "must be an integer");
        const auto v = value.get<long long>();
        if (v < lo || v > hi) {
            fail(field, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(v));
        }
        return static_cast<int>(v);
    }

    std::uint64_t seed(const Json& value, const std::string& field) const {
        if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
            fail(field, "must be a non-negative 64-bit integer");
        }
        return value.get<std::uint64_t>();
    }

    std::string_view text() const { return text_; }

private:
    std::string_view text_;
};

}  // namespace

ScenarioError::ScenarioError(std::string field, std::string message, std::optional<int> line)
    : std::runtime_error((line ? "line " + std::to_string(*line) + ": " : std::string()) + "field '" + field +
                         "': " + message),
      field_(std::move(field)),
      line_(line) {}

Scenario parse_scenario(std::string_view text) {
    Reader r(text);
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ScenarioError("<document>", std::string("invalid JSON: ") + e.what(), line_of_offset(text, e.byte));
    }
    if (!doc.is_object()) r.fail("<document>", "scenario must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (std::find(std::begin(kTopLevelFields), std::end(kTopLevelFields), it.key()) == std::end(kTopLevelFields)) {
            r.fail(it.key(), "unknown field");
        }
    }

    if (!doc.contains("schema_version")) r.fail("schema_version", "missing required field");
    if (doc.at("schema_version") != kScenarioSchema) {
        r.fail("schema_version", "must be \"" + std::string(kScenarioSchema) + "\"");
    }
    if (!doc.contains("d")) r.fail("d", "missing required field");

    Scenario s;
    s.d = r.integer(doc, "d", 2, RegisterLayout::kMaxDimension);

    if (doc.contains("template")) {
        const Json& t = doc.at("template");
        if (t.is_string()) {
            s.template_id = t.get<std::string>();
            if (*s.template_id != kTemplateStage5Round1 && *s.template_id != kTemplatePostRound1Round2) {
                r.fail("template", "unknown template id '" + *s.template_id + "'");
            }
        } else if (t.is_object()) {
            for (auto it = t.begin(); it != t.end(); ++it) {
                static constexpr std::string_view allowed[] = {"id", "key_arity", "current_key", "layout", "states"};
                if (std::find(std::begin(allowed), std::end(allowed), it.key()) == std::end(allowed)) {
                    r.fail("template." + it.key(), "unknown field");
                }
            }
            for (const char* f : {"id", "key_arity", "current_key", "layout", "states"}) {
                if (!t.contains(f)) r.fail(std::string("template.") + f, "missing required field");
            }
            if (!t.at("id").is_string()) r.fail("template.id", "must be a string");
            s.template_id = t.at("id").get<std::string>();
            s.template_states = t;
        } else {
            r.fail("template", "must be a template id or an embedded template object");
        }
    }
    if (doc.contains("depth")) s.depth = r.integer(doc, "depth", 0, std::numeric_limits<int>::max());

    const bool needs_session = !s.template_id.has_value();
    if (doc.contains("rounds")) {
        s.rounds = r.integer(doc, "rounds", 1, 1'000'000);
    } else if (needs_session) {
        r.fail("rounds", "missing required field");
    }

    if (doc.contains("keys")) {
        const Json& keys = doc.at("keys");
        if (keys.is_array()) {
            for (std::size_t i = 0; i < keys.size(); ++i) {
                const std::string field = "keys[" + std::to_string(i) + "]";
                if (!keys[i].is_number_integer()) r.fail(field, "must be an integer");
                const auto v = keys[i].get<long long>();
                if (v < 0 || v >= s.d) {
                    r.fail(field, "key value " + std::to_string(v) + " outside [0, d) with d = " + std::to_string(s.d));
                }
                s.keys.push_back(static_cast<int>(v));
            }
            if (s.rounds && static_cast<int>(s.keys.size()) != *s.rounds) {
                r.fail("keys", "expected " + std::to_string(*s.rounds) + " keys (one per round), got " +
                                   std::to_string(s.keys.size()));
            }
        } else if (keys.is_object()) {
            for (auto it = keys.begin(); it != keys.end(); ++it) {
                if (it.key() != "seed") r.fail("keys." + it.key(), "unknown field");
            }
            if (!keys.contains("seed")) r.fail("keys.seed", "missing required field");
            s.key_seed = r.seed(keys.at("seed"), "keys.seed");
        } else {
            r.fail("keys", "must be a list of residues or {\"seed\": u64}");
        }
    } else if (needs_session) {
        r.fail("keys", "missing required field");
    }

    if (doc.contains("control_rounds")) {
        const Json& list = doc.at("control_rounds");
        if (!list.is_array()) r.fail("control_rounds", "must be an array of round indices");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string field = "control_rounds[" + std::to_string(i) + "]";
            if (!list[i].is_number_integer()) r.fail(field, "must be an integer");
            const auto v = list[i].get<long long>();
            if (v < 1 || (s.rounds && v > *s.rounds)) r.fail(field, "round " + std::to_string(v) + " outside 1..rounds");
            s.control_rounds.push_back(static_cast<int>(v));
        }
    }

    if (doc.contains("eve_registers")) s.eve_registers = r.integer(doc, "eve_registers", 0, 5);
    if (doc.contains("seed")) s.seed = r.seed(doc.at("seed"), "seed");

    if (doc.contains("attack")) {
        const Json& attack = doc.at("attack");
        if (!attack.is_object() || attack.size() != 1 || !(attack.contains("preset") || attack.contains("script"))) {
            r.fail("attack", "must be {\"preset\": name} or {\"script\": AttackScript}");
        }
        if (attack.contains("preset")) {
            if (!attack.at("preset").is_string()) r.fail("attack.preset", "must be a string");
            s.attack_preset = attack.at("preset").get<std::string>();
            if (!is_preset(s.attack_preset)) r.fail("attack.preset", "unknown preset '" + s.attack_preset + "'");
        } else {
            try {
                s.script = script_from_json(attack.at("script"), s.d);
            } catch (const Error& e) {
                const std::string message = e.what();
                const auto colon = message.find(": ");
                const auto rest = message.substr(colon + 2);
                const auto field_end = rest.find(": ");
                r.fail(rest.substr(0, field_end), field_end == std::string::npos ? rest : rest.substr(field_end + 2));
            }
            s.attack_preset = "custom";
        }
    }

    if (doc.contains("diagnostics")) {
        const Json& list = doc.at("diagnostics");
        if (!list.is_array()) r.fail("diagnostics", "must be an array of stage tags");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string field = "diagnostics[" + std::to_string(i) + "]";
            if (!list[i].is_string() || !is_stage_tag(list[i].get<std::string>())) {
                r.fail(field, "must be one of post_encode, pre_decode, post_decode, round_end");
            }
            s.diagnostics.push_back(list[i].get<std::string>());
        }
    }
    if (doc.contains("output")) {
        if (!doc.at("output").is_string() || doc.at("output").get<std::string>().empty()) {
            r.fail("output", "must be a nonempty path string");
        }
        s.output = doc.at("output").get<std::string>();
    }

    // Semantic checks that need the assembled configuration.
    if (s.rounds && (!s.keys.empty() || s.key_seed)) {
        try {
            const auto config = to_protocol_config(s, std::nullopt, tol::kSchmidtCutoff);
            to_attack_script(s, config);
        } catch (const Error& e) {
            r.fail(s.script ? "attack.script" : "attack", e.what());
        }
    } else if (s.script || s.attack_preset != "none") {
        if (!s.rounds) r.fail("rounds", "required when an attack is given");
    }
    if (s.template_states) {
        try {
            to_round_template(s);
        } catch (const Error& e) {
            r.fail("template", e.what());
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

ProtocolConfig to_protocol_config(const Scenario& scenario, std::optional<std::uint64_t> seed_override,
                                  double rank_tol) {
    ProtocolConfig config;
    config.d = scenario.d;
    config.rounds = scenario.rounds.value_or(0);
    config.keys = scenario.keys;
    config.key_seed = scenario.key_seed;
    config.control_rounds = {scenario.control_rounds.begin(), scenario.control_rounds.end()};
    config.eve_registers = scenario.eve_registers;
    config.seed = seed_override.value_or(scenario.seed.value_or(0));
    config.diagnostics = scenario.diagnostics;
    config.rank_tol = rank_tol;
    validate(config);
    return config;
}

AttackScript to_attack_script(const Scenario& scenario, const ProtocolConfig& config) {
    if (scenario.script) {
        AttackScript script = compile_schedule(*scenario.script, config);
        script.name = "custom";
        return script;
    }
    return compile_schedule(scenario.attack_preset, config);
}

RoundTemplate to_round_template(const Scenario& scenario) {
    if (!scenario.template_id) throw Error(ErrorCode::InvalidConfig, "template: scenario names no template");
    if (!scenario.template_states) return builtin_template(*scenario.template_id, scenario.d);

    const Json& t = *scenario.template_states;
    if (!t.at("key_arity").is_number_integer() || !t.at("current_key").is_number_integer()) {
        throw Error(ErrorCode::InvalidConfig, "template: key_arity and current_key must be integers");
    }
    const int arity = t.at("key_arity").get<int>();
    // current_key is the 1-based key symbol index (q1 = 1).
    const int current = t.at("current_key").get<int>() - 1;
    if (!t.at("layout").is_array()) throw Error(ErrorCode::InvalidConfig, "template.layout must be an array of labels");
    RegisterLayout layout(scenario.d, t.at("layout").get<std::vector<std::string>>());
    if (!t.at("states").is_array()) throw Error(ErrorCode::InvalidConfig, "template.states must be an array");
    std::vector<PureState> states;
    for (const auto& amplitudes : t.at("states")) states.emplace_back(layout, amplitudes_from_json(amplitudes));
    return explicit_template(*scenario.template_id, arity, current, std::move(states));
}

}  // namespace qkd
