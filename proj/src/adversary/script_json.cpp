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

#include <set>

#include "qkdsim/adversary.hpp"
#include "qkdsim/error.hpp"

namespace qkd {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw Error(ErrorCode::InvalidConfig, path + ": " + message);
}

void reject_unknown_fields(const Json& object, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (auto it = object.begin(); it != object.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            fail(path + "." + it.key(), "unknown field");
        }
    }
}

const Json& require(const Json& object, const std::string& path, const char* field) {
    if (!object.contains(field)) fail(path + "." + field, "missing required field");
    return object.at(field);
}

std::string label_field(const Json& object, const std::string& path, const char* field) {
    const Json& value = require(object, path, field);
    if (!value.is_string() || value.get<std::string>().empty()) fail(path + "." + field, "must be a register label");
    return value.get<std::string>();
}

int residue_field(const Json& object, const std::string& path, int d) {
    const Json& value = require(object, path, "s");
    if (!value.is_number_integer()) fail(path + ".s", "must be an integer");
    const auto s = value.get<long long>();
    if (s < 0 || s >= d) fail(path + ".s", "must be a residue in [0, " + std::to_string(d) + ")");
    return static_cast<int>(s);
}

EveAction action_from_json(const Json& value, const std::string& path, int d) {
    if (!value.is_object()) fail(path, "action must be an object");
    const Json& op_value = require(value, path, "op");
    if (!op_value.is_string()) fail(path + ".op", "must be a string");
    const auto op = op_value.get<std::string>();

    Timing timing = Timing::PreBob;
    if (value.contains("timing")) {
        const Json& t = value.at("timing");
        if (t == "pre_bob") {
            timing = Timing::PreBob;
        } else if (t == "post_decode") {
            timing = Timing::PostDecode;
        } else {
            fail(path + ".timing", "must be \"pre_bob\" or \"post_decode\"");
        }
    }

    if (op == "shift") {
        reject_unknown_fields(value, path, {"op", "target", "s", "timing"});
        return {GateSpec{Shift{label_field(value, path, "target"), residue_field(value, path, d)}}, timing};
    }
    if (op == "cadd") {
        reject_unknown_fields(value, path, {"op", "control", "target", "s", "timing"});
        return {GateSpec{ControlledAdd{label_field(value, path, "control"), label_field(value, path, "target"),
                                       residue_field(value, path, d)}},
                timing};
    }
    if (op == "phase") {
        reject_unknown_fields(value, path, {"op", "target", "s", "timing"});
        return {GateSpec{Phase{label_field(value, path, "target"), residue_field(value, path, d)}}, timing};
    }
    if (op == "fourier") {
        reject_unknown_fields(value, path, {"op", "target", "timing"});
        return {GateSpec{Fourier{label_field(value, path, "target")}}, timing};
    }
    if (op == "measure") {
        reject_unknown_fields(value, path, {"op", "target", "timing"});
        return {MeasureRegister{label_field(value, path, "target")}, timing};
    }
    if (op == "dense") {
        reject_unknown_fields(value, path, {"op", "targets", "matrix", "timing"});
        const Json& targets_value = require(value, path, "targets");
        if (!targets_value.is_array() || targets_value.empty()) fail(path + ".targets", "must be a nonempty array");
        std::vector<std::string> targets;
        for (const auto& t : targets_value) {
            if (!t.is_string()) fail(path + ".targets", "entries must be register labels");
            targets.push_back(t.get<std::string>());
        }
        const Json& rows = require(value, path, "matrix");
        if (!rows.is_array() || rows.empty()) fail(path + ".matrix", "must be a nonempty array of rows");
        const auto n = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXcd matrix(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            const Json& row = rows[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
                fail(path + ".matrix[" + std::to_string(r) + "]", "matrix must be square");
            }
            try {
                const auto entries = amplitudes_from_json(row);
                for (Eigen::Index c = 0; c < n; ++c) matrix(r, c) = entries[static_cast<std::size_t>(c)];
            } catch (const Error& e) {
                fail(path + ".matrix[" + std::to_string(r) + "]", "entries must be [re, im] pairs");
            }
        }
        try {
            return {GateSpec{DenseGate(std::move(targets), std::move(matrix))}, timing};
        } catch (const Error& e) {
            fail(path + ".matrix", e.what());
        }
    }
    fail(path + ".op", "unknown op '" + op + "' (expected shift, cadd, phase, fourier, dense or measure)");
}

Json action_to_json(const EveAction& action) {
    Json out = Json::object();
    if (const auto* measure = std::get_if<MeasureRegister>(&action.op)) {
        out["op"] = "measure";
        out["target"] = measure->target;
    } else {
        out = gate_to_json(std::get<GateSpec>(action.op));
    }
    out["timing"] = std::string(timing_name(action.timing));
    return out;
}

}  // namespace

AttackScript script_from_json(const Json& value, int d) {
    const std::string path = "attack.script";
    if (!value.is_object()) fail(path, "must be an object");
    reject_unknown_fields(value, path, {"rounds"});
    const Json& rounds = require(value, path, "rounds");
    if (!rounds.is_object()) fail(path + ".rounds", "must be an object keyed by round number");
    AttackScript script;
    for (auto it = rounds.begin(); it != rounds.end(); ++it) {
        const std::string round_path = path + ".rounds." + it.key();
        int round = 0;
        try {
            std::size_t consumed = 0;
            round = std::stoi(it.key(), &consumed);
            if (consumed != it.key().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            fail(round_path, "round keys must be positive integers");
        }
        if (round < 1) fail(round_path, "round keys must be positive integers");
        if (!it.value().is_array()) fail(round_path, "must be an array of actions");
        auto& actions = script.rounds[round];
        for (std::size_t i = 0; i < it.value().size(); ++i) {
            actions.push_back(action_from_json(it.value()[i], round_path + "[" + std::to_string(i) + "]", d));
        }
    }
    return script;
}

Json script_to_json(const AttackScript& script) {
    Json rounds = Json::object();
    for (const auto& [round, actions] : script.rounds) {
        Json list = Json::array();
        for (const auto& action : actions) list.push_back(action_to_json(action));
        rounds[std::to_string(round)] = std::move(list);
    }
    return Json{{"rounds", std::move(rounds)}};
}

Json gate_to_json(const GateSpec& gate) {
    Json out = Json::object();
    if (const auto* g = std::get_if<Shift>(&gate)) {
        out["op"] = "shift";
        out["target"] = g->target;
        out["s"] = g->s;
    } else if (const auto* g = std::get_if<ControlledAdd>(&gate)) {
        out["op"] = "cadd";
        out["control"] = g->control;
        out["target"] = g->target;
        out["s"] = g->s;
    } else if (const auto* g = std::get_if<Phase>(&gate)) {
        out["op"] = "phase";
        out["target"] = g->target;
        out["s"] = g->s;
    } else if (const auto* g = std::get_if<Fourier>(&gate)) {
        out["op"] = "fourier";
        out["target"] = g->target;
    } else {
        const auto& dense = std::get<DenseGate>(gate);
        out["op"] = "dense";
        out["targets"] = dense.targets();
        Json rows = Json::array();
        for (Eigen::Index r = 0; r < dense.matrix().rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < dense.matrix().cols(); ++c) {
                row.push_back(Json::array({dense.matrix()(r, c).real(), dense.matrix()(r, c).imag()}));
            }
            rows.push_back(std::move(row));
        }
        out["matrix"] = std::move(rows);
    }
    return out;
}

}  // namespace qkd
