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

#include <cstdio>

#include "qkdsim/adversary.hpp"
#include "qkdsim/protocol.hpp"

namespace qkd {

namespace {

Json records_to_json(const std::vector<ClassicalRecord>& records) {
    Json out = Json::array();
    for (const auto& r : records) out.push_back(Json{{"round", r.round}, {"register", r.label}, {"outcome", r.outcome}});
    return out;
}

Json transcript_to_json(const RoundTranscript& t) {
    Json out = Json::object();
    out["round"] = t.round;
    out["mode"] = std::string(mode_name(t.mode));
    out["key_sent"] = t.key_sent;
    out["key_decoded"] = t.key_decoded;
    out["rank_e"] = t.rank_e ? Json(*t.rank_e) : Json(nullptr);
    out["entropy_k"] = t.entropy_k;
    out["eve_records"] = records_to_json(t.eve_records);
    Json diagnostics = Json::array();
    for (const auto& d : t.diagnostics) diagnostics.push_back(diagnostics_to_json(d));
    out["diagnostics"] = std::move(diagnostics);
    return out;
}

}  // namespace

Json session_to_json(const ProtocolConfig& config, const AttackScript& script, const SessionResult& result) {
    Json out = Json::object();
    out["schema"] = "transcript/1";
    out["d"] = config.d;
    out["rounds"] = config.rounds;
    out["seed"] = config.seed;
    out["key_seed"] = config.keys.empty() && config.key_seed ? Json(*config.key_seed) : Json(nullptr);
    out["keys"] = result.keys;
    out["eve_registers"] = config.eve_registers;
    out["rank_tolerance"] = config.rank_tol;
    out["attack"] = Json{{"name", script.name}, {"script", script_to_json(script)}};
    out["control_rounds"] = config.control_rounds;
    Json transcripts = Json::array();
    for (const auto& t : result.transcripts) transcripts.push_back(transcript_to_json(t));
    out["transcripts"] = std::move(transcripts);
    const auto stat = control_check(result.transcripts, config.control_rounds);
    out["control_check"] = Json{{"checked", stat.checked}, {"mismatches", stat.mismatches}, {"rate", stat.rate}};
    out["violations"] = result.violations;
    return out;
}

std::string session_to_text(const ProtocolConfig& config, const AttackScript& script, const SessionResult& result) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "d=%d rounds=%d seed=%llu attack=%s eve_registers=%d\n", config.d, config.rounds,
                  static_cast<unsigned long long>(config.seed), script.name.c_str(), config.eve_registers);
    out += line;
    std::snprintf(line, sizeof line, "%5s  %-7s  %4s  %7s  %6s  %9s\n", "round", "mode", "sent", "decoded", "rank_e",
                  "entropy_k");
    out += line;
    for (const auto& t : result.transcripts) {
        const std::string rank = t.rank_e ? std::to_string(*t.rank_e) : "-";
        std::snprintf(line, sizeof line, "%5d  %-7s  %4d  %7d  %6s  %9.6f\n", t.round, std::string(mode_name(t.mode)).c_str(),
                      t.key_sent, t.key_decoded, rank.c_str(), t.entropy_k);
        out += line;
    }
    const auto stat = control_check(result.transcripts, config.control_rounds);
    std::snprintf(line, sizeof line, "control rounds: %d checked, %d mismatches, rate %.6f\n", stat.checked,
                  stat.mismatches, stat.rate);
    out += line;
    for (const auto& v : result.violations) out += "VIOLATION: " + v + "\n";
    return out;
}

}  // namespace qkd
