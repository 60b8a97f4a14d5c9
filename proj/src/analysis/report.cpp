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

#include "qkdsim/diagnostics.hpp"
#include "qkdsim/error.hpp"

namespace qkd {

std::string render_report(const std::vector<StageDiagnostics>& stages) {
    Json out = Json::object();
    out["schema"] = "diagnostics/1";
    Json list = Json::array();
    for (const auto& stage : stages) list.push_back(diagnostics_to_json(stage));
    out["stages"] = std::move(list);
    return dump_json(out) + "\n";
}

std::vector<StageDiagnostics> parse_diagnostics_report(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("diagnostics report is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("schema", "") != "diagnostics/1" || !doc.contains("stages")) {
        throw Error(ErrorCode::InvalidConfig, "not a diagnostics/1 document");
    }
    std::vector<StageDiagnostics> out;
    for (const auto& stage : doc.at("stages")) out.push_back(diagnostics_from_json(stage));
    return out;
}

}  // namespace qkd
