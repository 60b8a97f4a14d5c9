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

#include <string>
#include <vector>

#include <json.hpp>

namespace oracle {

/// Reduces a "feasibility/1" report to the golden-file record layout so the
/// two can be compared structurally.
nlohmann::ordered_json project_report(const nlohmann::ordered_json& report);

/// Coefficients [c0, c1, ...] of an affine residual such as "q1 - q2 (mod 3)".
std::vector<int> parse_affine(const std::string& text, int d);

std::string golden_path(const std::string& template_id, int d);

}  // namespace oracle
