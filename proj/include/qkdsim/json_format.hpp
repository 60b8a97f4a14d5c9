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

#include <json.hpp>

#include "qkdsim/state.hpp"

namespace qkd {

using Json = nlohmann::ordered_json;

/// Serializes `value` with insertion-ordered keys and every floating-point
/// number printed with 17 significant digits ("%.16e"), so reports are
/// byte-stable and round-trip exactly.
std::string dump_json(const Json& value, int indent = 2);

/// Amplitudes as an array of [re, im] pairs in basis-index order.
Json amplitudes_to_json(const PureState& state);
std::vector<Complex> amplitudes_from_json(const Json& value);

}  // namespace qkd
