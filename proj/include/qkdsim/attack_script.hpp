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

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qkdsim/gate.hpp"

namespace qkd {

/// When an Eve action fires inside a round: while k is in flight to Bob, or
/// after Bob has decoded and k no longer exists.
enum class Timing { PreBob, PostDecode };

std::string_view timing_name(Timing timing) noexcept;

/// Computational-basis measurement of one register Eve can reach.
struct MeasureRegister {
    std::string target;
};

struct EveAction {
    std::variant<GateSpec, MeasureRegister> op;
    Timing timing = Timing::PreBob;
};

std::vector<std::string> action_registers(const EveAction& action);
std::string describe(const EveAction& action);

/// Per-round ordered Eve actions, keyed by 1-based round index.
struct AttackScript {
    std::string name = "custom";
    std::map<int, std::vector<EveAction>> rounds;

    std::size_t action_count() const;
    const std::vector<EveAction>& actions_for(int round) const;
};

/// Outcome Eve wrote down when she measured `label` in `round`.
struct ClassicalRecord {
    int round;
    std::string label;
    int outcome;

    friend bool operator==(const ClassicalRecord&, const ClassicalRecord&) = default;
    friend auto operator<=>(const ClassicalRecord&, const ClassicalRecord&) = default;
};

}  // namespace qkd
