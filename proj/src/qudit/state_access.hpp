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

#include "qkdsim/state.hpp"

namespace qkd {

// Internal: builds a PureState without re-validating the norm. Only for
// operations that preserve the norm by construction.
class StateAccess {
public:
    static PureState trusted(RegisterLayout layout, std::vector<Complex> amplitudes) {
        return PureState(PureState::Trusted{}, std::move(layout), std::move(amplitudes));
    }
};

}  // namespace qkd
