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

#include "qkdsim/error.hpp"

namespace qkd {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
        case ErrorCode::InvalidDimension: return "InvalidDimension";
        case ErrorCode::InvalidLayout: return "InvalidLayout";
        case ErrorCode::UnknownRegister: return "UnknownRegister";
        case ErrorCode::MissingRegister: return "MissingRegister";
        case ErrorCode::RegisterCollision: return "RegisterCollision";
        case ErrorCode::NonUnitaryMatrix: return "NonUnitaryMatrix";
        case ErrorCode::InvalidGate: return "InvalidGate";
        case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
        case ErrorCode::InvalidBipartition: return "InvalidBipartition";
        case ErrorCode::LayoutMismatch: return "LayoutMismatch";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::ScriptRegisterUnknown: return "ScriptRegisterUnknown";
        case ErrorCode::IllegalRegisterAccess: return "IllegalRegisterAccess";
        case ErrorCode::UnknownPreset: return "UnknownPreset";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::ExplosionGuard: return "ExplosionGuard";
        case ErrorCode::FamilyTooLarge: return "FamilyTooLarge";
        case ErrorCode::DepthCapExceeded: return "DepthCapExceeded";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

}  // namespace qkd
