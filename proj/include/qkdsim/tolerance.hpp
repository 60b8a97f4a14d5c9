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

namespace qkd::tol {

// Defaults for every tolerance-taking entry point. Callers may pass their own.
inline constexpr double kNorm = 1e-10;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-12;
inline constexpr double kNegativeEigenvalue = 1e-10;
inline constexpr double kSchmidtCutoff = 1e-8;
inline constexpr double kEntropyCutoff = 1e-12;

}  // namespace qkd::tol
