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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qkdsim/json_format.hpp"
#include "qkdsim/state.hpp"

namespace qkd {

/// Snapshot of the entanglement structure at one stage of one round.
struct StageDiagnostics {
    int round = 0;
    std::string stage;
    /// Eigenvalues of the reduced state of k, descending; empty when k is absent.
    std::vector<double> rho_k_spectrum;
    std::optional<double> entropy_k;
    /// Cut name -> Schmidt rank, in fixed order; nullopt when the cut's
    /// registers are not exactly the registers currently present.
    std::vector<std::pair<std::string, std::optional<int>>> schmidt_ranks;
    std::optional<bool> decode_ok;
    /// Filled only when amplitudes are requested for this stage.
    std::optional<PureState> state;

    std::optional<int> rank(std::string_view cut) const;

    friend bool operator==(const StageDiagnostics&, const StageDiagnostics&) = default;
};

inline constexpr std::string_view kCutEveVsABK = "{e}|{a,b,k}";
inline constexpr std::string_view kCutEveVsAB = "{e}|{a,b}";
inline constexpr std::string_view kCutAVsBKE = "{a}|{b,k,e}";

/// Labels of Eve's registers in `layout` ("e", or "e1".."em").
std::vector<std::string> eve_labels_in(const RegisterLayout& layout);

StageDiagnostics diagnose(const PureState& state, int round, std::string stage,
                          double rank_tol = tol::kSchmidtCutoff);

Json diagnostics_to_json(const StageDiagnostics& diagnostics);
StageDiagnostics diagnostics_from_json(const Json& value);

/// {"schema": "diagnostics/1", "stages": [...]}
std::string render_report(const std::vector<StageDiagnostics>& stages);
std::vector<StageDiagnostics> parse_diagnostics_report(std::string_view text);

}  // namespace qkd
