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

#include <algorithm>
#include <set>

#include "qkdsim/error.hpp"

namespace qkd {

namespace {

bool is_eve_label(const std::string& label) {
    if (label == "e") return true;
    return label.size() > 1 && label[0] == 'e' &&
           std::all_of(label.begin() + 1, label.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Side A of the cut when the layout is exactly side_a + side_b, else nullopt.
std::optional<int> cut_rank(const PureState& state, const std::vector<std::string>& side_a,
                            const std::vector<std::string>& side_b, double tol) {
    if (side_a.empty() || side_b.empty()) return std::nullopt;
    const auto& labels = state.layout().labels();
    std::set<std::string> present(labels.begin(), labels.end());
    std::set<std::string> covered(side_a.begin(), side_a.end());
    covered.insert(side_b.begin(), side_b.end());
    if (covered != present || covered.size() != side_a.size() + side_b.size()) return std::nullopt;
    return schmidt_rank(state, side_a, tol);
}

}  // namespace

std::optional<int> StageDiagnostics::rank(std::string_view cut) const {
    for (const auto& [name, value] : schmidt_ranks) {
        if (name == cut) return value;
    }
    return std::nullopt;
}

std::vector<std::string> eve_labels_in(const RegisterLayout& layout) {
    std::vector<std::string> out;
    for (const auto& label : layout.labels()) {
        if (is_eve_label(label)) out.push_back(label);
    }
    return out;
}

StageDiagnostics diagnose(const PureState& state, int round, std::string stage, double rank_tol) {
    StageDiagnostics out;
    out.round = round;
    out.stage = std::move(stage);
    const auto& layout = state.layout();
    if (layout.contains("k")) {
        const auto rho_k = partial_trace(state, {"k"});
        out.rho_k_spectrum = rho_k.spectrum();
        // Spectrum entries at rounding level can come out slightly negative.
        for (auto& lambda : out.rho_k_spectrum) lambda = std::max(lambda, 0.0);
        out.entropy_k = von_neumann_entropy(rho_k);
    }
    const auto eve = eve_labels_in(layout);
    out.schmidt_ranks.emplace_back(std::string(kCutEveVsABK), cut_rank(state, eve, {"a", "b", "k"}, rank_tol));
    out.schmidt_ranks.emplace_back(std::string(kCutEveVsAB), cut_rank(state, eve, {"a", "b"}, rank_tol));
    std::vector<std::string> rest{"b", "k"};
    rest.insert(rest.end(), eve.begin(), eve.end());
    out.schmidt_ranks.emplace_back(std::string(kCutAVsBKE),
                                   eve.empty() ? std::nullopt : cut_rank(state, {"a"}, rest, rank_tol));
    return out;
}

Json diagnostics_to_json(const StageDiagnostics& diagnostics) {
    Json out = Json::object();
    out["round"] = diagnostics.round;
    out["stage"] = diagnostics.stage;
    out["rho_k_spectrum"] = diagnostics.rho_k_spectrum;
    out["entropy_k"] = diagnostics.entropy_k ? Json(*diagnostics.entropy_k) : Json(nullptr);
    Json ranks = Json::object();
    for (const auto& [cut, value] : diagnostics.schmidt_ranks) ranks[cut] = value ? Json(*value) : Json(nullptr);
    out["schmidt_ranks"] = std::move(ranks);
    out["decode_ok"] = diagnostics.decode_ok ? Json(*diagnostics.decode_ok) : Json(nullptr);
    if (diagnostics.state) {
        out["layout"] = Json{{"d", diagnostics.state->dim()}, {"labels", diagnostics.state->layout().labels()}};
        out["amplitudes"] = amplitudes_to_json(*diagnostics.state);
    }
    return out;
}

StageDiagnostics diagnostics_from_json(const Json& value) {
    try {
        StageDiagnostics out;
        out.round = value.at("round").get<int>();
        out.stage = value.at("stage").get<std::string>();
        out.rho_k_spectrum = value.at("rho_k_spectrum").get<std::vector<double>>();
        if (!value.at("entropy_k").is_null()) out.entropy_k = value.at("entropy_k").get<double>();
        for (auto it = value.at("schmidt_ranks").begin(); it != value.at("schmidt_ranks").end(); ++it) {
            out.schmidt_ranks.emplace_back(it.key(), it.value().is_null() ? std::nullopt
                                                                          : std::optional<int>(it.value().get<int>()));
        }
        if (!value.at("decode_ok").is_null()) out.decode_ok = value.at("decode_ok").get<bool>();
        if (value.contains("amplitudes")) {
            const auto& layout = value.at("layout");
            out.state = PureState(RegisterLayout(layout.at("d").get<int>(), layout.at("labels").get<std::vector<std::string>>()),
                                  amplitudes_from_json(value.at("amplitudes")));
        }
        return out;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("malformed diagnostics document: ") + e.what());
    }
}

}  // namespace qkd
