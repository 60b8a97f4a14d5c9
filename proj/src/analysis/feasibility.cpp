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

#include "qkdsim/feasibility.hpp"

#include <cmath>

#include "qkdsim/adversary.hpp"
#include "qkdsim/diagnostics.hpp"
#include "qkdsim/error.hpp"

namespace qkd {

namespace {

// sum_j |j, j, j + k_shift, j*e_slope + e_shift> / sqrt(d)
PureState ghz_like(int d, int k_shift, int e_slope, int e_shift) {
    const RegisterLayout layout(d, {"a", "b", "k", "e"});
    std::vector<Complex> amplitudes(layout.state_size());
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        const int values[] = {j, j, (j + k_shift) % d, (j * e_slope + e_shift) % d};
        amplitudes[layout.index_of(values)] = amplitude;
    }
    return PureState(layout, std::move(amplitudes));
}

void check_dimension(int d) {
    if (d < 2 || d > RegisterLayout::kMaxDimension) {
        throw Error(ErrorCode::InvalidDimension, "template dimension " + std::to_string(d) + " outside [2, 16]");
    }
}

void check_key_range(const RoundTemplate& tmpl, std::span<const int> keys) {
    if (static_cast<int>(keys.size()) != tmpl.key_arity) {
        throw Error(ErrorCode::ValueOutOfRange, "template '" + tmpl.id + "' takes " + std::to_string(tmpl.key_arity) +
                                                    " key symbols");
    }
    for (int q : keys) {
        if (q < 0 || q >= tmpl.d) throw Error(ErrorCode::ValueOutOfRange, "key symbol outside [0, d)");
    }
}

std::optional<int> definite_value(const PureState& state, const std::vector<std::string>& labels, double tol) {
    int value = 0;
    for (const auto& label : labels) {
        const auto p = marginal_probabilities(state, label);
        const auto best = std::max_element(p.begin(), p.end());
        if (*best < 1.0 - tol) return std::nullopt;
        value = value * state.dim() + static_cast<int>(best - p.begin());
    }
    return value;
}

template <class ApplyGate>
KeyEvidence collect_evidence(const RoundTemplate& tmpl, PureState state, std::vector<int> keys,
                             const GateSequence& sequence, double tol, ApplyGate&& apply) {
    KeyEvidence ev;
    for (const auto& gate : sequence) state = apply(state, gate);

    const auto eve = eve_labels_in(state.layout());
    if (eve.empty()) throw Error(ErrorCode::InvalidState, "template has no Eve register");
    ev.eve_rank = schmidt_rank(state, eve, tol);
    if (ev.eve_rank == 1) ev.eve_value = definite_value(state, eve, tol::kNorm);

    const PureState at_bob = apply(state, GateSpec{ControlledAdd{"b", "k", tmpl.d - 1}});
    const auto p = marginal_probabilities(at_bob, "k");
    const auto best = std::max_element(p.begin(), p.end());
    ev.bob_outcome = static_cast<int>(best - p.begin());
    ev.bob_probability = *best;
    const int expected = keys[static_cast<std::size_t>(tmpl.current_key)];
    ev.bob_correct = ev.bob_outcome == expected && *best >= 1.0 - tol::kNorm;
    ev.keys = std::move(keys);
    return ev;
}

std::string affine_expression(const std::vector<int>& coefficients, int d) {
    // coefficients[0] is the constant, coefficients[i] multiplies qi.
    std::string out;
    for (std::size_t i = 1; i <= coefficients.size(); ++i) {
        const std::size_t idx = i % coefficients.size();
        const int c = coefficients[idx];
        if (c == 0) continue;
        const std::string symbol = idx == 0 ? "" : "q" + std::to_string(idx);
        const bool negative = d > 2 && c == d - 1;
        std::string magnitude;
        if (idx == 0) {
            magnitude = std::to_string(negative ? 1 : c);
        } else if (c == 1 || negative) {
            magnitude = symbol;
        } else {
            magnitude = std::to_string(c) + "*" + symbol;
        }
        if (out.empty()) {
            out = negative ? "-" + magnitude : magnitude;
        } else {
            out += (negative ? " - " : " + ") + magnitude;
        }
    }
    if (out.empty()) out = "0";
    return out + " (mod " + std::to_string(d) + ")";
}

std::optional<std::string> fit_residual(const RoundTemplate& tmpl, const std::vector<KeyEvidence>& evidence) {
    for (const auto& ev : evidence) {
        if (!ev.eve_value) return std::nullopt;
    }
    const auto d = static_cast<std::size_t>(tmpl.d);
    const auto terms = static_cast<std::size_t>(tmpl.key_arity) + 1;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < terms; ++i) {
        combos *= d;
        if (combos > 100'000) return std::nullopt;
    }
    for (std::size_t code = 0; code < combos; ++code) {
        std::vector<int> c(terms);
        std::size_t rest = code;
        for (std::size_t i = terms; i-- > 0;) {
            c[i] = static_cast<int>(rest % d);
            rest /= d;
        }
        const bool fits = std::all_of(evidence.begin(), evidence.end(), [&](const KeyEvidence& ev) {
            int value = c[0];
            for (std::size_t i = 0; i < ev.keys.size(); ++i) value += c[i + 1] * ev.keys[i];
            return value % tmpl.d == *ev.eve_value;
        });
        if (fits) return affine_expression(c, tmpl.d);
    }
    return std::nullopt;
}

std::string key_label(const std::vector<int>& keys) {
    std::string out = "(";
    for (std::size_t i = 0; i < keys.size(); ++i) {
        out += (i ? ", q" : "q") + std::to_string(i + 1) + "=" + std::to_string(keys[i]);
    }
    return out + ")";
}

Verdict judge(const RoundTemplate& tmpl, std::vector<KeyEvidence> evidence) {
    Verdict verdict;
    for (const auto& ev : evidence) {
        if (!ev.bob_correct && verdict.reason.empty()) {
            verdict.reason = "condition (i) fails at " + key_label(ev.keys) + ": Bob decodes " +
                             std::to_string(ev.bob_outcome) + " with probability " + std::to_string(ev.bob_probability);
        }
        if (ev.eve_rank != 1 && !verdict.failing_rank) {
            verdict.failing_rank = ev.eve_rank;
            if (verdict.reason.empty()) {
                verdict.reason = "condition (ii) fails at " + key_label(ev.keys) + ": Eve's Schmidt rank is " +
                                 std::to_string(ev.eve_rank);
            }
        }
    }
    verdict.verified = verdict.reason.empty();
    if (verdict.verified) verdict.residual = fit_residual(tmpl, evidence);
    verdict.evidence = std::move(evidence);
    return verdict;
}

Json evidence_to_json(const KeyEvidence& ev) {
    Json out = Json::object();
    out["keys"] = ev.keys;
    out["bob_outcome"] = ev.bob_outcome;
    out["bob_correct"] = ev.bob_correct;
    out["eve_rank"] = ev.eve_rank;
    out["e"] = ev.eve_value ? Json(*ev.eve_value) : Json(nullptr);
    return out;
}

Json candidate_to_json(const Candidate& candidate) {
    Json out = Json::object();
    Json sequence = Json::array();
    std::string text;
    for (const auto& gate : candidate.sequence) {
        sequence.push_back(gate_to_json(gate));
        text += (text.empty() ? "" : " ; ") + describe(gate);
    }
    out["sequence"] = std::move(sequence);
    out["text"] = text.empty() ? "identity" : text;
    out["verdict"] = candidate.verdict.verified ? "verified" : "rejected";
    if (!candidate.verdict.verified) out["reason"] = candidate.verdict.reason;
    out["residual_e"] = candidate.verdict.residual ? Json(*candidate.verdict.residual) : Json(nullptr);
    Json evidence = Json::array();
    for (const auto& ev : candidate.verdict.evidence) evidence.push_back(evidence_to_json(ev));
    out["evidence"] = std::move(evidence);
    return out;
}

}  // namespace

RoundTemplate stage5_round1_template(int d) {
    check_dimension(d);
    return {std::string(kTemplateStage5Round1), d, 1, 0, [d](std::span<const int> keys) {
                return ghz_like(d, keys[0], 1, keys[0]);
            }};
}

RoundTemplate post_round1_round2_template(int d) {
    check_dimension(d);
    return {std::string(kTemplatePostRound1Round2), d, 2, 1, [d](std::span<const int> keys) {
                return ghz_like(d, keys[1], 1, keys[0]);
            }};
}

RoundTemplate product_template(int d) {
    check_dimension(d);
    return {"product", d, 1, 0, [d](std::span<const int> keys) { return ghz_like(d, keys[0], 0, 0); }};
}

RoundTemplate builtin_template(std::string_view id, int d) {
    if (id == kTemplateStage5Round1) return stage5_round1_template(d);
    if (id == kTemplatePostRound1Round2) return post_round1_round2_template(d);
    if (id == "product") return product_template(d);
    throw Error(ErrorCode::InvalidConfig, "template: unknown id '" + std::string(id) + "' (expected " +
                                              std::string(kTemplateStage5Round1) + " or " +
                                              std::string(kTemplatePostRound1Round2) + ")");
}

RoundTemplate explicit_template(std::string id, int key_arity, int current_key, std::vector<PureState> states) {
    if (states.empty()) throw Error(ErrorCode::InvalidConfig, "template: needs at least one state");
    const auto layout = states.front().layout();
    const int d = layout.dim();
    std::size_t expected = 1;
    for (int i = 0; i < key_arity; ++i) expected *= static_cast<std::size_t>(d);
    if (key_arity < 1 || states.size() != expected) {
        throw Error(ErrorCode::InvalidConfig, "template: expected d^key_arity = " + std::to_string(expected) + " states");
    }
    if (current_key < 0 || current_key >= key_arity) throw Error(ErrorCode::InvalidConfig, "template: current_key out of range");
    for (const auto& s : states) {
        if (!(s.layout() == layout)) throw Error(ErrorCode::LayoutMismatch, "template states must share one layout");
    }
    for (const char* label : {"a", "b", "k"}) {
        if (!layout.contains(label)) throw Error(ErrorCode::MissingRegister, std::string("template needs register '") + label + "'");
    }
    if (eve_labels_in(layout).empty()) throw Error(ErrorCode::MissingRegister, "template needs an Eve register");
    auto shared = std::make_shared<std::vector<PureState>>(std::move(states));
    return {std::move(id), d, key_arity, current_key, [shared, d](std::span<const int> keys) {
                std::size_t index = 0;
                for (int q : keys) index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(q);
                return (*shared)[index];
            }};
}

std::size_t key_tuple_count(const RoundTemplate& tmpl) {
    std::size_t count = 1;
    for (int i = 0; i < tmpl.key_arity; ++i) {
        count *= static_cast<std::size_t>(tmpl.d);
        if (count > kMaxTemplateKeyTuples) {
            throw Error(ErrorCode::ExplosionGuard, "d^key_arity exceeds " + std::to_string(kMaxTemplateKeyTuples));
        }
    }
    return count;
}

std::vector<int> key_tuple(const RoundTemplate& tmpl, std::size_t index) {
    std::vector<int> keys(static_cast<std::size_t>(tmpl.key_arity));
    for (std::size_t i = keys.size(); i-- > 0;) {
        keys[i] = static_cast<int>(index % static_cast<std::size_t>(tmpl.d));
        index /= static_cast<std::size_t>(tmpl.d);
    }
    return keys;
}

GateFamily affine_ke_family(int d, const std::string& eve) {
    GateFamily family;
    family.description = "mod-d affine ops on (k," + eve + "): cadd(k->" + eve + ", s), cadd(" + eve +
                         "->k, s), shift(" + eve + ", s) for s in [1, d); s = 0 members are identities and pruned";
    for (int s = 1; s < d; ++s) family.members.emplace_back(ControlledAdd{"k", eve, s});
    for (int s = 1; s < d; ++s) family.members.emplace_back(ControlledAdd{eve, "k", s});
    for (int s = 1; s < d; ++s) family.members.emplace_back(Shift{eve, s});
    return family;
}

GateFamily empty_family() { return {"empty family (no gates)", {}}; }

std::uint64_t family_enumeration_size(std::size_t family_size, int depth) {
    std::uint64_t total = 0;
    std::uint64_t layer = 1;
    for (int level = 0; level <= depth; ++level) {
        total += layer;
        layer *= family_size;
    }
    return total;
}

Verdict verify_candidate(const RoundTemplate& tmpl, const GateSequence& sequence, double tol) {
    const std::size_t count = key_tuple_count(tmpl);
    std::vector<KeyEvidence> evidence;
    evidence.reserve(count);
    for (std::size_t index = 0; index < count; ++index) {
        auto keys = key_tuple(tmpl, index);
        check_key_range(tmpl, keys);
        PureState start = tmpl.build(keys);
        evidence.push_back(collect_evidence(tmpl, std::move(start), std::move(keys), sequence, tol,
                                            [](const PureState& s, const GateSpec& g) { return apply_gate_dense(s, g); }));
    }
    return judge(tmpl, std::move(evidence));
}

FeasibilityReport feasibility_search(const RoundTemplate& tmpl, const GateFamily& family, int max_depth, double tol,
                                     const std::vector<GateSequence>& probes) {
    if (max_depth < 0 || max_depth > kMaxSearchDepth) {
        throw Error(ErrorCode::DepthCapExceeded, "depth " + std::to_string(max_depth) + " outside [0, " +
                                                     std::to_string(kMaxSearchDepth) + "]");
    }
    const std::size_t tuples = key_tuple_count(tmpl);
    const std::uint64_t total = family_enumeration_size(family.members.size(), max_depth);
    if (total > kMaxEnumeration) {
        throw Error(ErrorCode::FamilyTooLarge, std::to_string(total) + " sequences exceed the cap of " +
                                                   std::to_string(kMaxEnumeration));
    }

    FeasibilityReport report;
    report.template_id = tmpl.id;
    report.d = tmpl.d;
    report.key_arity = tmpl.key_arity;
    report.current_key = tmpl.current_key;
    report.family_description = family.description;
    for (const auto& gate : family.members) report.family_members.push_back(describe(gate));
    report.max_depth = max_depth;
    report.tol = tol;

    std::vector<PureState> starts;
    starts.reserve(tuples);
    for (std::size_t index = 0; index < tuples; ++index) starts.push_back(tmpl.build(key_tuple(tmpl, index)));

    const auto fast = [](const PureState& s, const GateSpec& g) { return apply_gate(s, g); };
    const std::size_t size = family.members.size();
    for (int depth = 0; depth <= max_depth; ++depth) {
        if (depth > 0 && size == 0) break;
        std::vector<std::size_t> digits(static_cast<std::size_t>(depth), 0);
        while (true) {
            ++report.enumeration_count;
            GateSequence sequence;
            for (std::size_t digit : digits) sequence.push_back(family.members[digit]);

            bool feasible = true;
            for (std::size_t index = 0; index < tuples && feasible; ++index) {
                feasible = collect_evidence(tmpl, starts[index], key_tuple(tmpl, index), sequence, tol, fast).passes();
            }
            if (feasible) {
                Verdict verdict = verify_candidate(tmpl, sequence, tol);
                if (!verdict.verified) {
                    throw Error(ErrorCode::InvariantViolation, "fast path accepted a sequence the dense checker rejects: " +
                                                                   verdict.reason);
                }
                report.candidates.push_back({std::move(sequence), std::move(verdict)});
            }

            // Next digit string in lexicographic order.
            std::size_t pos = digits.size();
            while (pos > 0 && digits[pos - 1] + 1 == size) digits[--pos] = 0;
            if (pos == 0) break;
            ++digits[pos - 1];
        }
    }
    if (report.enumeration_count != total) {
        throw Error(ErrorCode::InvariantViolation, "enumerated " + std::to_string(report.enumeration_count) +
                                                       " sequences, closed form says " + std::to_string(total));
    }
    for (const auto& probe : probes) report.probes.push_back({probe, verify_candidate(tmpl, probe, tol)});
    return report;
}

Json report_to_json(const FeasibilityReport& report) {
    Json out = Json::object();
    out["schema"] = "feasibility/1";
    out["template"] = report.template_id;
    out["d"] = report.d;
    Json symbols = Json::array();
    for (int i = 1; i <= report.key_arity; ++i) symbols.push_back("q" + std::to_string(i));
    out["key_symbols"] = symbols;
    out["current_key"] = "q" + std::to_string(report.current_key + 1);
    out["family"] = Json{{"description", report.family_description},
                         {"size", report.family_members.size()},
                         {"members", report.family_members}};
    out["max_depth"] = report.max_depth;
    out["tolerance"] = report.tol;
    out["exhaustive"] = report.exhaustive;
    out["enumeration_count"] = report.enumeration_count;
    Json candidates = Json::array();
    for (const auto& c : report.candidates) candidates.push_back(candidate_to_json(c));
    out["candidates"] = std::move(candidates);
    Json probes = Json::array();
    for (const auto& c : report.probes) probes.push_back(candidate_to_json(c));
    out["probes"] = std::move(probes);
    return out;
}

std::string render_report(const FeasibilityReport& report) { return dump_json(report_to_json(report)) + "\n"; }

}  // namespace qkd
