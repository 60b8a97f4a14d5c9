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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qkdsim/gate.hpp"
#include "qkdsim/json_format.hpp"

namespace qkd {

/// A family of joint (a, b, k, e) states indexed by unknown key symbols
/// q1..qt. `current_key` is the index of the key Bob decodes this round.
struct RoundTemplate {
    std::string id;
    int d = 2;
    int key_arity = 1;
    int current_key = 0;
    std::function<PureState(std::span<const int> keys)> build;
};

inline constexpr std::string_view kTemplateStage5Round1 = "stage5_round1";
inline constexpr std::string_view kTemplatePostRound1Round2 = "post_round1_round2";

/// sum_j |j, j, j+q1, j+q1> / sqrt(d): round 1 after Eve's entangling map.
RoundTemplate stage5_round1_template(int d);
/// sum_j |j, j>|j+q2>_k |j+q1>_e / sqrt(d): round 2 in flight while Eve is
/// still entangled from round 1.
RoundTemplate post_round1_round2_template(int d);
/// sum_j |j, j, j+q1>|0>_e / sqrt(d): Eve already product.
RoundTemplate product_template(int d);
/// Built-in templates by id; throws InvalidConfig for unknown ids.
RoundTemplate builtin_template(std::string_view id, int d);
/// Escape hatch: one explicit state per key tuple (tuple index mixed-radix,
/// q1 most significant). All states must share an (a, b, k, e...) layout.
RoundTemplate explicit_template(std::string id, int key_arity, int current_key, std::vector<PureState> states);

std::size_t key_tuple_count(const RoundTemplate& tmpl);
std::vector<int> key_tuple(const RoundTemplate& tmpl, std::size_t index);

struct GateFamily {
    std::string description;
    std::vector<GateSpec> members;
};

/// Mod-d affine operations Eve can run on (k, e): cadd(k->e, s),
/// cadd(e->k, s), shift(e, s). Members with s = 0 are identities and are
/// pruned, leaving 3(d-1) members.
GateFamily affine_ke_family(int d, const std::string& eve = "e");
GateFamily empty_family();

using GateSequence = std::vector<GateSpec>;

struct KeyEvidence {
    std::vector<int> keys;
    /// Condition (i): Bob's decode yields the current key with certainty.
    bool bob_correct = false;
    /// Bob's most likely outcome and its probability.
    int bob_outcome = 0;
    double bob_probability = 0.0;
    /// Condition (ii): Schmidt rank of Eve's registers against (a, b, k).
    int eve_rank = 0;
    /// Eve's register value when it is a definite basis state.
    std::optional<int> eve_value;

    bool passes() const noexcept { return bob_correct && eve_rank == 1; }
};

struct Verdict {
    bool verified = false;
    /// First failing condition, empty when verified.
    std::string reason;
    /// Rank at the first key tuple failing condition (ii), if any.
    std::optional<int> failing_rank;
    std::vector<KeyEvidence> evidence;
    /// Eve's residual value as an affine function of the key symbols, when
    /// one matches every key tuple (e.g. "q1 - q2 (mod 3)").
    std::optional<std::string> residual;
};

/// Independent checker: re-executes both feasibility conditions for every
/// key tuple using only the dense-matrix gate path.
Verdict verify_candidate(const RoundTemplate& tmpl, const GateSequence& sequence, double tol = tol::kSchmidtCutoff);

struct Candidate {
    GateSequence sequence;
    Verdict verdict;
};

struct FeasibilityReport {
    std::string template_id;
    int d = 2;
    int key_arity = 1;
    int current_key = 0;
    std::string family_description;
    std::vector<std::string> family_members;
    int max_depth = 0;
    double tol = tol::kSchmidtCutoff;
    /// Feasible sequences, in enumeration order; each re-verified.
    std::vector<Candidate> candidates;
    /// Sequences checked explicitly at the caller's request, whatever the verdict.
    std::vector<Candidate> probes;
    bool exhaustive = true;
    std::uint64_t enumeration_count = 0;
};

inline constexpr int kMaxSearchDepth = 3;
inline constexpr std::uint64_t kMaxEnumeration = 1'000'000;
inline constexpr std::size_t kMaxTemplateKeyTuples = 10'000;

/// sum_{l <= depth} size^l.
std::uint64_t family_enumeration_size(std::size_t family_size, int depth);

/// Enumerates every sequence of family members up to `max_depth` (depth 0
/// is the empty sequence) in lexicographic member order and keeps those that
/// satisfy, for every key tuple, (i) Bob decodes the current key exactly and
/// (ii) Eve is product with (a, b, k). Uses the permutation fast path, then
/// re-verifies every hit with verify_candidate; a disagreement throws
/// InvariantViolation.
FeasibilityReport feasibility_search(const RoundTemplate& tmpl, const GateFamily& family, int max_depth,
                                     double tol = tol::kSchmidtCutoff, const std::vector<GateSequence>& probes = {});

/// "feasibility/1" JSON, stable key order.
Json report_to_json(const FeasibilityReport& report);
std::string render_report(const FeasibilityReport& report);

}  // namespace qkd
