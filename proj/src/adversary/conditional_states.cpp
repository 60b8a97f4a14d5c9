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

#include <map>

#include "qkdsim/adversary.hpp"
#include "qkdsim/error.hpp"

namespace qkd {

namespace {

constexpr std::size_t kMaxKeyTuples = 10'000;
constexpr std::size_t kMaxBranches = 1u << 16;
constexpr std::size_t kMaxAllPairs = 1024;

struct Branch {
    double probability;
    PureState state;
    std::vector<ClassicalRecord> records;
};

using Ensemble = std::vector<Branch>;

void guard(const Ensemble& ensemble) {
    if (ensemble.size() > kMaxBranches) {
        throw Error(ErrorCode::ExplosionGuard, "measurement branching exceeded " + std::to_string(kMaxBranches) +
                                                   " branches");
    }
}

// Splits every branch on the outcome of `label`; records the outcome when
// `record_round` is set (Eve's measurements), drops it otherwise (Bob's).
Ensemble split(Ensemble ensemble, const std::string& label, std::optional<int> record_round) {
    Ensemble out;
    for (auto& branch : ensemble) {
        for (auto& outcome : measurement_branches(branch.state, label)) {
            auto records = branch.records;
            if (record_round) records.push_back({*record_round, label, outcome.outcome});
            out.push_back({branch.probability * outcome.probability, std::move(outcome.post_state), std::move(records)});
        }
    }
    guard(out);
    return out;
}

Ensemble run_actions(Ensemble ensemble, const AttackScript& script, int round, Timing timing) {
    for (const auto& action : script.actions_for(round)) {
        if (action.timing != timing) continue;
        if (const auto* gate = std::get_if<GateSpec>(&action.op)) {
            for (auto& branch : ensemble) branch.state = apply_gate(branch.state, *gate);
        } else {
            ensemble = split(std::move(ensemble), std::get<MeasureRegister>(action.op).target, round);
        }
    }
    return ensemble;
}

// Eve's conditional state, block-diagonal in her classical records.
struct EveView {
    std::map<std::vector<ClassicalRecord>, Eigen::MatrixXcd> blocks;
    Eigen::MatrixXcd quantum;
};

EveView run_branching(const ProtocolConfig& config, const AttackScript& script, const std::vector<int>& keys) {
    PureState start = init_carrier(config.d);
    const auto eve = eve_register_labels(config.eve_registers);
    for (const auto& label : eve) start = insert_register(start, label, 0, start.layout().size());

    Ensemble ensemble{{1.0, std::move(start), {}}};
    for (int round = 1; round <= config.rounds; ++round) {
        for (auto& branch : ensemble) branch.state = alice_encode(branch.state, keys[static_cast<std::size_t>(round - 1)]);
        ensemble = run_actions(std::move(ensemble), script, round, Timing::PreBob);
        for (auto& branch : ensemble) branch.state = bob_unentangle(branch.state);
        ensemble = split(std::move(ensemble), "k", std::nullopt);
        for (auto& branch : ensemble) branch.state = remove_register(branch.state, "k");
        ensemble = run_actions(std::move(ensemble), script, round, Timing::PostDecode);
    }

    EveView view;
    const Eigen::Index side = eve.empty() ? 1 : static_cast<Eigen::Index>(RegisterLayout(config.d, eve).state_size());
    view.quantum = Eigen::MatrixXcd::Zero(side, side);
    for (const auto& branch : ensemble) {
        const Eigen::MatrixXcd rho = eve.empty() ? Eigen::MatrixXcd::Ones(1, 1) : partial_trace(branch.state, eve).entries();
        auto [it, inserted] = view.blocks.try_emplace(branch.records, Eigen::MatrixXcd::Zero(side, side));
        it->second += branch.probability * rho;
        view.quantum += branch.probability * rho;
    }
    return view;
}

double trace_norm(const Eigen::MatrixXcd& hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const EveView& lhs, const EveView& rhs) {
    double total = 0.0;
    for (const auto& [records, block] : lhs.blocks) {
        const auto it = rhs.blocks.find(records);
        total += it == rhs.blocks.end() ? trace_norm(block) : trace_norm(block - it->second);
    }
    for (const auto& [records, block] : rhs.blocks) {
        if (!lhs.blocks.count(records)) total += trace_norm(block);
    }
    return 0.5 * total;
}

}  // namespace

ConditionalStates eve_conditional_states(const ProtocolConfig& config, const AttackScript& script) {
    ProtocolConfig probe = config;
    probe.keys.assign(static_cast<std::size_t>(std::max(config.rounds, 1)), 0);
    validate(probe);
    validate_script(script, probe);

    std::size_t count = 1;
    for (int r = 0; r < config.rounds; ++r) {
        count *= static_cast<std::size_t>(config.d);
        if (count > kMaxKeyTuples) {
            throw Error(ErrorCode::ExplosionGuard, "d^rounds exceeds " + std::to_string(kMaxKeyTuples) + " key tuples");
        }
    }

    ConditionalStates out;
    std::vector<EveView> views;
    views.reserve(count);
    const auto eve = eve_register_labels(config.eve_registers);
    const auto d = static_cast<std::size_t>(config.d);
    const auto rounds = static_cast<std::size_t>(config.rounds);
    // Tuple index is mixed-radix with round 1 most significant.
    std::vector<std::size_t> place(rounds, 1);
    for (std::size_t r = rounds - 1; r-- > 0;) place[r] = place[r + 1] * d;
    for (std::size_t index = 0; index < count; ++index) {
        std::vector<int> keys(rounds);
        for (std::size_t r = 0; r < rounds; ++r) keys[r] = static_cast<int>((index / place[r]) % d);
        views.push_back(run_branching(config, script, keys));
        if (eve.empty()) {
            out.eve_states.emplace_back(std::nullopt);
        } else {
            Eigen::MatrixXcd rho = views.back().quantum;
            rho = (0.5 * (rho + rho.adjoint())).eval();
            out.eve_states.emplace_back(DensityMatrix(RegisterLayout(config.d, eve), std::move(rho)));
        }
        out.key_tuples.push_back(std::move(keys));
    }

    out.max_distance_per_round.assign(rounds, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t r = 0; r < rounds; ++r) {
            const auto digit = static_cast<std::size_t>(out.key_tuples[i][r]);
            for (std::size_t other = digit + 1; other < d; ++other) {
                const std::size_t j = i + (other - digit) * place[r];
                auto& slot = out.max_distance_per_round[r];
                slot = std::max(slot, trace_distance(views[i], views[j]));
            }
        }
    }
    if (count <= kMaxAllPairs) {
        double best = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = i + 1; j < count; ++j) best = std::max(best, trace_distance(views[i], views[j]));
        }
        out.max_pairwise_distance = best;
    }
    return out;
}

}  // namespace qkd
