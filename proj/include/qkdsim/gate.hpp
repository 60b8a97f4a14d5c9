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
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qkdsim/state.hpp"
#include "qkdsim/tolerance.hpp"

namespace qkd {

/// |v> -> |v + s mod d> on `target`.
struct Shift {
    std::string target;
    int s = 1;
};

/// |c, t> -> |c, t + s*c mod d>. s = 1 is the controlled mod-d addition,
/// s = d-1 its inverse.
struct ControlledAdd {
    std::string control;
    std::string target;
    int s = 1;
};

/// |v> -> omega^(s*v) |v>, omega = exp(2 pi i / d).
struct Phase {
    std::string target;
    int s = 1;
};

/// |x> -> d^(-1/2) sum_y omega^(x*y) |y>.
struct Fourier {
    std::string target;
};

/// Arbitrary unitary over `targets` (first target most significant in the
/// local index). Unitarity is checked here, once, so application stays cheap.
class DenseGate {
public:
    DenseGate(std::vector<std::string> targets, Eigen::MatrixXcd matrix, double unitarity_tol = tol::kUnitarity);

    const std::vector<std::string>& targets() const noexcept { return targets_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

private:
    std::vector<std::string> targets_;
    Eigen::MatrixXcd matrix_;
};

using GateSpec = std::variant<Shift, ControlledAdd, Phase, Fourier, DenseGate>;

/// Registers a gate acts on, in local-index order (control before target).
std::vector<std::string> gate_registers(const GateSpec& gate);

bool is_permutation_gate(const GateSpec& gate) noexcept;

/// Short human-readable form, e.g. "cadd(k->e, s=2)".
std::string describe(const GateSpec& gate);

/// Matrix of the gate on its own registers (side d^#registers).
Eigen::MatrixXcd gate_matrix(const GateSpec& gate, int d);

/// Fast path: Shift and ControlledAdd are pure index permutations (amplitudes
/// are moved, never recomputed), Phase is diagonal, Fourier and Dense go
/// through the local matrix kernel.
PureState apply_gate(const PureState& state, const GateSpec& gate);

/// Oracle path: every gate, permutations included, is expanded to its dense
/// local matrix and applied by matrix-vector products.
PureState apply_gate_dense(const PureState& state, const GateSpec& gate);

/// Apply `matrix` to the registers `targets` of `state`.
PureState apply_local_matrix(const PureState& state, std::span<const std::string> targets,
                             const Eigen::MatrixXcd& matrix);

}  // namespace qkd
