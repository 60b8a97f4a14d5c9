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

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qkdsim/layout.hpp"
#include "qkdsim/random.hpp"
#include "qkdsim/tolerance.hpp"

namespace qkd {

using Complex = std::complex<double>;

/// Normalized pure state over a RegisterLayout. Immutable once built; every
/// operation below returns a new value.
class PureState {
public:
    /// Validates length d^n and unit norm (within `norm_tol`).
    PureState(RegisterLayout layout, std::vector<Complex> amplitudes, double norm_tol = tol::kNorm);

    const RegisterLayout& layout() const noexcept { return layout_; }
    int dim() const noexcept { return layout_.dim(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    const Complex& amplitude(std::size_t index) const { return amplitudes_.at(index); }
    Complex amplitude(std::span<const int> values) const { return amplitudes_[layout_.index_of(values)]; }

    double norm() const noexcept;

    friend bool operator==(const PureState& lhs, const PureState& rhs) {
        return lhs.layout_ == rhs.layout_ && lhs.amplitudes_ == rhs.amplitudes_;
    }

private:
    struct Trusted {};
    PureState(Trusted, RegisterLayout layout, std::vector<Complex> amplitudes)
        : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {}

    friend class StateAccess;

    RegisterLayout layout_;
    std::vector<Complex> amplitudes_;
};

/// Reduced state on a subset of registers, with its spectrum computed once.
class DensityMatrix {
public:
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    DensityMatrix(RegisterLayout layout, Eigen::MatrixXcd entries);

    const RegisterLayout& layout() const noexcept { return layout_; }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    /// Eigenvalues in descending order.
    const std::vector<double>& spectrum() const noexcept { return spectrum_; }

private:
    RegisterLayout layout_;
    Eigen::MatrixXcd entries_;
    std::vector<double> spectrum_;
};

PureState basis_state(const RegisterLayout& layout, std::span<const int> values);
inline PureState basis_state(const RegisterLayout& layout, std::initializer_list<int> values) {
    return basis_state(layout, std::span<const int>(values.begin(), values.size()));
}

/// Tensor a fresh register in basis state |value> into `state` at `position`.
PureState insert_register(const PureState& state, const std::string& label, int value, std::size_t position);
/// Drop a register that sits in a definite basis value (probability >= 1 - tol).
/// Throws InvalidState when the register is still in superposition or entangled.
PureState remove_register(const PureState& state, std::string_view label, double tol = tol::kNorm);

DensityMatrix partial_trace(const PureState& state, std::span<const std::string> keep);
DensityMatrix partial_trace(const PureState& state, std::initializer_list<std::string> keep);

/// Singular values of the side_a-vs-rest reshaping, descending.
std::vector<double> schmidt_coefficients(const PureState& state, std::span<const std::string> side_a);
int schmidt_rank(const PureState& state, std::span<const std::string> side_a, double tol = tol::kSchmidtCutoff);
int schmidt_rank(const PureState& state, std::initializer_list<std::string> side_a, double tol = tol::kSchmidtCutoff);

/// Base-d entropy, so one maximally mixed qudit has entropy exactly 1.
double von_neumann_entropy(const DensityMatrix& rho);

/// Born-rule marginal distribution of one register.
std::vector<double> marginal_probabilities(const PureState& state, std::string_view label);

struct MeasurementBranch {
    int outcome;
    double probability;
    PureState post_state;
};

/// All outcomes with nonzero probability, in increasing outcome order.
std::vector<MeasurementBranch> measurement_branches(const PureState& state, std::string_view label);

struct MeasurementResult {
    int outcome;
    PureState post_state;
};

MeasurementResult measure(const PureState& state, std::string_view label, SeedStream& rng);

/// |<s1|s2>| >= 1 - tol.
bool states_equal_up_to_phase(const PureState& s1, const PureState& s2, double tol);

Complex inner_product(const PureState& bra, const PureState& ket);

}  // namespace qkd
