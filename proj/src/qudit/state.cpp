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

#include "qkdsim/state.hpp"

#include <algorithm>
#include <cmath>

#include "qkdsim/error.hpp"
#include "state_access.hpp"

namespace qkd {

namespace {

double squared_norm(std::span<const Complex> amplitudes) {
    double sum = 0.0;
    for (const auto& a : amplitudes) sum += std::norm(a);
    return sum;
}

// Rows indexed by the mixed-radix value of `rows` registers, columns by the rest.
Eigen::MatrixXcd reshape(const PureState& state, std::span<const std::string> rows) {
    const auto& layout = state.layout();
    const auto d = static_cast<std::size_t>(layout.dim());
    std::vector<bool> is_row(layout.size(), false);
    for (const auto& label : rows) is_row[layout.position(label)] = true;

    std::size_t n_rows = 1;
    std::size_t n_cols = 1;
    for (bool r : is_row) (r ? n_rows : n_cols) *= d;

    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    const auto amps = state.amplitudes();
    for (std::size_t index = 0; index < amps.size(); ++index) {
        std::size_t row = 0;
        std::size_t col = 0;
        for (std::size_t p = 0; p < layout.size(); ++p) {
            const auto digit = static_cast<std::size_t>(layout.digit(index, p));
            if (is_row[p]) {
                row = row * d + digit;
            } else {
                col = col * d + digit;
            }
        }
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amps[index];
    }
    return m;
}

void check_bipartition(const RegisterLayout& layout, std::span<const std::string> side_a) {
    if (side_a.empty()) throw Error(ErrorCode::InvalidBipartition, "side A of a cut must be nonempty");
    for (const auto& label : side_a) {
        if (!layout.contains(label)) throw Error(ErrorCode::InvalidBipartition, "register '" + label + "' not in layout");
        if (std::count(side_a.begin(), side_a.end(), label) > 1) {
            throw Error(ErrorCode::InvalidBipartition, "register '" + label + "' listed twice");
        }
    }
    if (side_a.size() >= layout.size()) throw Error(ErrorCode::InvalidBipartition, "side A must be a proper subset");
}

}  // namespace

PureState::PureState(RegisterLayout layout, std::vector<Complex> amplitudes, double norm_tol)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_.state_size()) {
        throw Error(ErrorCode::InvalidState, "expected " + std::to_string(layout_.state_size()) + " amplitudes, got " +
                                                 std::to_string(amplitudes_.size()));
    }
    const double n = norm();
    if (!(std::abs(n - 1.0) <= norm_tol)) {
        throw Error(ErrorCode::InvalidState, "state norm " + std::to_string(n) + " is not 1");
    }
}

double PureState::norm() const noexcept { return std::sqrt(squared_norm(amplitudes_)); }

DensityMatrix::DensityMatrix(RegisterLayout layout, Eigen::MatrixXcd entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
    const auto side = static_cast<Eigen::Index>(layout_.state_size());
    if (entries_.rows() != side || entries_.cols() != side) {
        throw Error(ErrorCode::InvalidState, "density matrix side does not match layout");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian) {
        throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
    }
    const Complex trace = entries_.trace();
    if (std::abs(trace.real() - 1.0) > tol::kTrace || std::abs(trace.imag()) > tol::kTrace) {
        throw Error(ErrorCode::InvalidState, "density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    const auto& values = solver.eigenvalues();
    spectrum_.assign(values.data(), values.data() + values.size());
    std::sort(spectrum_.begin(), spectrum_.end(), std::greater<>());
    if (spectrum_.back() < -tol::kNegativeEigenvalue) {
        throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
    }
}

PureState basis_state(const RegisterLayout& layout, std::span<const int> values) {
    std::vector<Complex> amplitudes(layout.state_size());
    amplitudes[layout.index_of(values)] = 1.0;
    return StateAccess::trusted(layout, std::move(amplitudes));
}

PureState insert_register(const PureState& state, const std::string& label, int value, std::size_t position) {
    const auto& old_layout = state.layout();
    if (value < 0 || value >= old_layout.dim()) {
        throw Error(ErrorCode::ValueOutOfRange, "value " + std::to_string(value) + " for new register '" + label + "'");
    }
    position = std::min(position, old_layout.size());
    RegisterLayout layout = old_layout.with_inserted(label, position);
    std::vector<Complex> amplitudes(layout.state_size());
    const auto old = state.amplitudes();
    const std::size_t offset = static_cast<std::size_t>(value) * layout.stride(position);
    for (std::size_t index = 0; index < old.size(); ++index) {
        std::size_t target = offset;
        for (std::size_t p = 0; p < old_layout.size(); ++p) {
            const std::size_t q = p < position ? p : p + 1;
            target += static_cast<std::size_t>(old_layout.digit(index, p)) * layout.stride(q);
        }
        amplitudes[target] = old[index];
    }
    return StateAccess::trusted(std::move(layout), std::move(amplitudes));
}

PureState remove_register(const PureState& state, std::string_view label, double tol) {
    const auto& layout = state.layout();
    const std::size_t position = layout.position(label);
    const auto probabilities = marginal_probabilities(state, label);
    const auto best = std::max_element(probabilities.begin(), probabilities.end());
    if (*best < 1.0 - tol) {
        throw Error(ErrorCode::InvalidState,
                    "register '" + std::string(label) + "' is not in a definite basis state and cannot be removed");
    }
    const int value = static_cast<int>(best - probabilities.begin());
    RegisterLayout reduced = layout.without(label);
    std::vector<Complex> amplitudes(reduced.state_size());
    const auto amps = state.amplitudes();
    for (std::size_t index = 0; index < amps.size(); ++index) {
        if (layout.digit(index, position) != value) continue;
        std::size_t target = 0;
        std::size_t q = 0;
        for (std::size_t p = 0; p < layout.size(); ++p) {
            if (p == position) continue;
            target += static_cast<std::size_t>(layout.digit(index, p)) * reduced.stride(q++);
        }
        amplitudes[target] = amps[index];
    }
    return PureState(std::move(reduced), std::move(amplitudes), tol);
}

DensityMatrix partial_trace(const PureState& state, std::span<const std::string> keep) {
    if (keep.empty()) throw Error(ErrorCode::EmptyKeepSet, "partial trace needs at least one kept register");
    const auto& layout = state.layout();
    for (const auto& label : keep) layout.position(label);
    RegisterLayout kept = layout.restricted_to(keep);
    const Eigen::MatrixXcd m = reshape(state, kept.labels());
    Eigen::MatrixXcd rho = m * m.adjoint();
    // Exact Hermitian symmetry; the product above is only Hermitian up to rounding.
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(std::move(kept), std::move(rho));
}

DensityMatrix partial_trace(const PureState& state, std::initializer_list<std::string> keep) {
    return partial_trace(state, std::span<const std::string>(keep.begin(), keep.size()));
}

std::vector<double> schmidt_coefficients(const PureState& state, std::span<const std::string> side_a) {
    check_bipartition(state.layout(), side_a);
    std::vector<std::string> ordered = state.layout().restricted_to(side_a).labels();
    const Eigen::MatrixXcd m = reshape(state, ordered);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& values = svd.singularValues();
    return {values.data(), values.data() + values.size()};
}

int schmidt_rank(const PureState& state, std::span<const std::string> side_a, double tol) {
    const auto values = schmidt_coefficients(state, side_a);
    return static_cast<int>(std::count_if(values.begin(), values.end(), [tol](double s) { return s > tol; }));
}

int schmidt_rank(const PureState& state, std::initializer_list<std::string> side_a, double tol) {
    return schmidt_rank(state, std::span<const std::string>(side_a.begin(), side_a.size()), tol);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const double log_d = std::log(static_cast<double>(rho.layout().dim()));
    double entropy = 0.0;
    for (double lambda : rho.spectrum()) {
        if (lambda > tol::kEntropyCutoff) entropy -= lambda * std::log(lambda);
    }
    // -0.0 for pure states reads badly in reports.
    return entropy <= 0.0 ? 0.0 : entropy / log_d;
}

std::vector<double> marginal_probabilities(const PureState& state, std::string_view label) {
    const auto& layout = state.layout();
    const std::size_t position = layout.position(label);
    std::vector<double> probabilities(static_cast<std::size_t>(layout.dim()), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t index = 0; index < amps.size(); ++index) {
        probabilities[static_cast<std::size_t>(layout.digit(index, position))] += std::norm(amps[index]);
    }
    return probabilities;
}

std::vector<MeasurementBranch> measurement_branches(const PureState& state, std::string_view label) {
    const auto& layout = state.layout();
    const std::size_t position = layout.position(label);
    const auto probabilities = marginal_probabilities(state, label);
    const auto amps = state.amplitudes();
    std::vector<MeasurementBranch> branches;
    for (int outcome = 0; outcome < layout.dim(); ++outcome) {
        const double p = probabilities[static_cast<std::size_t>(outcome)];
        if (p <= 0.0) continue;
        const double scale = 1.0 / std::sqrt(p);
        std::vector<Complex> projected(amps.size());
        for (std::size_t index = 0; index < amps.size(); ++index) {
            if (layout.digit(index, position) == outcome) projected[index] = p == 1.0 ? amps[index] : amps[index] * scale;
        }
        branches.push_back({outcome, p, StateAccess::trusted(layout, std::move(projected))});
    }
    return branches;
}

MeasurementResult measure(const PureState& state, std::string_view label, SeedStream& rng) {
    auto branches = measurement_branches(state, label);
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (auto& branch : branches) {
        cumulative += branch.probability;
        if (u < cumulative) return {branch.outcome, std::move(branch.post_state)};
    }
    // u landed in the rounding gap above the last cumulative sum.
    return {branches.back().outcome, std::move(branches.back().post_state)};
}

Complex inner_product(const PureState& bra, const PureState& ket) {
    if (!(bra.layout() == ket.layout())) throw Error(ErrorCode::LayoutMismatch, "states have different layouts");
    Complex sum = 0.0;
    const auto a = bra.amplitudes();
    const auto b = ket.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
    return sum;
}

bool states_equal_up_to_phase(const PureState& s1, const PureState& s2, double tol) {
    return std::abs(inner_product(s1, s2)) >= 1.0 - tol;
}

}  // namespace qkd
