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

#include "qkdsim/gate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qkdsim/error.hpp"
#include "state_access.hpp"

namespace qkd {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int residue(int s, int d) { return ((s % d) + d) % d; }

// omega^k for k in [0, d); shared by the fast path and the dense matrices so
// both routes multiply by identical constants.
std::vector<Complex> roots_of_unity(int d) {
    std::vector<Complex> roots(static_cast<std::size_t>(d));
    roots[0] = 1.0;
    for (int k = 1; k < d; ++k) roots[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
    return roots;
}

std::vector<std::size_t> register_positions(const RegisterLayout& layout, std::span<const std::string> labels) {
    std::vector<std::size_t> positions;
    positions.reserve(labels.size());
    for (const auto& label : labels) {
        const std::size_t p = layout.position(label);
        if (std::find(positions.begin(), positions.end(), p) != positions.end()) {
            throw Error(ErrorCode::InvalidGate, "register '" + label + "' used twice by one gate");
        }
        positions.push_back(p);
    }
    return positions;
}

PureState permute(const PureState& state, auto&& image_of) {
    const auto amps = state.amplitudes();
    std::vector<Complex> out(amps.size());
    for (std::size_t index = 0; index < amps.size(); ++index) out[image_of(index)] = amps[index];
    return StateAccess::trusted(state.layout(), std::move(out));
}

PureState apply_shift(const PureState& state, const Shift& gate) {
    const auto& layout = state.layout();
    const int d = layout.dim();
    const std::size_t p = layout.position(gate.target);
    const std::size_t stride = layout.stride(p);
    const int s = residue(gate.s, d);
    if (s == 0) return state;
    return permute(state, [&](std::size_t index) {
        const int v = layout.digit(index, p);
        const int w = (v + s) % d;
        return index - static_cast<std::size_t>(v) * stride + static_cast<std::size_t>(w) * stride;
    });
}

PureState apply_controlled_add(const PureState& state, const ControlledAdd& gate) {
    const auto& layout = state.layout();
    const int d = layout.dim();
    const std::array<std::string, 2> labels{gate.control, gate.target};
    const auto positions = register_positions(layout, labels);
    const std::size_t stride = layout.stride(positions[1]);
    const int s = residue(gate.s, d);
    if (s == 0) return state;
    return permute(state, [&](std::size_t index) {
        const int c = layout.digit(index, positions[0]);
        const int t = layout.digit(index, positions[1]);
        const int u = (t + s * c) % d;
        return index - static_cast<std::size_t>(t) * stride + static_cast<std::size_t>(u) * stride;
    });
}

PureState apply_phase(const PureState& state, const Phase& gate) {
    const auto& layout = state.layout();
    const int d = layout.dim();
    const std::size_t p = layout.position(gate.target);
    const int s = residue(gate.s, d);
    if (s == 0) return state;
    const auto roots = roots_of_unity(d);
    const auto amps = state.amplitudes();
    std::vector<Complex> out(amps.begin(), amps.end());
    for (std::size_t index = 0; index < out.size(); ++index) {
        out[index] *= roots[static_cast<std::size_t>((s * layout.digit(index, p)) % d)];
    }
    return StateAccess::trusted(layout, std::move(out));
}

}  // namespace

DenseGate::DenseGate(std::vector<std::string> targets, Eigen::MatrixXcd matrix, double unitarity_tol)
    : targets_(std::move(targets)), matrix_(std::move(matrix)) {
    if (targets_.empty()) throw Error(ErrorCode::InvalidGate, "dense gate needs at least one target");
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw Error(ErrorCode::NonUnitaryMatrix, "dense gate matrix must be square and nonempty");
    }
    const Eigen::MatrixXcd defect =
        matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
    if (!(defect.cwiseAbs().maxCoeff() <= unitarity_tol)) {
        throw Error(ErrorCode::NonUnitaryMatrix, "dense gate matrix fails the unitarity check");
    }
}

std::vector<std::string> gate_registers(const GateSpec& gate) {
    return std::visit(Overloaded{
                          [](const Shift& g) { return std::vector<std::string>{g.target}; },
                          [](const ControlledAdd& g) { return std::vector<std::string>{g.control, g.target}; },
                          [](const Phase& g) { return std::vector<std::string>{g.target}; },
                          [](const Fourier& g) { return std::vector<std::string>{g.target}; },
                          [](const DenseGate& g) { return g.targets(); },
                      },
                      gate);
}

bool is_permutation_gate(const GateSpec& gate) noexcept {
    return std::holds_alternative<Shift>(gate) || std::holds_alternative<ControlledAdd>(gate);
}

std::string describe(const GateSpec& gate) {
    return std::visit(Overloaded{
                          [](const Shift& g) { return "shift(" + g.target + ", s=" + std::to_string(g.s) + ")"; },
                          [](const ControlledAdd& g) {
                              return "cadd(" + g.control + "->" + g.target + ", s=" + std::to_string(g.s) + ")";
                          },
                          [](const Phase& g) { return "phase(" + g.target + ", s=" + std::to_string(g.s) + ")"; },
                          [](const Fourier& g) { return "fourier(" + g.target + ")"; },
                          [](const DenseGate& g) {
                              std::string out = "dense(";
                              for (std::size_t i = 0; i < g.targets().size(); ++i) {
                                  out += (i ? "," : "") + g.targets()[i];
                              }
                              return out + ")";
                          },
                      },
                      gate);
}

Eigen::MatrixXcd gate_matrix(const GateSpec& gate, int d) {
    const auto n = static_cast<Eigen::Index>(d);
    return std::visit(
        Overloaded{
            [&](const Shift& g) {
                const int s = residue(g.s, d);
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
                for (int v = 0; v < d; ++v) m((v + s) % d, v) = 1.0;
                return m;
            },
            [&](const ControlledAdd& g) {
                const int s = residue(g.s, d);
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n * n, n * n);
                for (int c = 0; c < d; ++c) {
                    for (int t = 0; t < d; ++t) m(c * d + (t + s * c) % d, c * d + t) = 1.0;
                }
                return m;
            },
            [&](const Phase& g) {
                const int s = residue(g.s, d);
                const auto roots = roots_of_unity(d);
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
                for (int v = 0; v < d; ++v) m(v, v) = roots[static_cast<std::size_t>((s * v) % d)];
                return m;
            },
            [&](const Fourier&) {
                const auto roots = roots_of_unity(d);
                const double scale = 1.0 / std::sqrt(static_cast<double>(d));
                Eigen::MatrixXcd m(n, n);
                for (int y = 0; y < d; ++y) {
                    for (int x = 0; x < d; ++x) m(y, x) = roots[static_cast<std::size_t>((x * y) % d)] * scale;
                }
                return m;
            },
            [&](const DenseGate& g) { return g.matrix(); },
        },
        gate);
}

PureState apply_local_matrix(const PureState& state, std::span<const std::string> targets,
                             const Eigen::MatrixXcd& matrix) {
    const auto& layout = state.layout();
    const auto positions = register_positions(layout, targets);
    const auto d = static_cast<std::size_t>(layout.dim());
    std::size_t side = 1;
    for (std::size_t i = 0; i < positions.size(); ++i) side *= d;
    if (static_cast<std::size_t>(matrix.rows()) != side || static_cast<std::size_t>(matrix.cols()) != side) {
        throw Error(ErrorCode::InvalidGate, "matrix side " + std::to_string(matrix.rows()) + " does not match d^" +
                                                std::to_string(positions.size()) + " = " + std::to_string(side));
    }
    // offsets[local] = global index displacement of local value tuple.
    std::vector<std::size_t> offsets(side, 0);
    for (std::size_t local = 0; local < side; ++local) {
        std::size_t rest = local;
        for (std::size_t i = positions.size(); i-- > 0;) {
            offsets[local] += (rest % d) * layout.stride(positions[i]);
            rest /= d;
        }
    }
    const auto amps = state.amplitudes();
    std::vector<Complex> out(amps.size());
    Eigen::VectorXcd in_block(static_cast<Eigen::Index>(side));
    for (std::size_t base = 0; base < amps.size(); ++base) {
        const bool is_base = std::all_of(positions.begin(), positions.end(),
                                         [&](std::size_t p) { return layout.digit(base, p) == 0; });
        if (!is_base) continue;
        for (std::size_t local = 0; local < side; ++local) in_block(static_cast<Eigen::Index>(local)) = amps[base + offsets[local]];
        const Eigen::VectorXcd out_block = matrix * in_block;
        for (std::size_t local = 0; local < side; ++local) out[base + offsets[local]] = out_block(static_cast<Eigen::Index>(local));
    }
    return StateAccess::trusted(layout, std::move(out));
}

PureState apply_gate(const PureState& state, const GateSpec& gate) {
    return std::visit(Overloaded{
                          [&](const Shift& g) { return apply_shift(state, g); },
                          [&](const ControlledAdd& g) { return apply_controlled_add(state, g); },
                          [&](const Phase& g) { return apply_phase(state, g); },
                          [&](const Fourier& g) {
                              const std::array<std::string, 1> targets{g.target};
                              return apply_local_matrix(state, targets, gate_matrix(gate, state.dim()));
                          },
                          [&](const DenseGate& g) { return apply_local_matrix(state, g.targets(), g.matrix()); },
                      },
                      gate);
}

PureState apply_gate_dense(const PureState& state, const GateSpec& gate) {
    const auto registers = gate_registers(gate);
    return apply_local_matrix(state, registers, gate_matrix(gate, state.dim()));
}

}  // namespace qkd
