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

#include <random>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "qkdsim/error.hpp"
#include "qkdsim/state.hpp"

namespace qkd::testing {

inline PureState random_state(const RegisterLayout& layout, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> amps(layout.state_size());
    double norm = 0.0;
    for (auto& a : amps) {
        a = Complex(g(rng), g(rng));
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    return PureState(layout, std::move(amps));
}

inline oracle::Vec to_oracle(const PureState& s) {
    const oracle::Space space{s.dim(), s.layout().labels()};
    return oracle::from_amplitudes(space, {s.amplitudes().begin(), s.amplitudes().end()});
}

inline double max_abs_diff(const PureState& x, const PureState& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.amplitudes().size(); ++i) m = std::max(m, std::abs(x.amplitude(i) - y.amplitude(i)));
    return m;
}

inline double max_abs_diff(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    return (x - y).cwiseAbs().maxCoeff();
}

/// Expects `fn` to throw qkd::Error with the given code.
template <class Fn>
::testing::AssertionResult throws_code(Fn&& fn, ErrorCode code) {
    try {
        fn();
    } catch (const Error& e) {
        if (e.code() == code) return ::testing::AssertionSuccess();
        return ::testing::AssertionFailure() << "threw " << error_code_name(e.code()) << ": " << e.what();
    }
    return ::testing::AssertionFailure() << "did not throw " << error_code_name(code);
}

}  // namespace qkd::testing
