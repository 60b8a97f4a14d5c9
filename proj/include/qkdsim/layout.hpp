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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qkd {

/// Ordered set of d-level registers. The basis index of a value tuple
/// (v1, ..., vn) is the mixed-radix number sum(vi * d^(n-i)), so the first
/// label is the most significant digit.
class RegisterLayout {
public:
    static constexpr int kMaxDimension = 16;
    static constexpr std::size_t kMaxRegisters = 8;

    RegisterLayout(int d, std::vector<std::string> labels);

    int dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// d^n, the length of an amplitude vector over this layout.
    std::size_t state_size() const noexcept { return state_size_; }

    bool contains(std::string_view label) const noexcept;
    /// Position of `label`; throws UnknownRegister.
    std::size_t position(std::string_view label) const;
    /// Place value d^(n-1-position) of the register at `position`.
    std::size_t stride(std::size_t position) const noexcept { return strides_[position]; }

    std::size_t index_of(std::span<const int> values) const;
    std::vector<int> values_of(std::size_t index) const;
    int digit(std::size_t index, std::size_t position) const noexcept {
        return static_cast<int>((index / strides_[position]) % static_cast<std::size_t>(d_));
    }

    /// Layout with `label` inserted before `position`.
    RegisterLayout with_inserted(std::string label, std::size_t position) const;
    RegisterLayout without(std::string_view label) const;
    /// Registers of this layout that appear in `keep`, in layout order.
    RegisterLayout restricted_to(std::span<const std::string> keep) const;

    friend bool operator==(const RegisterLayout& lhs, const RegisterLayout& rhs) {
        return lhs.d_ == rhs.d_ && lhs.labels_ == rhs.labels_;
    }

private:
    int d_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> strides_;
    std::size_t state_size_ = 1;
};

}  // namespace qkd
