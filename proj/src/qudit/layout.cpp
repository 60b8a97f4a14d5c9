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

#include "qkdsim/layout.hpp"

#include <algorithm>
#include <set>

#include "qkdsim/error.hpp"

namespace qkd {

RegisterLayout::RegisterLayout(int d, std::vector<std::string> labels) : d_(d), labels_(std::move(labels)) {
    if (d_ < 2 || d_ > kMaxDimension) {
        throw Error(ErrorCode::InvalidDimension,
                    "dimension must be in [2, " + std::to_string(kMaxDimension) + "], got " + std::to_string(d_));
    }
    if (labels_.empty()) throw Error(ErrorCode::InvalidLayout, "layout needs at least one register");
    if (labels_.size() > kMaxRegisters) {
        throw Error(ErrorCode::InvalidLayout, "at most " + std::to_string(kMaxRegisters) + " registers supported");
    }
    std::set<std::string> seen;
    for (const auto& label : labels_) {
        if (label.empty()) throw Error(ErrorCode::InvalidLayout, "register labels must be nonempty");
        if (!seen.insert(label).second) throw Error(ErrorCode::InvalidLayout, "duplicate register label '" + label + "'");
    }
    strides_.assign(labels_.size(), 1);
    for (std::size_t i = labels_.size(); i-- > 0;) {
        strides_[i] = state_size_;
        state_size_ *= static_cast<std::size_t>(d_);
    }
}

bool RegisterLayout::contains(std::string_view label) const noexcept {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t RegisterLayout::position(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error(ErrorCode::UnknownRegister, "no register named '" + std::string(label) + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t RegisterLayout::index_of(std::span<const int> values) const {
    if (values.size() != labels_.size()) {
        throw Error(ErrorCode::ValueOutOfRange, "expected " + std::to_string(labels_.size()) + " register values, got " +
                                                    std::to_string(values.size()));
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] >= d_) {
            throw Error(ErrorCode::ValueOutOfRange, "value " + std::to_string(values[i]) + " for register '" +
                                                        labels_[i] + "' outside [0, " + std::to_string(d_) + ")");
        }
        index += static_cast<std::size_t>(values[i]) * strides_[i];
    }
    return index;
}

std::vector<int> RegisterLayout::values_of(std::size_t index) const {
    std::vector<int> values(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) values[i] = digit(index, i);
    return values;
}

RegisterLayout RegisterLayout::with_inserted(std::string label, std::size_t position) const {
    if (contains(label)) throw Error(ErrorCode::RegisterCollision, "register '" + label + "' already present");
    auto labels = labels_;
    labels.insert(labels.begin() + static_cast<std::ptrdiff_t>(std::min(position, labels.size())), std::move(label));
    return RegisterLayout(d_, std::move(labels));
}

RegisterLayout RegisterLayout::without(std::string_view label) const {
    auto labels = labels_;
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(position(label)));
    return RegisterLayout(d_, std::move(labels));
}

RegisterLayout RegisterLayout::restricted_to(std::span<const std::string> keep) const {
    for (const auto& label : keep) position(label);
    std::vector<std::string> labels;
    for (const auto& label : labels_) {
        if (std::find(keep.begin(), keep.end(), label) != keep.end()) labels.push_back(label);
    }
    return RegisterLayout(d_, std::move(labels));
}

}  // namespace qkd
