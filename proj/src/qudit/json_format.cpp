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

#include "qkdsim/json_format.hpp"

#include <cmath>
#include <cstdio>

#include "qkdsim/error.hpp"

namespace qkd {

namespace {

std::string format_real(double x) {
    if (!std::isfinite(x)) return "null";
    if (x == 0.0) x = 0.0;  // fold -0.0
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.16e", x);
    return buffer;
}

void write(const Json& value, int indent, int depth, std::string& out) {
    const auto newline = [&](int level) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * level), ' ');
    };
    switch (value.type()) {
        case Json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = value.begin(); it != value.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                write(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (value.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line; amplitude lists would
            // otherwise dominate every report.
            const bool flat = std::none_of(value.begin(), value.end(), [](const Json& v) {
                return v.is_object() || (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& w) {
                                             return w.is_structured();
                                         }));
            });
            out += '[';
            bool first = true;
            for (const auto& element : value) {
                if (!first) out += flat ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                write(element, flat ? -1 : indent, depth + 1, out);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float:
            out += format_real(value.get<double>());
            return;
        default:
            out += value.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
    std::string out;
    write(value, indent, 0, out);
    return out;
}

Json amplitudes_to_json(const PureState& state) {
    Json out = Json::array();
    for (const auto& a : state.amplitudes()) out.push_back(Json::array({a.real(), a.imag()}));
    return out;
}

std::vector<Complex> amplitudes_from_json(const Json& value) {
    if (!value.is_array()) throw Error(ErrorCode::InvalidConfig, "amplitudes must be an array of [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(value.size());
    for (const auto& pair : value) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw Error(ErrorCode::InvalidConfig, "each amplitude must be a [re, im] pair of numbers");
        }
        out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return out;
}

}  // namespace qkd
