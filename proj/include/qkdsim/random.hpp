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
#include <random>

namespace qkd {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seeded source of randomness for measurement collapse and key generation.
///
/// Built on std::mt19937_64, whose output sequence is fixed by the standard,
/// and converts raw words to doubles/integers by hand instead of going through
/// the implementation-defined <random> distributions. Given the same seed the
/// stream is identical on every platform.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() { return engine_(); }
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, n) without modulo bias.
    int uniform_int(int n);

    /// Independent child stream; same (seed, tag) always yields the same child.
    SeedStream fork(std::uint64_t tag) const { return SeedStream(splitmix64(seed_ ^ splitmix64(tag))); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qkd
