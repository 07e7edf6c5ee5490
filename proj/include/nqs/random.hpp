// Copyright 2026 The nqs-circuits Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NQS_RANDOM_HPP
#define NQS_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace nqs {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Substream seed for (seed, salt, index). The salt names the consumer
// ("sampler", "learner", ...) so that unrelated modules never share a stream;
// the index separates chains, iterations, trajectories.
//
//   derive_seed(s, salt, i) = mix64(mix64(s ^ fnv1a(salt)) + mix64(i + 1))
std::uint64_t derive_seed(std::uint64_t seed, std::string_view salt,
                          std::uint64_t index = 0);

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_index(Rng &rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

}  // namespace nqs

#endif  // NQS_RANDOM_HPP
