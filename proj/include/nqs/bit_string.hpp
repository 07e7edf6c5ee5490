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

#ifndef NQS_BIT_STRING_HPP
#define NQS_BIT_STRING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nqs/types.hpp"

namespace nqs {

// Computational-basis label |B_0 ... B_{N-1}>, B_j in {0, 1}, with
// Z|B> = (-1)^B |B>. Index conversion is little-endian: bit j of the index
// is B_j.
class BitString {
 public:
  BitString() = default;
  explicit BitString(Index n) : bits_(static_cast<std::size_t>(n), 0) {}
  explicit BitString(std::vector<std::uint8_t> bits);

  static BitString from_index(std::uint64_t index, Index n);
  std::uint64_t to_index() const;

  Index size() const { return static_cast<Index>(bits_.size()); }
  std::uint8_t operator[](Index j) const { return bits_[static_cast<std::size_t>(j)]; }
  void flip(Index j) { bits_[static_cast<std::size_t>(j)] ^= 1U; }
  void set(Index j, std::uint8_t value);

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::string to_string() const;

  friend bool operator==(const BitString &, const BitString &) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace nqs

#endif  // NQS_BIT_STRING_HPP
