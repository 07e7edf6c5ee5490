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

#include "nqs/bit_string.hpp"

namespace nqs {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j] > 1) {
      throw StructuralError("bit " + std::to_string(j) + " is " +
                            std::to_string(bits_[j]) + ", expected 0 or 1");
    }
  }
}

BitString BitString::from_index(std::uint64_t index, Index n) {
  if (n < 0 || n > 63) throw StructuralError("bitstring length out of range");
  BitString b(n);
  for (Index j = 0; j < n; ++j) b.bits_[static_cast<std::size_t>(j)] = (index >> j) & 1U;
  return b;
}

std::uint64_t BitString::to_index() const {
  if (bits_.size() > 63) throw StructuralError("bitstring too long for an index");
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    index |= static_cast<std::uint64_t>(bits_[j]) << j;
  }
  return index;
}

void BitString::set(Index j, std::uint8_t value) {
  if (value > 1) throw StructuralError("bit value must be 0 or 1");
  bits_[static_cast<std::size_t>(j)] = value;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace nqs
