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


#include <gtest/gtest.h>

#include "nqs/bit_string.hpp"

namespace nqs {
namespace {

TEST(BitString, IndexIsLittleEndian) {
  const BitString b = BitString::from_index(0b0110, 4);
  EXPECT_EQ(b[0], 0);
  EXPECT_EQ(b[1], 1);
  EXPECT_EQ(b[2], 1);
  EXPECT_EQ(b[3], 0);
  EXPECT_EQ(b.to_index(), 6u);
}

TEST(BitString, RoundTripsEveryIndex) {
  for (std::uint64_t i = 0; i < 64; ++i) EXPECT_EQ(BitString::from_index(i, 6).to_index(), i);
}

TEST(BitString, RejectsNonBinaryEntries) {
  EXPECT_THROW(BitString(std::vector<std::uint8_t>{0, 2}), StructuralError);
  BitString b(3);
  EXPECT_THROW(b.set(0, 5), StructuralError);
}

TEST(BitString, FlipIsInvolution) {
  BitString b = BitString::from_index(5, 3);
  const BitString orig = b;
  b.flip(1);
  EXPECT_NE(b, orig);
  b.flip(1);
  EXPECT_EQ(b, orig);
}

}  // namespace
}  // namespace nqs
