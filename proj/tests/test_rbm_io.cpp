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

#include <fstream>

#include "nqs/rbm_io.hpp"
#include "nqs/verify.hpp"
#include "test_support.hpp"

namespace nqs {
namespace {

TEST(RbmIo, RoundTripIsBitExact) {
  Rng rng(21);
  const RbmState s = random_state(5, 7, rng);
  const auto dir = testing::scratch_dir("rbm_io");
  const std::string path = (dir / "s.json").string();
  save_rbm(path, s, {{"note", "x"}});
  nlohmann::json meta;
  const RbmState back = load_rbm(path, &meta);
  EXPECT_EQ(back, s);
  EXPECT_EQ(meta.at("note"), "x");
}

TEST(RbmIo, JsonRoundTripWithoutHiddenUnits) {
  const RbmState s(3, 0);
  EXPECT_EQ(rbm_from_json(rbm_to_json(s)), s);
}

TEST(RbmIo, ShapeMismatchIsRejected) {
  Rng rng(22);
  nlohmann::json doc = rbm_to_json(random_state(2, 2, rng));
  doc["n_hidden"] = 3;
  EXPECT_THROW(rbm_from_json(doc), Error);
  doc = rbm_to_json(random_state(2, 2, rng));
  doc["weights"][0].erase(1);
  EXPECT_THROW(rbm_from_json(doc), Error);
}

TEST(RbmIo, MalformedComplexIsRejected) {
  EXPECT_THROW(complex_from_json(nlohmann::json::array({1.0}), "x"), Error);
  EXPECT_THROW(complex_from_json(nlohmann::json("a"), "x"), Error);
  EXPECT_EQ(complex_from_json(complex_to_json({1.5, -2.0}), "x"), Complex(1.5, -2.0));
}

TEST(RbmIo, MissingFileIsIoError) {
  EXPECT_THROW(load_rbm("/nonexistent/dir/state.json"), IoError);
}

TEST(RbmIo, GarbageFileIsRejected) {
  const auto path = testing::scratch_dir("rbm_io_bad") / "bad.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_rbm(path.string()), Error);
}

}  // namespace
}  // namespace nqs
