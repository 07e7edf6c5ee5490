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

#ifndef NQS_RBM_IO_HPP
#define NQS_RBM_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "nqs/rbm_state.hpp"

namespace nqs {

// RBM parameter document:
//   {"n_visible": N, "n_hidden": M,
//    "visible_bias": [[re, im], ...], "hidden_bias": [[re, im], ...],
//    "weights": [[[re, im], ...M], ...N],
//    "metadata": {...}}            (optional, free-form)
// Doubles are written in shortest round-trip form, so save/load is exact.
nlohmann::json rbm_to_json(const RbmState &state);
RbmState rbm_from_json(const nlohmann::json &doc);

void save_rbm(const std::string &path, const RbmState &state,
              const nlohmann::json &metadata = nlohmann::json::object());
RbmState load_rbm(const std::string &path, nlohmann::json *metadata = nullptr);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json &v, const std::string &where);

}  // namespace nqs

#endif  // NQS_RBM_IO_HPP
