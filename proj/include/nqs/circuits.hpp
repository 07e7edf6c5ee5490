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

#ifndef NQS_CIRCUITS_HPP
#define NQS_CIRCUITS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nqs/exact_gates.hpp"
#include "nqs/gate_learner.hpp"

namespace nqs {

// Gates in execution order (front is applied first).
struct Circuit {
  Index n_qubits = 0;
  std::vector<GateOp> gates;

  void validate() const;
  friend bool operator==(const Circuit &, const Circuit &) = default;
};

// H on qubits 0..n-1 in ascending order.
Circuit build_hadamard_transform(Index n);

// For each qubit i: H_i, then CRZ(pi/2) on (i, i+1) and CRZ(pi/4) on
// (i, i+2) where those qubits exist. No swaps, no further rotations.
Circuit build_truncated_fourier(Index n);

// Text format, one gate per line:
//   H q | X q | Y q | Z q | RZ q phi | CRZ q1 q2 phi
// '#' starts a comment. When n_qubits is omitted it is inferred as the
// largest index + 1.
Circuit parse_circuit(const std::string &text, std::optional<Index> n_qubits = std::nullopt);
Circuit load_circuit(const std::string &path, std::optional<Index> n_qubits = std::nullopt);
std::string circuit_to_text(const Circuit &circuit);

enum class GateMethod { Exact, Learned };

struct GateRecord {
  Index gate_index = 0;
  GateOp gate;
  GateMethod method = GateMethod::Exact;
  std::optional<double> overlap_estimate;
  std::optional<double> overlap_std_error;
  double wall_time_s = 0.0;
  Index hidden_units_after = 0;
};

struct ExecutionResult {
  RbmState state;
  std::vector<GateRecord> trace;
  // Set when a learned gate failed; state is then the last good state and
  // trace covers the gates applied before the failure.
  std::optional<std::string> failure;
};

// Called after each gate with the record and the state it produced.
using GateObserver = std::function<void(const GateRecord &, const RbmState &)>;

// Exact gates go through the closed-form updates, H through learn_hadamard
// with seed derive_seed(lcfg.seed, "gate", index).
ExecutionResult execute(const Circuit &circuit, const RbmState &state,
                        const LearnerConfig &lcfg, const SamplerConfig &scfg,
                        const GateObserver &observer = {});

}  // namespace nqs

#endif  // NQS_CIRCUITS_HPP
