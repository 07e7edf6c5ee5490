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

#ifndef NQS_ORACLE_HPP
#define NQS_ORACLE_HPP

#include <cstdint>
#include <string>

#include "nqs/circuits.hpp"
#include "nqs/gate_learner.hpp"
#include "nqs/rbm_state.hpp"

namespace nqs {

inline constexpr Index kDefaultOracleLimit = 20;

// Dense 2^N amplitude vector. Little-endian: bit j of the index is qubit j.
class StateVector {
 public:
  StateVector(Index n_qubits, ComplexVector amplitudes);
  static StateVector basis_state(Index n_qubits, std::uint64_t index);

  Index n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
  const ComplexVector &amplitudes() const { return amplitudes_; }
  ComplexVector &amplitudes() { return amplitudes_; }
  Complex operator[](std::uint64_t i) const { return amplitudes_(static_cast<Index>(i)); }

  double norm() const { return amplitudes_.norm(); }
  void normalize();

 private:
  Index n_qubits_;
  ComplexVector amplitudes_;
};

// Normalized exp(log Psi(B)) over all B, offset by the largest real part
// before exponentiating. Walks the basis in Gray-code order with theta
// look-up tables.
StateVector expand_rbm(const RbmState &state, Index max_qubits = kDefaultOracleLimit);

void apply_gate_exact(StateVector &v, const GateOp &gate);
StateVector apply_gate_exact(const StateVector &v, const GateOp &gate);
void apply_circuit_exact(StateVector &v, const Circuit &circuit);

// 1 = X, 2 = Y, 3 = Z; 0 is the identity.
void apply_pauli(StateVector &v, Index qubit, int pauli);

// |<u|v>| / (|u| |v|), clamped to [0, 1].
double overlap_exact(const StateVector &u, const StateVector &v);

struct NoiseConfig {
  double rate = 0.0;
  Index trajectories = 200;
  std::uint64_t seed = 0;

  void validate() const;
};

// Pure-state trajectories of a Pauli channel: after each 1-qubit gate, with
// probability r one of X, Y, Z (uniform) hits that qubit; after each 2-qubit
// gate, with probability r one of the 15 non-identity two-qubit Paulis.
// Returns the trajectory mean and standard error of |<exact|noisy>|, where
// exact is the noiseless circuit output. Trajectory t uses
// derive_seed(seed, "noise-trajectory", t).
OverlapEstimate noisy_transform_overlap(const StateVector &initial, const Circuit &circuit,
                                        const NoiseConfig &noise);

// Binary dump: "NQSV", uint32 N, then 2^N (re, im) little-endian doubles.
void dump_statevector(const std::string &path, const StateVector &v);
StateVector load_statevector(const std::string &path);

// Fitting target backed by an explicit vector; samples are drawn exactly
// from |v|^2 (Markov mode) or enumerated.
class StateVectorTarget final : public TargetAmplitudes {
 public:
  explicit StateVectorTarget(StateVector v);
  Index n_qubits() const override { return v_.n_qubits(); }
  Complex log_amplitude(const BitString &b) const override;
  SampleBatch draw(const SamplerConfig &cfg) const override;
  const StateVector &vector() const { return v_; }

 private:
  StateVector v_;
  std::vector<double> cumulative_;
};

}  // namespace nqs

#endif  // NQS_ORACLE_HPP
