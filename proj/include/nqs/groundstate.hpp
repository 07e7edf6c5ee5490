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

#ifndef NQS_GROUNDSTATE_HPP
#define NQS_GROUNDSTATE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nqs/gate_learner.hpp"
#include "nqs/oracle.hpp"
#include "nqs/rbm_state.hpp"
#include "nqs/sampler.hpp"

namespace nqs {

// Nearest-neighbour graph. Bonds are a set of undirected pairs (i < j), so a
// periodic chain of length 2 has a single bond and self-bonds never appear.
struct Lattice {
  enum class Kind { ChainPeriodic, ChainOpen, SquarePeriodic };
  Kind kind = Kind::ChainPeriodic;
  std::vector<Index> extent;
  std::vector<std::pair<Index, Index>> bonds;

  static Lattice chain(Index length, bool periodic = true);
  static Lattice square(Index lx, Index ly);

  Index n_sites() const;
  std::string name() const;
};

std::string lattice_kind_name(Lattice::Kind kind);
Lattice::Kind parse_lattice_kind(const std::string &name);

// H = -gamma sum_i X_i + j sum_<i,j> Z_i Z_j, signs as written.
struct TfimParams {
  double gamma = 1.0;
  double j = 1.0;
};

// E_loc(B) = j sum_bonds (-1)^{B_a + B_b} - gamma sum_i Psi(B^i) / Psi(B),
// with the flip ratios taken from the look-up table.
Complex local_energy(const RbmState &state, const ThetaTable &table,
                     const Lattice &lattice, const TfimParams &p);
Complex local_energy(const RbmState &state, const BitString &b, const Lattice &lattice,
                     const TfimParams &p);
// Same quantity with every amplitude evaluated from scratch.
Complex local_energy_from_scratch(const RbmState &state, const BitString &b,
                                  const Lattice &lattice, const TfimParams &p);

enum class VmcOptimizer {
  AdaMax,
  // Natural-gradient step -lr (S + shift diag(S) + shift I)^{-1} F with
  // S the covariance of the log-derivatives.
  StochasticReconfiguration,
};

struct VmcConfig {
  VmcOptimizer optimizer = VmcOptimizer::StochasticReconfiguration;
  double sr_diag_shift = 1e-2;
  Index n_iterations = 600;
  Index samples_per_iteration = 4096;
  double learning_rate = 5e-2;
  // Learning rate decays geometrically to learning_rate * final_lr_factor.
  double final_lr_factor = 0.05;
  double adamax_beta1 = 0.9;
  double adamax_beta2 = 0.999;
  double init_sigma = 0.01;
  // Samples for the closing energy estimate.
  Index final_samples = 16384;
  // Fails when the estimate stays above the best one by more than
  // max(10 sigma, 10% |best|) for this many consecutive iterations.
  Index patience = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EnergyTracePoint {
  Index iteration = 0;
  double energy = 0.0;
  double std_error = 0.0;
};

struct VmcResult {
  RbmState state;
  std::vector<EnergyTracePoint> trace;
  double final_energy = 0.0;
  double final_std_error = 0.0;
};

struct EnergyEstimate {
  Complex mean;
  double std_error = 0.0;
};

// Batch mean of E_loc with a jackknife-over-chains error.
EnergyEstimate estimate_energy(const RbmState &state, const Lattice &lattice,
                               const TfimParams &p, const SamplerConfig &cfg);

// Minimizes <E_loc> with M = alpha N hidden units, stepping along the force
// F_k = <E_loc O_k^*> - <E_loc><O_k^*> (SR) or the gradient 2F (AdaMax).
VmcResult vmc_ground_state(const Lattice &lattice, const TfimParams &p, double alpha,
                           const VmcConfig &cfg, const SamplerConfig &scfg);

// y = H x on the full 2^N space.
void apply_tfim(const Lattice &lattice, const TfimParams &p, const ComplexVector &x,
                ComplexVector &y);

// <Psi|H|Psi> / <Psi|Psi> by expanding the RBM.
double exact_energy(const RbmState &state, const Lattice &lattice, const TfimParams &p,
                    Index max_qubits = kDefaultOracleLimit);

struct ExactGroundState {
  double energy = 0.0;
  StateVector state;
};

// Lanczos with full reorthogonalization.
ExactGroundState exact_ground_state(const Lattice &lattice, const TfimParams &p,
                                    Index max_qubits = kDefaultOracleLimit);

// Fits an alpha * N hidden-unit RBM to an explicit vector with the
// gate-learner loss. Starts from zero parameters plus init noise.
std::pair<RbmState, LearnReport> fit_to_statevector(const StateVector &target, double alpha,
                                                    const LearnerConfig &lcfg,
                                                    const SamplerConfig &scfg);

Index hidden_units_for(Index n_visible, double alpha);

}  // namespace nqs

#endif  // NQS_GROUNDSTATE_HPP
