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

#ifndef NQS_GATE_LEARNER_HPP
#define NQS_GATE_LEARNER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "nqs/rbm_state.hpp"
#include "nqs/sampler.hpp"

namespace nqs {

// Amplitude source Phi that an RBM is fitted to.
class TargetAmplitudes {
 public:
  virtual ~TargetAmplitudes() = default;
  virtual Index n_qubits() const = 0;
  // Real part -infinity encodes a zero amplitude.
  virtual Complex log_amplitude(const BitString &b) const = 0;
  // Samples from |Phi|^2 (Markov or enumerated, per cfg.mode).
  virtual SampleBatch draw(const SamplerConfig &cfg) const = 0;
};

// Phi = H_qubit Psi_source.
class HadamardTarget final : public TargetAmplitudes {
 public:
  HadamardTarget(RbmState source, Index qubit);
  Index n_qubits() const override { return source_.n_visible(); }
  Complex log_amplitude(const BitString &b) const override;
  SampleBatch draw(const SamplerConfig &cfg) const override;

  const RbmState &source() const { return source_; }
  Index qubit() const { return qubit_; }

 private:
  RbmState source_;
  Index qubit_;
};

// Phi = Psi_source, optionally scaled by a constant.
class RbmTarget final : public TargetAmplitudes {
 public:
  explicit RbmTarget(RbmState source, Complex scale = {1.0, 0.0});
  Index n_qubits() const override { return source_.n_visible(); }
  Complex log_amplitude(const BitString &b) const override;
  SampleBatch draw(const SamplerConfig &cfg) const override;

 private:
  RbmState source_;
  Complex log_scale_;
};

struct OverlapEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// O = sqrt(|<Phi/Psi>_Psi * <Psi/Phi>_Phi|) from one batch of each
// distribution. Ratio means are formed after subtracting the largest log
// ratio. The standard error is a jackknife over chains (or over 16
// contiguous blocks for single-chain batches); enumerated batches give 0.
// Psi samples with Phi = 0 contribute ratio 0; Phi samples with Phi = 0
// cannot occur.
OverlapEstimate overlap_from_batches(const RbmState &psi, const TargetAmplitudes &phi,
                                     const SampleBatch &psi_batch,
                                     const SampleBatch &phi_batch);

// Draws the two batches with substreams "overlap-psi"/"overlap-phi" of
// cfg.seed and calls overlap_from_batches.
OverlapEstimate estimate_overlap(const RbmState &psi, const TargetAmplitudes &phi,
                                 const SamplerConfig &cfg);

// Estimate over the batch (drawn from |Psi|^2) of
//
//   G_k = <O_k^*>_Psi - <(Phi/Psi) O_k^*>_Psi / <Phi/Psi>_Psi
//
// for the loss L = -log(normalized overlap). For a complex parameter
// p = x + iy, dL/dx = Re G and dL/dy = Im G.
// Throws DegenerateOverlapError when |<Phi/Psi>| < 1e-12 <|Phi/Psi|>.
ComplexVector overlap_gradient(const RbmState &psi, const TargetAmplitudes &phi,
                               const SampleBatch &batch);

// S^{-1} G with S_kk' = <O_k^* O_k'> - <O_k^*><O_k'> over the same batch,
// diagonal shifted by diag_shift (S_kk + 1).
ComplexVector natural_overlap_gradient(const RbmState &psi, const TargetAmplitudes &phi,
                                       const SampleBatch &batch, double diag_shift);

struct AdamaxConfig {
  double learning_rate = 5e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
};

// Complex parameters are optimized as independent real and imaginary parts.
struct OptimizerState {
  OptimizerState() = default;
  explicit OptimizerState(Index n_params)
      : first_moment(ComplexVector::Zero(n_params)),
        inf_norm(Eigen::VectorXd::Zero(2 * n_params)) {}

  ComplexVector first_moment;
  // |g| running max, interleaved (re_0, im_0, re_1, im_1, ...).
  Eigen::VectorXd inf_norm;
  std::int64_t step_count = 0;
};

//   m <- b1 m + (1 - b1) g,  u <- max(b2 u, |g|),
//   p <- p - lr / (1 - b1^t) * m / max(u, 1e-12)
void adamax_step(OptimizerState &opt, ComplexVector &params, const ComplexVector &grad,
                 const AdamaxConfig &cfg);

enum class LearnerOptimizer { AdaMax, StochasticReconfiguration };

struct LearnerConfig {
  LearnerOptimizer optimizer = LearnerOptimizer::StochasticReconfiguration;
  double sr_diag_shift = 1e-3;
  Index n_iterations = 400;
  Index samples_per_iteration = 4096;
  // AdaMax wants about 5e-3.
  double learning_rate = 0.1;
  double adamax_beta1 = 0.9;
  double adamax_beta2 = 0.999;
  double init_noise_sigma = 0.01;
  Index overlap_check_interval = 25;
  double target_infidelity = 1e-3;
  std::uint64_t seed = 0;
  // Re-initializations allowed after a degenerate-overlap failure.
  int max_reinitializations = 3;

  void validate() const;
};

struct OverlapTracePoint {
  Index iteration = 0;
  double loss = 0.0;
  double overlap = 0.0;
  double std_error = 0.0;
};

struct LearnReport {
  // Fresh estimate on the returned (best-seen) parameters.
  double final_overlap = 0.0;
  double final_std_error = 0.0;
  Index iterations_run = 0;
  int reinitializations = 0;
  std::vector<OverlapTracePoint> trace;
};

using TraceObserver = std::function<void(const OverlapTracePoint &)>;

// Fits Psi_W' to phi starting from W' = initial + complex Gaussian noise.
// Iterates sample -> gradient -> update (SR or AdaMax); every overlap_check_interval
// iterations estimates the overlap, keeps the best parameters seen, and
// stops early once the estimate reaches 1 - target_infidelity.
// Throws LearnerError (message carries the trace length) when
// re-initializations are exhausted.
std::pair<RbmState, LearnReport> learn_target(const RbmState &initial,
                                              const TargetAmplitudes &phi,
                                              const LearnerConfig &lcfg,
                                              const SamplerConfig &scfg,
                                              const TraceObserver &observer = {});

// Approximates H_qubit |state> within the same RBM architecture.
std::pair<RbmState, LearnReport> learn_hadamard(const RbmState &state, Index qubit,
                                                const LearnerConfig &lcfg,
                                                const SamplerConfig &scfg,
                                                const TraceObserver &observer = {});

}  // namespace nqs

#endif  // NQS_GATE_LEARNER_HPP
