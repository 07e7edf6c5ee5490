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

#ifndef NQS_SAMPLER_HPP
#define NQS_SAMPLER_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "nqs/rbm_state.hpp"

namespace nqs {

enum class SampleMode {
  // Metropolis-Hastings chains with single-bit-flip proposals.
  Markov,
  // Every basis state once, weighted by its exact probability. Only for
  // small N; makes every estimator exact and deterministic.
  Enumerate,
};

struct SamplerConfig {
  Index n_chains = 16;
  Index burn_in_sweeps = 200;
  Index sweeps_between_samples = 1;
  Index samples_per_chain = 256;
  // Burn-in used instead when a chain continues from a given bitstring.
  Index warm_burn_in_sweeps = 10;
  std::uint64_t seed = 0;
  SampleMode mode = SampleMode::Markov;
  // Testing knob: evaluate every proposal from scratch instead of through
  // the theta look-up tables. Must not change the chains.
  bool use_lookup_tables = true;

  void validate() const;
  Index total_samples() const { return n_chains * samples_per_chain; }
};

// Distribution to sample: |Psi(B)|^2, or |Phi(B)|^2 with Phi = H_qubit Psi.
struct SampleTarget {
  enum class Kind { Psi, HadamardPhi };
  Kind kind = Kind::Psi;
  Index qubit = 0;

  static SampleTarget psi() { return {Kind::Psi, 0}; }
  static SampleTarget hadamard(Index q) { return {Kind::HadamardPhi, q}; }
};

struct SampleBatch {
  std::vector<BitString> bitstrings;
  // Log-amplitude of the sampled distribution's amplitude at each sample.
  // A zero amplitude is encoded with real part -infinity.
  std::vector<Complex> log_amps;
  // Empty for Markov samples (equal weights). For enumeration, the
  // normalized probability of each bitstring.
  std::vector<double> weights;
  SampleTarget source;
  // Samples are stored chain-major with an equal count per chain.
  Index n_chains = 1;

  Index size() const { return static_cast<Index>(bitstrings.size()); }
  double weight(Index i) const {
    return weights.empty() ? 1.0 / static_cast<double>(size())
                           : weights[static_cast<std::size_t>(i)];
  }
};

// log of e^{l0} + sign * e^{l1}, factoring out the larger magnitude. Returns
// real part -infinity when the sum cancels to zero.
Complex log_sum_signed(Complex l0, Complex l1, double sign);

inline bool is_zero_amplitude(Complex log_amp) {
  return log_amp.real() == -std::numeric_limits<double>::infinity();
}

// Phi(B) = (Psi(B|B_l=0) + (-1)^{B_l} Psi(B|B_l=1)) / sqrt(2), in log form.
Complex hadamard_log_amplitude(const RbmState &state, Index qubit, const BitString &b);
Complex hadamard_amplitude(const RbmState &state, Index qubit, const BitString &b);

Complex target_log_amplitude(const RbmState &state, const SampleTarget &target,
                             const BitString &b);

// Chains start from uniformly drawn bitstrings, burn in, then record one
// sample every sweeps_between_samples sweeps (a sweep is N proposals).
// Chain c draws from the substream derive_seed(cfg.seed, "sampler-chain", c),
// so the batch does not depend on the thread count.
// starts, when given, holds one initial bitstring per chain (for example the
// chain_ends of the previous batch); those chains use warm_burn_in_sweeps.
SampleBatch run_chains(const RbmState &state, const SampleTarget &target,
                       const SamplerConfig &cfg,
                       const std::vector<BitString> *starts = nullptr);

// All 2^N bitstrings with exact weights |A(B)|^2 / sum |A|^2.
SampleBatch enumerate_batch(const RbmState &state, const SampleTarget &target);

// run_chains or enumerate_batch depending on cfg.mode.
SampleBatch draw_batch(const RbmState &state, const SampleTarget &target,
                       const SamplerConfig &cfg,
                       const std::vector<BitString> *starts = nullptr);

// Last bitstring of every chain in a Markov batch.
std::vector<BitString> chain_ends(const SampleBatch &batch);

}  // namespace nqs

#endif  // NQS_SAMPLER_HPP
