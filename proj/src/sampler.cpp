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

#include "nqs/sampler.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "nqs/parallel.hpp"
#include "nqs/random.hpp"

namespace nqs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxInitialDraws = 1000;
const double kLogSqrt2 = 0.5 * std::numbers::ln2;

// Walker over |Psi|^2 using the theta look-up table.
class PsiWalker {
 public:
  PsiWalker(const FlipEvaluator &ev, BitString b, bool lookup)
      : ev_(ev), table_(ev.state(), std::move(b)), lookup_(lookup) {
    log_amp_ = log_amplitude(ev_.state(), table_);
  }

  const BitString &bits() const { return table_.bits(); }
  Complex log_amp() const { return log_amp_; }

  Complex propose(Index j) {
    if (lookup_) return log_amp_ + ev_.log_ratio_flip(table_, j);
    BitString flipped = table_.bits();
    flipped.flip(j);
    return log_amplitude(ev_.state(), flipped);
  }

  // proposed is what propose(j) returned.
  void accept(Index j, Complex proposed) {
    if (lookup_) {
      table_.flip(ev_.state(), j);
      stale_ = true;
    } else {
      BitString flipped = table_.bits();
      flipped.flip(j);
      table_ = ThetaTable(ev_.state(), std::move(flipped));
    }
    log_amp_ = proposed;
  }

  // Replaces the value accumulated from flip ratios by a fresh evaluation.
  void settle() {
    if (!stale_) return;
    log_amp_ = log_amplitude(ev_.state(), table_);
    stale_ = false;
  }

 private:
  const FlipEvaluator &ev_;
  ThetaTable table_;
  bool lookup_;
  bool stale_ = false;
  Complex log_amp_;
};

// Walker over |H_l Psi|^2. Keeps theta for both branches B_l = 0 and
// B_l = 1; flipping qubit l only changes the relative sign.
class HadamardWalker {
 public:
  HadamardWalker(const FlipEvaluator &ev, Index qubit, BitString b, bool lookup)
      : ev_(ev), qubit_(qubit), bits_(std::move(b)), lookup_(lookup) {
    BitString b0 = bits_;
    b0.set(qubit_, 0);
    theta0_ = compute_theta(ev_.state(), b0);
    theta1_ = theta0_ + ev_.state().weights().row(qubit_).transpose();
    refresh();
  }

  const BitString &bits() const { return bits_; }
  Complex log_amp() const { return log_amp_; }

  Complex propose(Index j) {
    if (!lookup_) {
      BitString flipped = bits_;
      flipped.flip(j);
      return hadamard_log_amplitude(ev_.state(), qubit_, flipped);
    }
    pending_ = -1;
    const double sign_l = bits_[qubit_] ? -1.0 : 1.0;
    if (j == qubit_) return combine(log_psi0_, log_psi1_, -sign_l);
    const bool add = bits_[j] == 0;
    const Complex a = add ? ev_.state().visible_bias()(j) : -ev_.state().visible_bias()(j);
    pending_ = j;
    pending0_ = log_psi0_ + a + ev_.hidden_log_ratio(theta0_, exp0_, j, add);
    pending1_ = log_psi1_ + a + ev_.hidden_log_ratio(theta1_, exp1_, j, add);
    return combine(pending0_, pending1_, sign_l);
  }

  void accept(Index j, Complex proposed) {
    const bool from_pending = lookup_ && j == pending_;
    if (j != qubit_) {
      const auto row = ev_.state().weights().row(j).transpose();
      if (bits_[j]) {
        theta0_ -= row;
        theta1_ -= row;
      } else {
        theta0_ += row;
        theta1_ += row;
      }
    }
    bits_.flip(j);
    if (!lookup_) {
      refresh();
      return;
    }
    if (from_pending) {
      log_psi0_ = pending0_;
      log_psi1_ = pending1_;
      exp0_ = theta0_.array().exp().matrix();
      exp1_ = theta1_.array().exp().matrix();
      stale_ = true;
    }
    log_amp_ = proposed;
  }

  void settle() {
    if (stale_) refresh();
  }

 private:
  static Complex combine(Complex l0, Complex l1, double sign) {
    return log_sum_signed(l0, l1, sign) - kLogSqrt2;
  }

  void refresh() {
    stale_ = false;
    const RbmState &s = ev_.state();
    Complex visible{0.0, 0.0};
    for (Index j = 0; j < bits_.size(); ++j) {
      if (j != qubit_ && bits_[j]) visible += s.visible_bias()(j);
    }
    log_psi0_ = visible;
    log_psi1_ = visible + s.visible_bias()(qubit_);
    for (Index k = 0; k < theta0_.size(); ++k) {
      log_psi0_ += log1p_exp(theta0_(k));
      log_psi1_ += log1p_exp(theta1_(k));
    }
    exp0_ = theta0_.array().exp().matrix();
    exp1_ = theta1_.array().exp().matrix();
    log_amp_ = combine(log_psi0_, log_psi1_, bits_[qubit_] ? -1.0 : 1.0);
  }

  const FlipEvaluator &ev_;
  Index qubit_;
  BitString bits_;
  bool lookup_;
  ComplexVector theta0_, theta1_, exp0_, exp1_;
  Complex log_psi0_, log_psi1_;
  Complex log_amp_;
  Index pending_ = -1;
  Complex pending0_, pending1_;
  bool stale_ = false;
};

BitString random_bits(Rng &rng, Index n) {
  BitString b(n);
  for (Index j = 0; j < n; ++j) b.set(j, static_cast<std::uint8_t>(rng() >> 63));
  return b;
}

template <class Walker>
void metropolis_step(Walker &walker, Rng &rng, Index n) {
  const Index j = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
  const double u = uniform01(rng);
  const Complex proposed = walker.propose(j);
  if (is_zero_amplitude(proposed)) return;
  const double log_accept = 2.0 * (proposed.real() - walker.log_amp().real());
  if (log_accept >= 0.0 || u < std::exp(log_accept)) walker.accept(j, proposed);
}

template <class MakeWalker>
void run_one_chain(const SamplerConfig &cfg, Index n, Index chain,
                   const MakeWalker &make_walker, const BitString *start,
                   SampleBatch &batch) {
  Rng rng(derive_seed(cfg.seed, "sampler-chain", static_cast<std::uint64_t>(chain)));
  std::optional<decltype(make_walker(BitString{}))> slot;
  Index burn_in = cfg.burn_in_sweeps;
  if (start != nullptr) {
    slot.emplace(make_walker(*start));
    if (is_zero_amplitude(slot->log_amp())) {
      slot.emplace(make_walker(random_bits(rng, n)));
    } else {
      burn_in = cfg.warm_burn_in_sweeps;
    }
  } else {
    slot.emplace(make_walker(random_bits(rng, n)));
  }
  for (int attempt = 1; is_zero_amplitude(slot->log_amp()); ++attempt) {
    if (attempt >= kMaxInitialDraws) {
      throw NumericError("sampler chain " + std::to_string(chain) +
                         ": target amplitude is zero on " +
                         std::to_string(kMaxInitialDraws) +
                         " random initial bitstrings");
    }
    slot.emplace(make_walker(random_bits(rng, n)));
  }
  auto &walker = *slot;
  for (Index s = 0; s < burn_in * n; ++s) metropolis_step(walker, rng, n);
  const Index offset = chain * cfg.samples_per_chain;
  for (Index i = 0; i < cfg.samples_per_chain; ++i) {
    for (Index s = 0; s < cfg.sweeps_between_samples * n; ++s) {
      metropolis_step(walker, rng, n);
    }
    walker.settle();
    batch.bitstrings[static_cast<std::size_t>(offset + i)] = walker.bits();
    batch.log_amps[static_cast<std::size_t>(offset + i)] = walker.log_amp();
  }
}

void check_target(const RbmState &state, const SampleTarget &target) {
  if (target.kind == SampleTarget::Kind::HadamardPhi &&
      (target.qubit < 0 || target.qubit >= state.n_visible())) {
    throw StructuralError("Hadamard target qubit " + std::to_string(target.qubit) +
                          " out of range");
  }
}

}  // namespace

void SamplerConfig::validate() const {
  if (n_chains < 1) throw ConfigError("sampler.n_chains must be positive");
  if (burn_in_sweeps < 0) throw ConfigError("sampler.burn_in_sweeps must be non-negative");
  if (sweeps_between_samples < 1) {
    throw ConfigError("sampler.sweeps_between_samples must be positive");
  }
  if (samples_per_chain < 1) throw ConfigError("sampler.samples_per_chain must be positive");
  if (warm_burn_in_sweeps < 0) {
    throw ConfigError("sampler.warm_burn_in_sweeps must be non-negative");
  }
}

Complex log_sum_signed(Complex l0, Complex l1, double sign) {
  const bool zero0 = is_zero_amplitude(l0), zero1 = is_zero_amplitude(l1);
  if (zero0 && zero1) return {kNegInf, 0.0};
  if (zero1) return l0;
  if (zero0) return l1 + (sign < 0 ? Complex{0.0, std::numbers::pi} : Complex{});
  Complex inner;
  Complex base;
  if (l0.real() >= l1.real()) {
    base = l0;
    inner = 1.0 + sign * std::exp(l1 - l0);
  } else {
    base = l1;
    inner = std::exp(l0 - l1) + sign;
  }
  if (inner == Complex{0.0, 0.0}) return {kNegInf, 0.0};
  return base + std::log(inner);
}

Complex hadamard_log_amplitude(const RbmState &state, Index qubit, const BitString &b) {
  if (qubit < 0 || qubit >= state.n_visible()) {
    throw StructuralError("Hadamard qubit " + std::to_string(qubit) + " out of range");
  }
  BitString b0 = b, b1 = b;
  b0.set(qubit, 0);
  b1.set(qubit, 1);
  return log_sum_signed(log_amplitude(state, b0), log_amplitude(state, b1),
                        b[qubit] ? -1.0 : 1.0) -
         kLogSqrt2;
}

Complex hadamard_amplitude(const RbmState &state, Index qubit, const BitString &b) {
  return std::exp(hadamard_log_amplitude(state, qubit, b));
}

Complex target_log_amplitude(const RbmState &state, const SampleTarget &target,
                             const BitString &b) {
  if (target.kind == SampleTarget::Kind::Psi) return log_amplitude(state, b);
  return hadamard_log_amplitude(state, target.qubit, b);
}

SampleBatch run_chains(const RbmState &state, const SampleTarget &target,
                       const SamplerConfig &cfg, const std::vector<BitString> *starts) {
  cfg.validate();
  check_target(state, target);
  const Index n = state.n_visible();
  if (starts != nullptr) {
    if (static_cast<Index>(starts->size()) != cfg.n_chains) {
      throw StructuralError("expected one start bitstring per chain");
    }
    for (const BitString &b : *starts) {
      if (b.size() != n) throw StructuralError("start bitstring has the wrong length");
    }
  }
  const FlipEvaluator ev(state);
  SampleBatch batch;
  batch.source = target;
  batch.n_chains = cfg.n_chains;
  batch.bitstrings.resize(static_cast<std::size_t>(cfg.total_samples()));
  batch.log_amps.resize(static_cast<std::size_t>(cfg.total_samples()));
  parallel_for(static_cast<std::size_t>(cfg.n_chains), [&](std::size_t c) {
    const Index chain = static_cast<Index>(c);
    const BitString *start = starts != nullptr ? &(*starts)[c] : nullptr;
    if (target.kind == SampleTarget::Kind::Psi) {
      run_one_chain(cfg, n, chain,
                    [&](BitString b) { return PsiWalker(ev, std::move(b), cfg.use_lookup_tables); },
                    start, batch);
    } else {
      run_one_chain(cfg, n, chain,
                    [&](BitString b) {
                      return HadamardWalker(ev, target.qubit, std::move(b),
                                            cfg.use_lookup_tables);
                    },
                    start, batch);
    }
  });
  return batch;
}

SampleBatch enumerate_batch(const RbmState &state, const SampleTarget &target) {
  check_target(state, target);
  const Index n = state.n_visible();
  if (n > 24) throw LimitError("enumeration is limited to 24 qubits");
  const std::uint64_t dim = std::uint64_t{1} << n;
  SampleBatch batch;
  batch.source = target;
  batch.n_chains = 1;
  batch.bitstrings.reserve(dim);
  batch.log_amps.reserve(dim);
  double max_re = kNegInf;
  for (std::uint64_t i = 0; i < dim; ++i) {
    BitString b = BitString::from_index(i, n);
    const Complex l = target_log_amplitude(state, target, b);
    max_re = std::max(max_re, l.real());
    batch.bitstrings.push_back(std::move(b));
    batch.log_amps.push_back(l);
  }
  batch.weights.resize(dim);
  double total = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const Complex l = batch.log_amps[i];
    batch.weights[i] = is_zero_amplitude(l) ? 0.0 : std::exp(2.0 * (l.real() - max_re));
    total += batch.weights[i];
  }
  for (double &w : batch.weights) w /= total;
  return batch;
}

SampleBatch draw_batch(const RbmState &state, const SampleTarget &target,
                       const SamplerConfig &cfg, const std::vector<BitString> *starts) {
  if (cfg.mode == SampleMode::Enumerate) return enumerate_batch(state, target);
  return run_chains(state, target, cfg, starts);
}

std::vector<BitString> chain_ends(const SampleBatch &batch) {
  std::vector<BitString> ends;
  if (batch.n_chains < 1 || batch.size() == 0) return ends;
  const Index per_chain = batch.size() / batch.n_chains;
  for (Index c = 0; c < batch.n_chains; ++c) {
    ends.push_back(batch.bitstrings[static_cast<std::size_t>((c + 1) * per_chain - 1)]);
  }
  return ends;
}

}  // namespace nqs
