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

#include "nqs/gate_learner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nqs/parallel.hpp"
#include "nqs/random.hpp"

namespace nqs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr Index kSingleChainBlocks = 16;

Index jackknife_blocks(const SampleBatch &batch) {
  if (!batch.weights.empty()) return 1;
  if (batch.n_chains >= 2) return batch.n_chains;
  return std::min<Index>(kSingleChainBlocks, batch.size());
}

// Weighted block sums of exp(log_ratio - offset).
struct RatioSums {
  double offset = kNegInf;
  std::vector<Complex> block_sum;
  std::vector<double> block_weight;

  Complex total() const {
    Complex s{0.0, 0.0};
    for (auto v : block_sum) s += v;
    return s;
  }
  double total_weight() const {
    double w = 0.0;
    for (auto v : block_weight) w += v;
    return w;
  }
  // log |mean| with block b left out (b < 0 keeps everything).
  double log_abs_mean(Index b) const {
    Complex s = total();
    double w = total_weight();
    if (b >= 0) {
      s -= block_sum[static_cast<std::size_t>(b)];
      w -= block_weight[static_cast<std::size_t>(b)];
    }
    if (w <= 0.0 || s == Complex{0.0, 0.0}) return kNegInf;
    return offset + std::log(std::abs(s) / w);
  }
};

RatioSums ratio_sums(const std::vector<Complex> &log_ratios, const SampleBatch &batch,
                     Index blocks) {
  RatioSums out;
  for (const Complex &r : log_ratios) {
    if (!is_zero_amplitude(r)) out.offset = std::max(out.offset, r.real());
  }
  out.block_sum.assign(static_cast<std::size_t>(blocks), Complex{0.0, 0.0});
  out.block_weight.assign(static_cast<std::size_t>(blocks), 0.0);
  const Index n = batch.size();
  for (Index i = 0; i < n; ++i) {
    const auto b = static_cast<std::size_t>(i * blocks / n);
    const double w = batch.weight(i);
    out.block_weight[b] += w;
    const Complex r = log_ratios[static_cast<std::size_t>(i)];
    if (is_zero_amplitude(r)) continue;
    const Complex term = std::exp(r - out.offset);
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
      throw NumericError("amplitude ratio overflow after offsetting (log ratio " +
                         std::to_string(r.real()) + ", offset " +
                         std::to_string(out.offset) + ")");
    }
    out.block_sum[b] += w * term;
  }
  return out;
}

void check_same_size(const RbmState &psi, const TargetAmplitudes &phi) {
  if (psi.n_visible() != phi.n_qubits()) {
    throw StructuralError("variational state has " + std::to_string(psi.n_visible()) +
                          " qubits, target has " + std::to_string(phi.n_qubits()));
  }
}

RbmState add_noise(const RbmState &state, double sigma, Rng &rng) {
  if (sigma <= 0.0) return state;
  std::normal_distribution<double> normal(0.0, sigma);
  ComplexVector p = state.parameters();
  for (Index i = 0; i < p.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    p(i) += Complex{re, im};
  }
  RbmState out = state;
  out.set_parameters(p);
  return out;
}

}  // namespace

HadamardTarget::HadamardTarget(RbmState source, Index qubit)
    : source_(std::move(source)), qubit_(qubit) {
  if (qubit_ < 0 || qubit_ >= source_.n_visible()) {
    throw StructuralError("Hadamard qubit " + std::to_string(qubit_) + " out of range");
  }
}

Complex HadamardTarget::log_amplitude(const BitString &b) const {
  return hadamard_log_amplitude(source_, qubit_, b);
}

SampleBatch HadamardTarget::draw(const SamplerConfig &cfg) const {
  return draw_batch(source_, SampleTarget::hadamard(qubit_), cfg);
}

RbmTarget::RbmTarget(RbmState source, Complex scale)
    : source_(std::move(source)), log_scale_(std::log(scale)) {
  if (scale == Complex{0.0, 0.0}) throw StructuralError("target scale must be nonzero");
}

Complex RbmTarget::log_amplitude(const BitString &b) const {
  return nqs::log_amplitude(source_, b) + log_scale_;
}

SampleBatch RbmTarget::draw(const SamplerConfig &cfg) const {
  SampleBatch batch = draw_batch(source_, SampleTarget::psi(), cfg);
  for (auto &l : batch.log_amps) l += log_scale_;
  return batch;
}

OverlapEstimate overlap_from_batches(const RbmState &psi, const TargetAmplitudes &phi,
                                     const SampleBatch &psi_batch,
                                     const SampleBatch &phi_batch) {
  check_same_size(psi, phi);
  std::vector<Complex> phi_over_psi(psi_batch.bitstrings.size());
  for (std::size_t i = 0; i < phi_over_psi.size(); ++i) {
    const Complex lphi = phi.log_amplitude(psi_batch.bitstrings[i]);
    phi_over_psi[i] = is_zero_amplitude(lphi) ? Complex{kNegInf, 0.0}
                                              : lphi - psi_batch.log_amps[i];
  }
  std::vector<Complex> psi_over_phi(phi_batch.bitstrings.size());
  for (std::size_t i = 0; i < psi_over_phi.size(); ++i) {
    const Complex lphi = phi_batch.log_amps[i];
    psi_over_phi[i] = is_zero_amplitude(lphi)
                          ? Complex{kNegInf, 0.0}
                          : log_amplitude(psi, phi_batch.bitstrings[i]) - lphi;
  }

  const Index blocks = std::min(jackknife_blocks(psi_batch), jackknife_blocks(phi_batch));
  const RatioSums a = ratio_sums(phi_over_psi, psi_batch, blocks);
  const RatioSums b = ratio_sums(psi_over_phi, phi_batch, blocks);

  auto overlap = [&](Index leave_out) {
    const double l = 0.5 * (a.log_abs_mean(leave_out) + b.log_abs_mean(leave_out));
    return l == kNegInf ? 0.0 : std::exp(l);
  };

  OverlapEstimate est;
  est.value = overlap(-1);
  if (blocks >= 2) {
    std::vector<double> loo(static_cast<std::size_t>(blocks));
    double mean = 0.0;
    for (Index k = 0; k < blocks; ++k) {
      loo[static_cast<std::size_t>(k)] = overlap(k);
      mean += loo[static_cast<std::size_t>(k)];
    }
    mean /= static_cast<double>(blocks);
    double var = 0.0;
    for (double v : loo) var += (v - mean) * (v - mean);
    est.std_error = std::sqrt(var * static_cast<double>(blocks - 1) /
                              static_cast<double>(blocks));
  }
  return est;
}

OverlapEstimate estimate_overlap(const RbmState &psi, const TargetAmplitudes &phi,
                                 const SamplerConfig &cfg) {
  check_same_size(psi, phi);
  SamplerConfig psi_cfg = cfg, phi_cfg = cfg;
  psi_cfg.seed = derive_seed(cfg.seed, "overlap-psi");
  phi_cfg.seed = derive_seed(cfg.seed, "overlap-phi");
  const SampleBatch psi_batch = draw_batch(psi, SampleTarget::psi(), psi_cfg);
  const SampleBatch phi_batch = phi.draw(phi_cfg);
  return overlap_from_batches(psi, phi, psi_batch, phi_batch);
}

namespace {

// Gradient estimate; when centered is given, also fills it with the rows
// sqrt(w_i) (O_i - <O>) used by the metric of stochastic reconfiguration.
ComplexVector gradient_terms(const RbmState &psi, const TargetAmplitudes &phi,
                             const SampleBatch &batch, ComplexMatrix *centered) {
  check_same_size(psi, phi);
  const Index n = batch.size();
  std::vector<Complex> log_ratio(static_cast<std::size_t>(n));
  parallel_for(log_ratio.size(), [&](std::size_t i) {
    const Complex lphi = phi.log_amplitude(batch.bitstrings[i]);
    log_ratio[i] = is_zero_amplitude(lphi) ? Complex{kNegInf, 0.0} : lphi - batch.log_amps[i];
  });
  double offset = kNegInf;
  for (const Complex &r : log_ratio) {
    if (!is_zero_amplitude(r)) offset = std::max(offset, r.real());
  }

  const Index p = psi.n_params();
  ComplexMatrix o(n, p);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    o.row(static_cast<Index>(i)) = variational_derivatives(psi, batch.bitstrings[i]).transpose();
  });
  Eigen::VectorXd w(n);
  ComplexVector wr = ComplexVector::Zero(n);
  double mean_abs_r = 0.0;
  for (Index i = 0; i < n; ++i) {
    w(i) = batch.weight(i);
    const Complex l = log_ratio[static_cast<std::size_t>(i)];
    if (w(i) == 0.0 || is_zero_amplitude(l)) continue;
    wr(i) = w(i) * std::exp(l - offset);
    mean_abs_r += std::abs(wr(i));
  }
  const ComplexVector mean_o = o.transpose() * w.cast<Complex>();
  const ComplexVector mean_ro = o.adjoint() * wr;
  const Complex mean_r = wr.sum();
  if (!(std::abs(mean_r) >= 1e-12 * mean_abs_r) || mean_abs_r == 0.0) {
    throw DegenerateOverlapError(
        "<Phi/Psi> vanishes (|mean| = " + std::to_string(std::abs(mean_r)) +
        ", mean |ratio| = " + std::to_string(mean_abs_r) +
        "); the states are orthogonal to working precision");
  }
  if (centered != nullptr) {
    o.rowwise() -= mean_o.transpose();
    for (Index i = 0; i < n; ++i) o.row(i) *= std::sqrt(batch.weight(i));
    *centered = std::move(o);
  }
  return mean_o.conjugate() - mean_ro / mean_r;
}

}  // namespace

ComplexVector overlap_gradient(const RbmState &psi, const TargetAmplitudes &phi,
                               const SampleBatch &batch) {
  return gradient_terms(psi, phi, batch, nullptr);
}

ComplexVector natural_overlap_gradient(const RbmState &psi, const TargetAmplitudes &phi,
                                       const SampleBatch &batch, double diag_shift) {
  ComplexMatrix o;
  const ComplexVector grad = gradient_terms(psi, phi, batch, &o);
  ComplexMatrix s = ComplexMatrix::Zero(o.cols(), o.cols());
  s.selfadjointView<Eigen::Lower>().rankUpdate(o.adjoint());
  for (Index k = 0; k < s.rows(); ++k) s(k, k) += diag_shift * (s(k, k).real() + 1.0);
  return s.ldlt().solve(grad);
}

void adamax_step(OptimizerState &opt, ComplexVector &params, const ComplexVector &grad,
                 const AdamaxConfig &cfg) {
  const Index p = params.size();
  if (grad.size() != p) {
    throw StructuralError("gradient has length " + std::to_string(grad.size()) +
                          ", parameters " + std::to_string(p));
  }
  if (opt.first_moment.size() == 0 && opt.step_count == 0) opt = OptimizerState(p);
  if (opt.first_moment.size() != p || opt.inf_norm.size() != 2 * p) {
    throw StructuralError("optimizer state does not match the parameter count");
  }
  ++opt.step_count;
  const double step = cfg.learning_rate /
                      (1.0 - std::pow(cfg.beta1, static_cast<double>(opt.step_count)));
  for (Index i = 0; i < p; ++i) {
    const Complex g = grad(i);
    Complex &m = opt.first_moment(i);
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    double &u_re = opt.inf_norm(2 * i);
    double &u_im = opt.inf_norm(2 * i + 1);
    u_re = std::max(cfg.beta2 * u_re, std::abs(g.real()));
    u_im = std::max(cfg.beta2 * u_im, std::abs(g.imag()));
    params(i) -= Complex{step * m.real() / std::max(u_re, 1e-12),
                         step * m.imag() / std::max(u_im, 1e-12)};
  }
}

void LearnerConfig::validate() const {
  if (n_iterations < 0) throw ConfigError("learner.n_iterations must be non-negative");
  if (samples_per_iteration < 1) {
    throw ConfigError("learner.samples_per_iteration must be positive");
  }
  if (!(learning_rate > 0.0)) throw ConfigError("learner.learning_rate must be positive");
  if (!(adamax_beta1 > 0.0 && adamax_beta1 < 1.0)) {
    throw ConfigError("learner.adamax_beta1 must lie in (0, 1)");
  }
  if (!(adamax_beta2 > 0.0 && adamax_beta2 < 1.0)) {
    throw ConfigError("learner.adamax_beta2 must lie in (0, 1)");
  }
  if (init_noise_sigma < 0.0) throw ConfigError("learner.init_noise_sigma must be >= 0");
  if (overlap_check_interval < 1) {
    throw ConfigError("learner.overlap_check_interval must be positive");
  }
  if (target_infidelity < 0.0) throw ConfigError("learner.target_infidelity must be >= 0");
}

std::pair<RbmState, LearnReport> learn_target(const RbmState &initial,
                                              const TargetAmplitudes &phi,
                                              const LearnerConfig &lcfg,
                                              const SamplerConfig &scfg,
                                              const TraceObserver &observer) {
  lcfg.validate();
  scfg.validate();
  check_same_size(initial, phi);

  SamplerConfig grad_cfg = scfg;
  grad_cfg.samples_per_chain =
      (lcfg.samples_per_iteration + scfg.n_chains - 1) / scfg.n_chains;
  const AdamaxConfig adamax{lcfg.learning_rate, lcfg.adamax_beta1, lcfg.adamax_beta2};

  LearnReport report;
  for (int attempt = 0;; ++attempt) {
    Rng rng(derive_seed(lcfg.seed, "learner-init", static_cast<std::uint64_t>(attempt)));
    RbmState current = add_noise(initial, lcfg.init_noise_sigma, rng);
    RbmState best = current;
    double best_overlap = -1.0;
    OptimizerState opt(current.n_params());
    ComplexVector params = current.parameters();
    const std::uint64_t salt_base = static_cast<std::uint64_t>(attempt) << 32;
    report.iterations_run = 0;
    std::vector<BitString> starts;
    try {
      for (Index t = 0;; ++t) {
        if (t % lcfg.overlap_check_interval == 0 || t == lcfg.n_iterations) {
          SamplerConfig check_cfg = scfg;
          check_cfg.seed = derive_seed(lcfg.seed, "learner-overlap",
                                       salt_base + static_cast<std::uint64_t>(t));
          const OverlapEstimate est = estimate_overlap(current, phi, check_cfg);
          OverlapTracePoint point{t, est.value > 0.0 ? -std::log(est.value) : INFINITY,
                                  est.value, est.std_error};
          report.trace.push_back(point);
          if (observer) observer(point);
          if (est.value > best_overlap) {
            best_overlap = est.value;
            best = current;
          }
          if (est.value >= 1.0 - lcfg.target_infidelity) break;
        }
        if (t == lcfg.n_iterations) break;
        grad_cfg.seed = derive_seed(lcfg.seed, "learner-gradient",
                                    salt_base + static_cast<std::uint64_t>(t));
        const SampleBatch batch = draw_batch(current, SampleTarget::psi(), grad_cfg,
                                             starts.empty() ? nullptr : &starts);
        if (grad_cfg.mode == SampleMode::Markov) starts = chain_ends(batch);
        if (lcfg.optimizer == LearnerOptimizer::StochasticReconfiguration) {
          params -= lcfg.learning_rate *
                    natural_overlap_gradient(current, phi, batch, lcfg.sr_diag_shift);
        } else {
          adamax_step(opt, params, overlap_gradient(current, phi, batch), adamax);
        }
        current.set_parameters(params);
        current.check_finite();
        report.iterations_run = t + 1;
      }
    } catch (const DegenerateOverlapError &e) {
      if (attempt >= lcfg.max_reinitializations) {
        throw LearnerError(std::string("learner failed after ") +
                           std::to_string(attempt + 1) + " initializations (" +
                           std::to_string(report.trace.size()) +
                           " trace points): " + e.what());
      }
      report.reinitializations = attempt + 1;
      continue;
    }

    SamplerConfig final_cfg = scfg;
    final_cfg.seed = derive_seed(lcfg.seed, "learner-final");
    const OverlapEstimate final_est = estimate_overlap(best, phi, final_cfg);
    report.final_overlap = final_est.value;
    report.final_std_error = final_est.std_error;
    return {std::move(best), std::move(report)};
  }
}

std::pair<RbmState, LearnReport> learn_hadamard(const RbmState &state, Index qubit,
                                                const LearnerConfig &lcfg,
                                                const SamplerConfig &scfg,
                                                const TraceObserver &observer) {
  const HadamardTarget target(state, qubit);
  return learn_target(state, target, lcfg, scfg, observer);
}

}  // namespace nqs
