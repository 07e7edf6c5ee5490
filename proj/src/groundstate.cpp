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

#include "nqs/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nqs/parallel.hpp"
#include "nqs/random.hpp"

namespace nqs {

namespace {

void add_bond(std::set<std::pair<Index, Index>> &bonds, Index a, Index b) {
  if (a == b) return;
  bonds.insert({std::min(a, b), std::max(a, b)});
}

double bond_energy(const BitString &b, const Lattice &lattice) {
  double acc = 0.0;
  for (const auto &[i, j] : lattice.bonds) acc += (b[i] == b[j]) ? 1.0 : -1.0;
  return acc;
}

void check_lattice(const RbmState &state, const Lattice &lattice) {
  if (lattice.n_sites() != state.n_visible()) {
    throw StructuralError("lattice has " + std::to_string(lattice.n_sites()) +
                          " sites, state has " + std::to_string(state.n_visible()) +
                          " qubits");
  }
}


Index jackknife_blocks(const SampleBatch &batch) {
  if (batch.n_chains >= 2) return batch.n_chains;
  return std::min<Index>(16, batch.size());
}

EnergyEstimate summarize(const std::vector<Complex> &e_loc, const SampleBatch &batch) {
  EnergyEstimate est;
  const Index n = batch.size();
  Complex total{0.0, 0.0};
  for (Index i = 0; i < n; ++i) total += batch.weight(i) * e_loc[static_cast<std::size_t>(i)];
  est.mean = total;
  if (!batch.weights.empty()) return est;
  const Index blocks = jackknife_blocks(batch);
  if (blocks < 2) return est;
  std::vector<Complex> block_sum(static_cast<std::size_t>(blocks));
  std::vector<Index> block_count(static_cast<std::size_t>(blocks), 0);
  Complex sum{0.0, 0.0};
  for (Index i = 0; i < n; ++i) {
    const auto b = static_cast<std::size_t>(i * blocks / n);
    block_sum[b] += e_loc[static_cast<std::size_t>(i)];
    ++block_count[b];
    sum += e_loc[static_cast<std::size_t>(i)];
  }
  std::vector<double> loo(static_cast<std::size_t>(blocks));
  double mean = 0.0;
  for (std::size_t b = 0; b < loo.size(); ++b) {
    loo[b] = ((sum - block_sum[b]) / static_cast<double>(n - block_count[b])).real();
    mean += loo[b];
  }
  mean /= static_cast<double>(blocks);
  double var = 0.0;
  for (double v : loo) var += (v - mean) * (v - mean);
  est.std_error = std::sqrt(var * static_cast<double>(blocks - 1) / static_cast<double>(blocks));
  return est;
}

Complex local_energy_with(const FlipEvaluator &ev, const ThetaTable &table,
                          const Lattice &lattice, const TfimParams &p) {
  Complex e = p.j * bond_energy(table.bits(), lattice);
  if (p.gamma != 0.0) {
    Complex flips{0.0, 0.0};
    for (Index i = 0; i < table.bits().size(); ++i) {
      flips += std::exp(ev.log_ratio_flip(table, i));
    }
    e -= p.gamma * flips;
  }
  return e;
}

std::vector<Complex> local_energies(const RbmState &state, const SampleBatch &batch,
                                    const Lattice &lattice, const TfimParams &p) {
  check_lattice(state, lattice);
  const FlipEvaluator ev(state);
  std::vector<Complex> e(batch.bitstrings.size());
  parallel_for(e.size(), [&](std::size_t i) {
    e[i] = local_energy_with(ev, ThetaTable(state, batch.bitstrings[i]), lattice, p);
  });
  return e;
}

}  // namespace

Lattice Lattice::chain(Index length, bool periodic) {
  if (length < 1) throw StructuralError("chain length must be positive");
  Lattice l;
  l.kind = periodic ? Kind::ChainPeriodic : Kind::ChainOpen;
  l.extent = {length};
  std::set<std::pair<Index, Index>> bonds;
  for (Index i = 0; i + 1 < length; ++i) add_bond(bonds, i, i + 1);
  if (periodic) add_bond(bonds, length - 1, 0);
  l.bonds.assign(bonds.begin(), bonds.end());
  return l;
}

Lattice Lattice::square(Index lx, Index ly) {
  if (lx < 1 || ly < 1) throw StructuralError("square lattice extents must be positive");
  Lattice l;
  l.kind = Kind::SquarePeriodic;
  l.extent = {lx, ly};
  std::set<std::pair<Index, Index>> bonds;
  for (Index y = 0; y < ly; ++y) {
    for (Index x = 0; x < lx; ++x) {
      const Index site = x + lx * y;
      add_bond(bonds, site, (x + 1) % lx + lx * y);
      add_bond(bonds, site, x + lx * ((y + 1) % ly));
    }
  }
  l.bonds.assign(bonds.begin(), bonds.end());
  return l;
}

Index Lattice::n_sites() const {
  Index n = 1;
  for (Index e : extent) n *= e;
  return n;
}

std::string lattice_kind_name(Lattice::Kind kind) {
  switch (kind) {
    case Lattice::Kind::ChainPeriodic: return "chain_periodic";
    case Lattice::Kind::ChainOpen: return "chain_open";
    case Lattice::Kind::SquarePeriodic: return "square_periodic";
  }
  return "?";
}

Lattice::Kind parse_lattice_kind(const std::string &name) {
  for (auto k : {Lattice::Kind::ChainPeriodic, Lattice::Kind::ChainOpen,
                 Lattice::Kind::SquarePeriodic}) {
    if (lattice_kind_name(k) == name) return k;
  }
  throw ConfigError("unknown lattice kind '" + name + "'");
}

std::string Lattice::name() const {
  std::string s = lattice_kind_name(kind);
  for (std::size_t i = 0; i < extent.size(); ++i) {
    s += (i == 0 ? ":" : "x") + std::to_string(extent[i]);
  }
  return s;
}

Complex local_energy(const RbmState &state, const ThetaTable &table,
                     const Lattice &lattice, const TfimParams &p) {
  check_lattice(state, lattice);
  return local_energy_with(FlipEvaluator(state), table, lattice, p);
}

Complex local_energy(const RbmState &state, const BitString &b, const Lattice &lattice,
                     const TfimParams &p) {
  return local_energy(state, ThetaTable(state, b), lattice, p);
}

Complex local_energy_from_scratch(const RbmState &state, const BitString &b,
                                  const Lattice &lattice, const TfimParams &p) {
  check_lattice(state, lattice);
  const Complex log_psi = log_amplitude(state, b);
  Complex e = p.j * bond_energy(b, lattice);
  for (Index i = 0; i < state.n_visible(); ++i) {
    BitString flipped = b;
    flipped.flip(i);
    e -= p.gamma * std::exp(log_amplitude(state, flipped) - log_psi);
  }
  return e;
}

void VmcConfig::validate() const {
  if (n_iterations < 0) throw ConfigError("vmc.n_iterations must be non-negative");
  if (samples_per_iteration < 1) throw ConfigError("vmc.samples_per_iteration must be positive");
  if (!(learning_rate > 0.0)) throw ConfigError("vmc.learning_rate must be positive");
  if (!(final_lr_factor > 0.0)) throw ConfigError("vmc.final_lr_factor must be positive");
  if (!(adamax_beta1 > 0.0 && adamax_beta1 < 1.0)) throw ConfigError("vmc.adamax_beta1 must lie in (0, 1)");
  if (!(adamax_beta2 > 0.0 && adamax_beta2 < 1.0)) throw ConfigError("vmc.adamax_beta2 must lie in (0, 1)");
  if (init_sigma < 0.0) throw ConfigError("vmc.init_sigma must be >= 0");
  if (final_samples < 1) throw ConfigError("vmc.final_samples must be positive");
  if (patience < 1) throw ConfigError("vmc.patience must be positive");
}

EnergyEstimate estimate_energy(const RbmState &state, const Lattice &lattice,
                               const TfimParams &p, const SamplerConfig &cfg) {
  const SampleBatch batch = draw_batch(state, SampleTarget::psi(), cfg);
  return summarize(local_energies(state, batch, lattice, p), batch);
}

Index hidden_units_for(Index n_visible, double alpha) {
  const double m = alpha * static_cast<double>(n_visible);
  const double rounded = std::round(m);
  if (alpha < 0.0 || std::abs(m - rounded) > 1e-9) {
    throw ConfigError("alpha * N must be a non-negative integer (alpha = " +
                      std::to_string(alpha) + ", N = " + std::to_string(n_visible) + ")");
  }
  return static_cast<Index>(rounded);
}

VmcResult vmc_ground_state(const Lattice &lattice, const TfimParams &p, double alpha,
                           const VmcConfig &cfg, const SamplerConfig &scfg) {
  cfg.validate();
  scfg.validate();
  const Index n = lattice.n_sites();
  const Index m = hidden_units_for(n, alpha);

  Rng rng(derive_seed(cfg.seed, "vmc-init"));
  std::normal_distribution<double> normal(0.0, cfg.init_sigma);
  RbmState state(n, m);
  ComplexVector params = state.parameters();
  for (Index i = 0; i < params.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    params(i) = {re, im};
  }
  state.set_parameters(params);

  SamplerConfig grad_cfg = scfg;
  grad_cfg.samples_per_chain = (cfg.samples_per_iteration + scfg.n_chains - 1) / scfg.n_chains;
  OptimizerState opt(state.n_params());
  VmcResult result{state, {}, 0.0, 0.0};
  double best = std::numeric_limits<double>::infinity();
  Index above_best = 0;

  std::vector<BitString> starts;
  for (Index t = 0; t < cfg.n_iterations; ++t) {
    grad_cfg.seed = derive_seed(cfg.seed, "vmc-iteration", static_cast<std::uint64_t>(t));
    const SampleBatch batch = draw_batch(state, SampleTarget::psi(), grad_cfg,
                                         starts.empty() ? nullptr : &starts);
    if (grad_cfg.mode == SampleMode::Markov) starts = chain_ends(batch);
    const Index np = state.n_params();
    const Index ns = batch.size();
    const FlipEvaluator ev(state);
    ComplexMatrix o(ns, np);
    std::vector<Complex> e_loc(static_cast<std::size_t>(ns));
    parallel_for(static_cast<std::size_t>(ns), [&](std::size_t i) {
      const ThetaTable table(state, batch.bitstrings[i]);
      e_loc[i] = local_energy_with(ev, table, lattice, p);
      o.row(static_cast<Index>(i)) = variational_derivatives(state, table).transpose();
    });
    const EnergyEstimate est = summarize(e_loc, batch);
    if (!std::isfinite(est.mean.real())) {
      throw NumericError("VMC energy is not finite at iteration " + std::to_string(t));
    }
    result.trace.push_back({t, est.mean.real(), est.std_error});

    if (est.mean.real() < best) {
      best = est.mean.real();
      above_best = 0;
    } else if (est.mean.real() - best > std::max(10.0 * est.std_error, 0.1 * std::abs(best))) {
      if (++above_best >= cfg.patience) {
        throw LearnerError("VMC energy diverged: " + std::to_string(est.mean.real()) +
                           " vs best " + std::to_string(best) + " after " +
                           std::to_string(t + 1) + " iterations");
      }
    } else {
      above_best = 0;
    }

    Eigen::VectorXd w(ns);
    for (Index i = 0; i < ns; ++i) w(i) = batch.weight(i);
    ComplexVector e(ns);
    for (Index i = 0; i < ns; ++i) e(i) = e_loc[static_cast<std::size_t>(i)];
    const ComplexVector mean_o = o.transpose() * w.cast<Complex>();
    o.rowwise() -= mean_o.transpose();
    // F_k = <(E - <E>) O_k^*>
    const ComplexVector centered_e = (e.array() - est.mean).matrix();
    const ComplexVector force =
        o.adjoint() * (w.cast<Complex>().array() * centered_e.array()).matrix();
    const double frac = cfg.n_iterations > 1
                            ? static_cast<double>(t) / static_cast<double>(cfg.n_iterations - 1)
                            : 0.0;
    const double lr = cfg.learning_rate * std::pow(cfg.final_lr_factor, frac);
    if (cfg.optimizer == VmcOptimizer::StochasticReconfiguration) {
      const ComplexMatrix scaled = w.cwiseSqrt().cast<Complex>().asDiagonal() * o;
      ComplexMatrix s = ComplexMatrix::Zero(np, np);
      s.selfadjointView<Eigen::Lower>().rankUpdate(scaled.adjoint());
      for (Index k = 0; k < np; ++k) s(k, k) += cfg.sr_diag_shift * (s(k, k).real() + 1.0);
      const ComplexVector delta = s.ldlt().solve(force);
      params -= lr * delta;
      state.set_parameters(params);
      state.check_finite();
      continue;
    }
    const ComplexVector grad = 2.0 * force;
    const AdamaxConfig adamax{lr, cfg.adamax_beta1, cfg.adamax_beta2};
    adamax_step(opt, params, grad, adamax);
    state.set_parameters(params);
    state.check_finite();
  }

  SamplerConfig final_cfg = scfg;
  final_cfg.seed = derive_seed(cfg.seed, "vmc-final");
  final_cfg.samples_per_chain = (cfg.final_samples + scfg.n_chains - 1) / scfg.n_chains;
  const EnergyEstimate final_est = estimate_energy(state, lattice, p, final_cfg);
  result.state = state;
  result.final_energy = final_est.mean.real();
  result.final_std_error = final_est.std_error;
  return result;
}

void apply_tfim(const Lattice &lattice, const TfimParams &p, const ComplexVector &x,
                ComplexVector &y) {
  const Index n = lattice.n_sites();
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (static_cast<std::uint64_t>(x.size()) != dim) {
    throw StructuralError("vector length does not match the lattice");
  }
  y.resize(x.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    double diag = 0.0;
    for (const auto &[a, b] : lattice.bonds) {
      diag += (((i >> a) ^ (i >> b)) & 1U) ? -1.0 : 1.0;
    }
    Complex acc = p.j * diag * x(static_cast<Index>(i));
    for (Index q = 0; q < n; ++q) {
      acc -= p.gamma * x(static_cast<Index>(i ^ (std::uint64_t{1} << q)));
    }
    y(static_cast<Index>(i)) = acc;
  }
}

double exact_energy(const RbmState &state, const Lattice &lattice, const TfimParams &p,
                    Index max_qubits) {
  check_lattice(state, lattice);
  const StateVector v = expand_rbm(state, max_qubits);
  ComplexVector hv;
  apply_tfim(lattice, p, v.amplitudes(), hv);
  return v.amplitudes().dot(hv).real() / v.amplitudes().squaredNorm();
}

ExactGroundState exact_ground_state(const Lattice &lattice, const TfimParams &p,
                                    Index max_qubits) {
  const Index n = lattice.n_sites();
  if (n > max_qubits) {
    throw LimitError("exact diagonalization of " + std::to_string(n) +
                     " sites exceeds the oracle limit");
  }
  const Index dim = static_cast<Index>(std::uint64_t{1} << n);
  const Index max_steps = std::min<Index>(dim, 300);

  std::vector<ComplexVector> basis;
  std::vector<double> alpha, beta;
  // A positive start vector overlaps the Perron-Frobenius ground state.
  Rng rng(0x5eed);
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = 1.0 + 0.1 * uniform01(rng);
  v.normalize();
  double previous = std::numeric_limits<double>::infinity();
  Eigen::VectorXd ritz;
  double energy = 0.0;
  ComplexVector w;
  for (Index k = 0; k < max_steps; ++k) {
    basis.push_back(v);
    apply_tfim(lattice, p, v, w);
    const double a = v.dot(w).real();
    alpha.push_back(a);
    for (const ComplexVector &u : basis) w -= u.dot(w) * u;
    for (const ComplexVector &u : basis) w -= u.dot(w) * u;
    const double b = w.norm();

    const Index m = static_cast<Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    energy = solver.eigenvalues()(0);
    ritz = solver.eigenvectors().col(0);
    if (b < 1e-12 || std::abs(energy - previous) < 1e-14 * std::max(1.0, std::abs(energy))) break;
    previous = energy;
    beta.push_back(b);
    v = w / b;
  }
  ComplexVector ground = ComplexVector::Zero(dim);
  for (Index i = 0; i < ritz.size(); ++i) ground += ritz(i) * basis[static_cast<std::size_t>(i)];
  StateVector sv(n, std::move(ground));
  sv.normalize();
  return {energy, std::move(sv)};
}

std::pair<RbmState, LearnReport> fit_to_statevector(const StateVector &target, double alpha,
                                                    const LearnerConfig &lcfg,
                                                    const SamplerConfig &scfg) {
  const Index n = target.n_qubits();
  const RbmState initial(n, hidden_units_for(n, alpha));
  const StateVectorTarget phi(target);
  return learn_target(initial, phi, lcfg, scfg);
}

}  // namespace nqs
