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


#include "nqs/verify.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nqs/gate_learner.hpp"
#include "nqs/oracle.hpp"
#include "nqs/sampler.hpp"

namespace nqs {

namespace {

constexpr double kGateTolerance = 1e-10;
constexpr double kCrzTolerance = 1e-12;
constexpr double kGradientTolerance = 1e-6;
constexpr double kFiniteDifferenceStep = 1e-5;
constexpr double kChiSquareSignificance = 0.01;

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

GateOp random_exact_gate(Rng &rng, Index n) {
  const double angle = (2.0 * uniform01(rng) - 1.0) * 2.0 * std::numbers::pi;
  const Index q = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
  switch (uniform_index(rng, 5)) {
    case 0: return GateOp::rz(q, angle);
    case 1: {
      Index t = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n - 1)));
      if (t >= q) ++t;
      return GateOp::crz(q, t, angle);
    }
    case 2: return GateOp::x(q);
    case 3: return GateOp::y(q);
    default: return GateOp::z(q);
  }
}

RbmState apply_checked(const RbmState &state, const GateOp &gate, bool corrupt_crz) {
  if (gate.kind != GateKind::CRZ || !corrupt_crz) return apply_exact(state, gate);
  CrzParameters p = crz_parameters(gate.angle);
  p.weight_control = -p.weight_control;
  p.weight_target = -p.weight_target;
  return apply_crz(state, gate.qubits[0], gate.qubits[1], p);
}

PropertyResult check_exact_gates(Rng &rng, bool corrupt_crz) {
  double worst = 0.0;
  std::string worst_gate;
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 2 + static_cast<Index>(uniform_index(rng, 7));
    const Index m = n * static_cast<Index>(1 + uniform_index(rng, 2));
    const RbmState state = random_state(n, m, rng);
    const GateOp gate = random_exact_gate(rng, n);
    StateVector want = expand_rbm(state);
    apply_gate_exact(want, gate);
    const StateVector got = expand_rbm(apply_checked(state, gate, corrupt_crz));
    const double err = mismatch_up_to_scalar(got.amplitudes(), want.amplitudes());
    if (!(err <= worst)) {
      worst = err;
      worst_gate = gate.to_string();
    }
  }
  return {"exact_gates_match_oracle", worst <= kGateTolerance,
          "max rel. mismatch " + format_double(worst) +
              (worst_gate.empty() ? "" : " (" + worst_gate + ")")};
}

PropertyResult check_crz_assignments(bool corrupt_crz) {
  double worst = 0.0;
  for (int i = 0; i < 16; ++i) {
    // 16 angles spread over (-2 pi, 2 pi].
    const double phi = -2.0 * std::numbers::pi + (i + 1) * std::numbers::pi / 4.0 - 0.1;
    CrzParameters p = crz_parameters(phi);
    if (corrupt_crz) {
      p.weight_control = -p.weight_control;
      p.weight_target = -p.weight_target;
    }
    worst = std::max(worst, crz_assignment_error(phi, p));
  }
  return {"crz_four_assignments", worst <= kCrzTolerance,
          "max abs. deviation " + format_double(worst) + " over 16 angles"};
}

double exact_loss(const RbmState &psi, const StateVector &target) {
  return -std::log(overlap_exact(expand_rbm(psi), target));
}

PropertyResult check_gradient(Rng &rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + static_cast<Index>(uniform_index(rng, 5));
    const Index m = n;
    const RbmState source = random_state(n, m, rng);
    const Index q = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    const HadamardTarget phi(source, q);
    StateVector target = expand_rbm(source);
    apply_gate_exact(target, GateOp::h(q));
    const RbmState psi = random_state(n, m, rng);

    const ComplexVector grad =
        overlap_gradient(psi, phi, enumerate_batch(psi, SampleTarget::psi()));
    ComplexVector params = psi.parameters();
    RbmState probe = psi;
    for (Index k = 0; k < params.size(); ++k) {
      for (const Complex dir : {Complex{1.0, 0.0}, Complex{0.0, 1.0}}) {
        const Complex saved = params(k);
        params(k) = saved + kFiniteDifferenceStep * dir;
        probe.set_parameters(params);
        const double up = exact_loss(probe, target);
        params(k) = saved - kFiniteDifferenceStep * dir;
        probe.set_parameters(params);
        const double down = exact_loss(probe, target);
        params(k) = saved;
        const double fd = (up - down) / (2.0 * kFiniteDifferenceStep);
        const double analytic = dir.real() != 0.0 ? grad(k).real() : grad(k).imag();
        worst = std::max(worst, std::abs(fd - analytic));
      }
    }
  }
  return {"gradient_matches_finite_differences", worst <= kGradientTolerance,
          "max abs. deviation " + format_double(worst)};
}

PropertyResult check_sampler(Rng &rng, const SampleTarget &target, Index total,
                             const std::string &name) {
  const Index n = 6;
  const RbmState state = random_state(n, n, rng, 0.3);
  StateVector exact = expand_rbm(state);
  if (target.kind == SampleTarget::Kind::HadamardPhi) apply_gate_exact(exact, GateOp::h(target.qubit));

  SamplerConfig cfg;
  cfg.n_chains = 16;
  cfg.sweeps_between_samples = 4;
  cfg.samples_per_chain = (total + cfg.n_chains - 1) / cfg.n_chains;
  cfg.seed = rng();
  const SampleBatch batch = run_chains(state, target, cfg);

  const std::uint64_t dim = exact.dim();
  std::vector<double> observed(dim, 0.0);
  for (const BitString &b : batch.bitstrings) observed[b.to_index()] += 1.0;
  const double count = static_cast<double>(batch.size());

  // Bins with expected count below 5 are pooled.
  double stat = 0.0, pooled_obs = 0.0, pooled_exp = 0.0;
  int bins = 0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const double expected = count * std::norm(exact[i]);
    if (expected < 5.0) {
      pooled_obs += observed[i];
      pooled_exp += expected;
      continue;
    }
    stat += (observed[i] - expected) * (observed[i] - expected) / expected;
    ++bins;
  }
  if (pooled_exp > 0.0) {
    stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++bins;
  }
  const boost::math::chi_squared dist(bins - 1);
  const double critical = boost::math::quantile(complement(dist, kChiSquareSignificance));
  return {name, stat <= critical,
          "chi2 " + format_double(stat) + " vs critical " + format_double(critical) +
              " (" + std::to_string(bins - 1) + " dof)"};
}

}  // namespace

RbmState random_state(Index n_visible, Index n_hidden, Rng &rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  RbmState s(n_visible, n_hidden);
  ComplexVector p(s.n_params());
  for (Index i = 0; i < p.size(); ++i) {
    const double re = normal(rng);
    p(i) = {re, normal(rng)};
  }
  s.set_parameters(p);
  return s;
}

double mismatch_up_to_scalar(const ComplexVector &a, const ComplexVector &b) {
  if (a.size() != b.size() || a.size() == 0) return std::numeric_limits<double>::infinity();
  Index k = 0;
  b.cwiseAbs().maxCoeff(&k);
  if (b(k) == Complex{0.0, 0.0}) return std::numeric_limits<double>::infinity();
  const Complex c = a(k) / b(k);
  double worst = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const Complex cb = c * b(i);
    const double scale = std::max(std::abs(a(i)), std::abs(cb));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(a(i) - cb) / scale);
  }
  return worst;
}

double crz_assignment_error(double phi, const CrzParameters &p) {
  auto value = [&](int bl, int bm) {
    return std::exp(p.bias_shift_control * double(bl) + p.bias_shift_target * double(bm)) *
           (1.0 + std::exp(p.weight_control * double(bl) + p.weight_target * double(bm)));
  };
  const Complex base = value(0, 0);
  const Complex want[4] = {1.0, 1.0, 1.0, std::exp(Complex{0.0, phi})};
  const Complex got[4] = {1.0, value(1, 0) / base, value(0, 1) / base, value(1, 1) / base};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  return worst;
}

bool VerifyReport::all_passed() const {
  for (const PropertyResult &r : results) {
    if (!r.passed) return false;
  }
  return true;
}

VerifyReport verify_suite(const VerifyOptions &opts, const PropertyObserver &observer) {
  VerifyReport report;
  auto record = [&](PropertyResult r) {
    if (observer) observer(r);
    report.results.push_back(std::move(r));
  };
  Rng gates_rng(derive_seed(opts.seed, "verify-gates"));
  record(check_exact_gates(gates_rng, opts.corrupt_crz_sign));
  record(check_crz_assignments(opts.corrupt_crz_sign));
  Rng grad_rng(derive_seed(opts.seed, "verify-gradient"));
  record(check_gradient(grad_rng));
  Rng psi_rng(derive_seed(opts.seed, "verify-sampler-psi"));
  record(check_sampler(psi_rng, SampleTarget::psi(), opts.chi_square_samples,
                       "sampler_chi_square_psi"));
  Rng phi_rng(derive_seed(opts.seed, "verify-sampler-hadamard"));
  record(check_sampler(phi_rng, SampleTarget::hadamard(2), opts.chi_square_samples,
                       "sampler_chi_square_hadamard"));
  return report;
}

}  // namespace nqs
