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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nqs/gate_learner.hpp"
#include "nqs/oracle.hpp"
#include "nqs/verify.hpp"
#include "test_support.hpp"

namespace nqs {
namespace {

using testing::dense_gate;
using testing::direct_vector;
using testing::exact_loss;

SamplerConfig markov(std::uint64_t seed, Index chains = 16, Index per_chain = 256) {
  SamplerConfig cfg;
  cfg.n_chains = chains;
  cfg.samples_per_chain = per_chain;
  cfg.seed = seed;
  return cfg;
}

SamplerConfig enumerate() {
  SamplerConfig cfg;
  cfg.mode = SampleMode::Enumerate;
  return cfg;
}

double exact_overlap(const ComplexVector &u, const ComplexVector &v) {
  return std::abs(u.dot(v)) / (u.norm() * v.norm());
}

TEST(Overlap, IdenticalStatesGiveOne) {
  Rng rng(51);
  const RbmState s = random_state(5, 5, rng);
  const OverlapEstimate est = estimate_overlap(s, RbmTarget(s), markov(1));
  EXPECT_LT(std::abs(est.value - 1.0), std::max(3.0 * est.std_error, 1e-12));
}

TEST(Overlap, PinnedOrthogonalStatesGiveZero) {
  RbmState psi(2, 0), phi(2, 0);
  psi.visible_bias() << Complex(-40.0, 0.0), Complex(-40.0, 0.0);
  phi.visible_bias() << Complex(40.0, 0.0), Complex(-40.0, 0.0);
  EXPECT_LT(estimate_overlap(psi, RbmTarget(phi), markov(2)).value, 1e-8);
  EXPECT_LT(estimate_overlap(psi, RbmTarget(phi), enumerate()).value, 1e-8);
}

TEST(Overlap, HadamardTargetMatchesOracleOverTwentyRuns) {
  Rng rng(53);
  const RbmState source = random_state(6, 6, rng);
  const RbmState psi = random_state(6, 6, rng, 0.2);
  const HadamardTarget phi(source, 2);
  const double want =
      exact_overlap(direct_vector(psi), dense_gate(GateOp::h(2), 6) * direct_vector(source));
  int inside = 0;
  double mean = 0.0, se2 = 0.0;
  for (int run = 0; run < 20; ++run) {
    const OverlapEstimate est = estimate_overlap(psi, phi, markov(100 + run));
    if (std::abs(est.value - want) < 3.0 * est.std_error) ++inside;
    mean += est.value / 20.0;
    se2 += est.std_error * est.std_error / 400.0;
  }
  EXPECT_GE(inside, 19) << "exact " << want;
  EXPECT_LT(std::abs(mean - want), 3.0 * std::sqrt(se2)) << mean << " vs " << want;
}

TEST(Overlap, EnumerationIsExact) {
  Rng rng(54);
  const RbmState source = random_state(4, 3, rng);
  const RbmState psi = random_state(4, 4, rng);
  const double want =
      exact_overlap(direct_vector(psi), dense_gate(GateOp::h(1), 4) * direct_vector(source));
  const OverlapEstimate est = estimate_overlap(psi, HadamardTarget(source, 1), enumerate());
  EXPECT_NEAR(est.value, want, 1e-12);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(Overlap, InvariantUnderScalingEitherState) {
  Rng rng(55);
  const RbmState a = random_state(4, 3, rng);
  const RbmState b = random_state(4, 3, rng);
  const double base = estimate_overlap(a, RbmTarget(b), enumerate()).value;
  RbmState a2 = add_hidden_unit(a, {}, Complex(1.3, -0.4));
  EXPECT_NEAR(estimate_overlap(a2, RbmTarget(b), enumerate()).value, base, 1e-12);
  EXPECT_NEAR(estimate_overlap(a, RbmTarget(b, Complex(3.0, 4.0)), enumerate()).value, base,
              1e-12);
}

TEST(Gradient, MatchesFiniteDifferencesUnderEnumeration) {
  Rng rng(56);
  const double h = 1e-5;
  for (int trial = 0; trial < 3; ++trial) {
    const RbmState source = random_state(4, 4, rng);
    const RbmState psi = random_state(4, 4, rng);
    const Index q = trial;
    const ComplexVector target = dense_gate(GateOp::h(q), 4) * direct_vector(source);
    const ComplexVector g =
        overlap_gradient(psi, HadamardTarget(source, q), enumerate_batch(psi, SampleTarget::psi()));
    const ComplexVector p = psi.parameters();
    for (Index k = 0; k < p.size(); ++k) {
      for (Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        RbmState up = psi, down = psi;
        ComplexVector pu = p, pd = p;
        pu(k) += h * dir;
        pd(k) -= h * dir;
        up.set_parameters(pu);
        down.set_parameters(pd);
        const double fd = (exact_loss(up, target) - exact_loss(down, target)) / (2.0 * h);
        const double analytic = dir.real() != 0.0 ? g(k).real() : g(k).imag();
        EXPECT_NEAR(fd, analytic, 1e-6) << "trial " << trial << " param " << k;
      }
    }
  }
}

TEST(Gradient, VanishesAtTheTarget) {
  Rng rng(57);
  const RbmState s = random_state(4, 4, rng);
  const ComplexVector exact =
      overlap_gradient(s, RbmTarget(s), enumerate_batch(s, SampleTarget::psi()));
  EXPECT_LT(exact.cwiseAbs().maxCoeff(), 1e-12);
  // Sampled: every term has Phi / Psi = 1, so the estimate is exact too.
  const ComplexVector sampled =
      overlap_gradient(s, RbmTarget(s), run_chains(s, SampleTarget::psi(), markov(3)));
  EXPECT_LT(sampled.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Gradient, UnchangedByScalingTheTarget) {
  Rng rng(58);
  const RbmState src = random_state(4, 4, rng);
  const RbmState psi = random_state(4, 4, rng);
  const SampleBatch batch = run_chains(psi, SampleTarget::psi(), markov(4));
  const ComplexVector g1 = overlap_gradient(psi, RbmTarget(src), batch);
  const ComplexVector g2 = overlap_gradient(psi, RbmTarget(src, Complex(3.0, 4.0)), batch);
  EXPECT_LT((g1 - g2).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, g1.cwiseAbs().maxCoeff()));
}

TEST(Gradient, OrthogonalTargetIsDegenerate) {
  // |+> against |->: the ratios are +1 and -1.
  RbmState plus(1, 0), minus(1, 0);
  minus.visible_bias()(0) = Complex(0.0, std::numbers::pi);
  EXPECT_THROW(overlap_gradient(minus, RbmTarget(plus), enumerate_batch(minus, SampleTarget::psi())),
               DegenerateOverlapError);
}

TEST(Gradient, NaturalGradientSolvesShiftedSystem) {
  Rng rng(59);
  const RbmState src = random_state(3, 2, rng);
  const RbmState psi = random_state(3, 2, rng);
  const HadamardTarget phi(src, 0);
  const SampleBatch batch = enumerate_batch(psi, SampleTarget::psi());
  const ComplexVector g = overlap_gradient(psi, phi, batch);
  const ComplexVector x = natural_overlap_gradient(psi, phi, batch, 1e-3);
  // Rebuild S from the enumerated derivatives.
  const Index np = psi.n_params();
  ComplexMatrix o(batch.size(), np);
  for (Index i = 0; i < batch.size(); ++i) {
    o.row(i) = variational_derivatives(psi, batch.bitstrings[i]).transpose();
  }
  ComplexVector mean = ComplexVector::Zero(np);
  for (Index i = 0; i < batch.size(); ++i) mean += batch.weights[i] * o.row(i).transpose();
  ComplexMatrix s = ComplexMatrix::Zero(np, np);
  for (Index i = 0; i < batch.size(); ++i) {
    const ComplexVector d = o.row(i).transpose() - mean;
    s += batch.weights[i] * d.conjugate() * d.transpose();
  }
  for (Index k = 0; k < np; ++k) s(k, k) += 1e-3 * (s(k, k) + 1.0);
  EXPECT_LT((s * x - g).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, g.cwiseAbs().maxCoeff()));
}

TEST(Adamax, FirstStepByHand) {
  OptimizerState opt(1);
  ComplexVector p = ComplexVector::Zero(1);
  ComplexVector g(1);
  g(0) = Complex(1.0, 0.0);
  adamax_step(opt, p, g, {1e-3, 0.9, 0.999});
  EXPECT_NEAR(opt.first_moment(0).real(), 0.1, 1e-15);
  EXPECT_NEAR(opt.inf_norm(0), 1.0, 1e-15);
  EXPECT_NEAR(p(0).real(), -1e-3, 1e-15);
  EXPECT_EQ(p(0).imag(), 0.0);
  EXPECT_EQ(opt.step_count, 1);
}

TEST(Adamax, ZeroGradientNeverMoves) {
  OptimizerState opt(3);
  ComplexVector p(3);
  p << Complex(1, 2), Complex(-3, 0.5), Complex(0, 0);
  const ComplexVector start = p;
  for (int t = 0; t < 100; ++t) adamax_step(opt, p, ComplexVector::Zero(3), {});
  EXPECT_EQ(p, start);
}

TEST(Adamax, OddInTheGradient) {
  Rng rng(60);
  std::normal_distribution<double> n01;
  OptimizerState o1(4), o2(4);
  ComplexVector p1 = ComplexVector::Zero(4), p2 = ComplexVector::Zero(4);
  for (int t = 0; t < 30; ++t) {
    ComplexVector g(4);
    for (Index k = 0; k < 4; ++k) {
      const double re = n01(rng);
      g(k) = Complex(re, n01(rng));
    }
    adamax_step(o1, p1, g, {});
    adamax_step(o2, p2, -g, {});
  }
  EXPECT_EQ(p1, -p2);
}

TEST(Adamax, DimensionMismatchIsStructural) {
  OptimizerState opt(2);
  ComplexVector p = ComplexVector::Zero(2);
  EXPECT_THROW(adamax_step(opt, p, ComplexVector::Zero(3), {}), StructuralError);
}

TEST(Learner, PlusStateToZero) {
  // H|+> = |0> is reachable by driving a_0 to large negative values.
  const RbmState s(1, 1);
  LearnerConfig lcfg;
  lcfg.target_infidelity = 1e-6;
  lcfg.seed = 5;
  const auto [learned, report] = learn_hadamard(s, 0, lcfg, enumerate());
  const ComplexVector want = ComplexVector::Unit(2, 0);
  EXPECT_GE(exact_overlap(direct_vector(learned), want), 0.9999);
  EXPECT_GE(report.final_overlap, 0.9999);
}

TEST(Learner, AcceptAnythingStopsAtFirstCheck) {
  Rng rng(61);
  const RbmState s = random_state(3, 3, rng);
  LearnerConfig lcfg;
  lcfg.target_infidelity = 1.0;
  lcfg.init_noise_sigma = 0.0;
  const auto [learned, report] = learn_hadamard(s, 1, lcfg, markov(6, 4, 64));
  EXPECT_EQ(report.iterations_run, 0);
  ASSERT_EQ(report.trace.size(), 1u);
  EXPECT_EQ(report.trace[0].iteration, 0);
  EXPECT_EQ(learned, s);
}

TEST(Learner, DeterministicGivenSeed) {
  Rng rng(62);
  const RbmState s = random_state(4, 4, rng);
  LearnerConfig lcfg;
  lcfg.n_iterations = 30;
  lcfg.samples_per_iteration = 512;
  lcfg.overlap_check_interval = 10;
  lcfg.seed = 9;
  const auto a = learn_hadamard(s, 2, lcfg, markov(7, 8, 64));
  const auto b = learn_hadamard(s, 2, lcfg, markov(7, 8, 64));
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second.final_overlap, b.second.final_overlap);
  ASSERT_EQ(a.second.trace.size(), b.second.trace.size());
  for (std::size_t i = 0; i < a.second.trace.size(); ++i) {
    EXPECT_EQ(a.second.trace[i].overlap, b.second.trace[i].overlap);
  }
}

TEST(Learner, ImprovesHadamardOverlapOnSixQubits) {
  Rng rng(63);
  const RbmState s = random_state(6, 6, rng, 0.3);
  LearnerConfig lcfg;
  lcfg.n_iterations = 200;
  lcfg.seed = 10;
  const auto [learned, report] = learn_hadamard(s, 2, lcfg, markov(11));
  const ComplexVector want = dense_gate(GateOp::h(2), 6) * direct_vector(s);
  const double before = exact_overlap(direct_vector(s), want);
  const double after = exact_overlap(direct_vector(learned), want);
  EXPECT_GT(after, before);
  EXPECT_GT(after, 0.98) << "before " << before;
  for (const OverlapTracePoint &p : report.trace) {
    EXPECT_GE(p.overlap, 0.0);
    EXPECT_LE(p.overlap, 1.0 + 3.0 * p.std_error + 1e-12);
  }
}

TEST(Learner, ExhaustedReinitializationsRaiseLearnerError) {
  RbmState plus(1, 0), minus(1, 0);
  minus.visible_bias()(0) = Complex(0.0, std::numbers::pi);
  LearnerConfig lcfg;
  lcfg.init_noise_sigma = 0.0;
  lcfg.max_reinitializations = 1;
  EXPECT_THROW(learn_target(minus, RbmTarget(plus), lcfg, enumerate()), LearnerError);
}

TEST(Learner, ConfigValidation) {
  const RbmState s(2, 1);
  LearnerConfig lcfg;
  lcfg.learning_rate = 0.0;
  EXPECT_THROW(learn_hadamard(s, 0, lcfg, enumerate()), ConfigError);
  lcfg = LearnerConfig{};
  lcfg.overlap_check_interval = 0;
  EXPECT_THROW(learn_hadamard(s, 0, lcfg, enumerate()), ConfigError);
  EXPECT_THROW(learn_hadamard(s, 2, LearnerConfig{}, enumerate()), StructuralError);
}

}  // namespace
}  // namespace nqs
