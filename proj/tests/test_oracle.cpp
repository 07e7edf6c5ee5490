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
#include <fstream>
#include <numbers>

#include "nqs/oracle.hpp"
#include "nqs/verify.hpp"
#include "test_support.hpp"

namespace nqs {
namespace {

using testing::dense_gate;
using testing::direct_vector;

StateVector random_vector(Index n, Rng &rng) {
  std::normal_distribution<double> g;
  ComplexVector v(Index{1} << n);
  for (Index i = 0; i < v.size(); ++i) {
    const double re = g(rng);
    v(i) = Complex(re, g(rng));
  }
  StateVector s(n, v);
  s.normalize();
  return s;
}

TEST(Expand, ZeroParametersGiveEqualWeights) {
  const StateVector v = expand_rbm(RbmState(1, 1));
  EXPECT_NEAR(std::abs(v[0] - Complex(M_SQRT1_2, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v[1] - Complex(M_SQRT1_2, 0.0)), 0.0, 1e-15);
}

TEST(Expand, PinnedQubitIsZeroState) {
  RbmState s(1, 0);
  s.visible_bias()(0) = Complex(-40.0, 0.0);
  const StateVector v = expand_rbm(s);
  EXPECT_NEAR(std::abs(v[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(v[1]), std::exp(-40.0), 1e-30);
}

TEST(Expand, NormalizedWithCorrectRatios) {
  Rng rng(81);
  const RbmState s = random_state(6, 6, rng);
  const StateVector v = expand_rbm(s);
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  const ComplexVector d = direct_vector(s);
  for (Index i = 1; i < 64; ++i) {
    const Complex want = d(i) / d(0), got = v[i] / v[0];
    EXPECT_LT(std::abs(got - want) / std::abs(want), 1e-10);
  }
}

TEST(Expand, SurvivesHugeAmplitudes) {
  RbmState s(3, 1);
  s.visible_bias() << Complex(800.0, 0.1), Complex(-5.0, 0.0), Complex(1.0, 2.0);
  s.hidden_bias()(0) = Complex(900.0, 0.0);
  const StateVector v = expand_rbm(s);
  EXPECT_TRUE(v.amplitudes().allFinite());
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
}

TEST(Expand, RespectsLimit) {
  EXPECT_THROW(expand_rbm(RbmState(6, 0), 5), LimitError);
}

TEST(Gates, LittleEndianFixture) {
  // X on qubit 0 maps index 0 (|q1 q0> = |00>) to index 1.
  StateVector v = StateVector::basis_state(2, 0);
  apply_gate_exact(v, GateOp::x(0));
  EXPECT_EQ(v[1], Complex(1.0, 0.0));
  apply_gate_exact(v, GateOp::x(1));
  EXPECT_EQ(v[3], Complex(1.0, 0.0));
}

TEST(Gates, RzPiIsZUpToPhase) {
  Rng rng(82);
  const StateVector v = random_vector(3, rng);
  const StateVector a = apply_gate_exact(v, GateOp::rz(1, std::numbers::pi));
  const StateVector b = apply_gate_exact(v, GateOp::z(1));
  EXPECT_LT(mismatch_up_to_scalar(a.amplitudes(), b.amplitudes()), 1e-14);
}

TEST(Gates, CrzOnlyPhasesElevenState) {
  const double phi = 0.7;
  for (std::uint64_t i = 0; i < 4; ++i) {
    StateVector v = StateVector::basis_state(2, i);
    apply_gate_exact(v, GateOp::crz(0, 1, phi));
    const Complex want = i == 3 ? std::polar(1.0, phi) : Complex(1.0, 0.0);
    EXPECT_LT(std::abs(v[i] - want), 1e-15) << i;
  }
}

TEST(Gates, HadamardTwiceIsIdentity) {
  Rng rng(83);
  const StateVector v = random_vector(3, rng);
  const StateVector w = apply_gate_exact(apply_gate_exact(v, GateOp::h(1)), GateOp::h(1));
  EXPECT_LT((w.amplitudes() - v.amplitudes()).norm() / v.norm(), 1e-14);
}

TEST(Gates, MatchDenseMatricesAndPreserveNorm) {
  Rng rng(84);
  const StateVector v = random_vector(4, rng);
  for (const GateOp &g : {GateOp::h(2), GateOp::x(0), GateOp::y(3), GateOp::z(1),
                          GateOp::rz(2, -0.4), GateOp::crz(3, 0, 1.9), GateOp::crz(1, 2, -2.5)}) {
    const StateVector w = apply_gate_exact(v, g);
    EXPECT_LT((w.amplitudes() - dense_gate(g, 4) * v.amplitudes()).norm(), 1e-14) << g.to_string();
    EXPECT_NEAR(w.norm(), 1.0, 1e-12);
  }
  for (int p = 0; p < 4; ++p) {
    StateVector w = v;
    apply_pauli(w, 2, p);
    EXPECT_NEAR(w.norm(), 1.0, 1e-12);
  }
}

TEST(Gates, RbmUpdatesCommuteWithExpansion) {
  Rng rng(85);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (Index n : {2, 6, 10}) {
    const RbmState s = random_state(n, n, rng, 0.3);
    for (const GateOp &g : {GateOp::rz(n - 1, angle(rng)), GateOp::crz(0, n - 1, angle(rng)),
                            GateOp::x(1), GateOp::y(0), GateOp::z(n / 2)}) {
      const StateVector want = apply_gate_exact(expand_rbm(s), g);
      const StateVector got = expand_rbm(apply_exact(s, g));
      EXPECT_LT(mismatch_up_to_scalar(got.amplitudes(), want.amplitudes()), 1e-10)
          << "N=" << n << " " << g.to_string();
    }
  }
}

TEST(ExactOverlap, Examples) {
  Rng rng(86);
  const StateVector v = random_vector(2, rng);
  EXPECT_NEAR(overlap_exact(v, v), 1.0, 1e-15);
  EXPECT_EQ(overlap_exact(StateVector::basis_state(2, 1), StateVector::basis_state(2, 2)), 0.0);
  StateVector plus = StateVector::basis_state(1, 0);
  apply_gate_exact(plus, GateOp::h(0));
  EXPECT_NEAR(overlap_exact(StateVector::basis_state(1, 0), plus), M_SQRT1_2, 1e-15);
}

TEST(Noise, ZeroRateIsExact) {
  Rng rng(87);
  const StateVector v = random_vector(4, rng);
  const OverlapEstimate est =
      noisy_transform_overlap(v, build_hadamard_transform(4), {0.0, 50, 1});
  EXPECT_EQ(est.value, 1.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(Noise, CertainErrorMatchesThreeBranches) {
  Rng rng(88);
  const StateVector v = random_vector(2, rng);
  const Circuit c = parse_circuit("H 1\n", 2);
  const StateVector exact = apply_gate_exact(v, GateOp::h(1));
  double want = 0.0;
  for (int p = 1; p <= 3; ++p) {
    StateVector w = exact;
    apply_pauli(w, 1, p);
    want += overlap_exact(exact, w) / 3.0;
  }
  const OverlapEstimate est = noisy_transform_overlap(v, c, {1.0, 20000, 2});
  EXPECT_LT(std::abs(est.value - want), 4.0 * est.std_error) << est.value << " vs " << want;
}

TEST(Noise, TwoQubitChannelUsesFifteenPaulis) {
  Rng rng(89);
  const StateVector v = random_vector(3, rng);
  const Circuit c = parse_circuit("CRZ 0 2 0.8\n", 3);
  const StateVector exact = apply_gate_exact(v, c.gates[0]);
  double want = 0.0;
  for (int p = 1; p < 16; ++p) {
    StateVector w = exact;
    apply_pauli(w, 0, p % 4);
    apply_pauli(w, 2, p / 4);
    want += overlap_exact(exact, w) / 15.0;
  }
  const OverlapEstimate est = noisy_transform_overlap(v, c, {1.0, 20000, 3});
  EXPECT_LT(std::abs(est.value - want), 4.0 * est.std_error) << est.value << " vs " << want;
}

TEST(Noise, ReproducibleAndMonotone) {
  Rng rng(90);
  const StateVector v = random_vector(6, rng);
  const Circuit c = build_truncated_fourier(6);
  const OverlapEstimate a = noisy_transform_overlap(v, c, {0.05, 300, 4});
  const OverlapEstimate b = noisy_transform_overlap(v, c, {0.05, 300, 4});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  const OverlapEstimate low = noisy_transform_overlap(v, c, {0.01, 300, 4});
  const OverlapEstimate high = noisy_transform_overlap(v, c, {0.2, 300, 4});
  EXPECT_GT(low.value, a.value);
  EXPECT_GT(a.value, high.value);
}

TEST(Noise, RateOutOfRangeIsRejected) {
  const StateVector v = StateVector::basis_state(1, 0);
  EXPECT_THROW(noisy_transform_overlap(v, build_hadamard_transform(1), {1.5, 10, 0}), ConfigError);
  EXPECT_THROW(noisy_transform_overlap(v, build_hadamard_transform(1), {0.1, 0, 0}), ConfigError);
}

TEST(Dump, RoundTripIsBitExact) {
  Rng rng(91);
  const StateVector v = random_vector(5, rng);
  const auto path = (testing::scratch_dir("dump") / "v.bin").string();
  dump_statevector(path, v);
  const StateVector w = load_statevector(path);
  EXPECT_EQ(w.n_qubits(), 5);
  EXPECT_EQ(w.amplitudes(), v.amplitudes());
  EXPECT_EQ(std::filesystem::file_size(path), 8u + 32u * 16u);
}

TEST(Dump, BadFilesAreRejected) {
  const auto dir = testing::scratch_dir("dump_bad");
  std::ofstream(dir / "magic.bin") << "XXXX0000";
  EXPECT_THROW(load_statevector((dir / "magic.bin").string()), Error);
  const StateVector v = StateVector::basis_state(3, 2);
  dump_statevector((dir / "t.bin").string(), v);
  std::filesystem::resize_file(dir / "t.bin", 20);
  EXPECT_THROW(load_statevector((dir / "t.bin").string()), Error);
  EXPECT_THROW(load_statevector((dir / "missing.bin").string()), IoError);
}

TEST(StateVectorTarget, SamplesFollowTheVector) {
  ComplexVector amps(4);
  amps << Complex(0.5, 0), Complex(0, 0), Complex(0, 0.5), Complex(std::sqrt(0.5), 0);
  const StateVectorTarget t(StateVector(2, amps));
  EXPECT_TRUE(is_zero_amplitude(t.log_amplitude(BitString::from_index(1, 2))));
  SamplerConfig cfg;
  cfg.samples_per_chain = 2000;
  const SampleBatch batch = t.draw(cfg);
  std::vector<double> counts(4, 0.0);
  for (const BitString &b : batch.bitstrings) counts[b.to_index()] += 1.0;
  EXPECT_EQ(counts[1], 0.0);
  EXPECT_NEAR(counts[3] / batch.size(), 0.5, 0.02);
  EXPECT_NEAR(counts[0] / batch.size(), 0.25, 0.02);
}

TEST(StateVector, RejectsWrongLength) {
  EXPECT_THROW(StateVector(3, ComplexVector::Zero(7)), StructuralError);
}

}  // namespace
}  // namespace nqs
