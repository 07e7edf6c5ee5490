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

#include "nqs/exact_gates.hpp"
#include "nqs/verify.hpp"
#include "test_support.hpp"

namespace nqs {
namespace {

using testing::dense_gate;
using testing::direct_vector;

// Gate applied to the RBM must equal the dense gate applied to the vector,
// up to one global complex scalar.
void expect_gate_matches(const RbmState &s, const GateOp &g) {
  const ComplexVector want = dense_gate(g, s.n_visible()) * direct_vector(s);
  const ComplexVector got = direct_vector(apply_exact(s, g));
  EXPECT_LT(mismatch_up_to_scalar(got, want), 1e-10) << g.to_string();
}

TEST(ExactGates, RandomStatesMatchDenseMatrices) {
  Rng rng(31);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 5;
    const RbmState s = random_state(n, n + 1, rng);
    const Index q = static_cast<Index>(rng() % n);
    const Index t = (q + 1 + static_cast<Index>(rng() % (n - 1))) % n;
    for (const GateOp &g : {GateOp::rz(q, angle(rng)), GateOp::crz(q, t, angle(rng)),
                            GateOp::x(q), GateOp::y(q), GateOp::z(q)}) {
      expect_gate_matches(s, g);
    }
  }
}

TEST(ExactGates, CrzAtPiOnAllAssignments) {
  const CrzParameters p = crz_parameters(std::numbers::pi);
  EXPECT_LT(crz_assignment_error(std::numbers::pi, p), 1e-12);
  Complex f[2][2];
  for (int bl = 0; bl < 2; ++bl) {
    for (int bm = 0; bm < 2; ++bm) {
      f[bl][bm] = std::exp(p.bias_shift_control * double(bl) + p.bias_shift_target * double(bm)) *
                  (1.0 + std::exp(p.weight_control * double(bl) + p.weight_target * double(bm)));
    }
  }
  EXPECT_LT(std::abs(f[1][0] / f[0][0] - 1.0), 1e-12);
  EXPECT_LT(std::abs(f[0][1] / f[0][0] - 1.0), 1e-12);
  EXPECT_LT(std::abs(f[1][1] / f[0][0] + 1.0), 1e-12);
}

TEST(ExactGates, CrzAtZeroIsUniformDoubling) {
  const CrzParameters p = crz_parameters(0.0);
  EXPECT_EQ(p.weight_control, Complex(0.0, 0.0));
  EXPECT_EQ(p.weight_target, Complex(0.0, 0.0));
  Rng rng(33);
  const RbmState s = random_state(3, 2, rng);
  const ComplexVector before = direct_vector(s);
  const ComplexVector after = direct_vector(apply_crz(s, 0, 1, 0.0));
  for (Index i = 0; i < 8; ++i) EXPECT_LT(std::abs(after(i) / before(i) - 2.0), 1e-12);
}

TEST(ExactGates, CrzAssignmentsAcrossAngles) {
  for (double phi : {-3.0, -1.0, -1e-6, 0.0, 1e-6, 0.5, std::numbers::pi / 4, 2.0, 3.1}) {
    EXPECT_LT(crz_assignment_error(phi, crz_parameters(phi)), 1e-12) << phi;
  }
}

TEST(ExactGates, CrzAddsOneHiddenUnitRzAddsNone) {
  const RbmState s(3, 2);
  EXPECT_EQ(apply_crz(s, 0, 2, 0.3).n_hidden(), 3);
  EXPECT_EQ(apply_rz(s, 1, 0.3).n_hidden(), 2);
  EXPECT_EQ(apply_pauli_x(s, 1).n_hidden(), 2);
}

TEST(ExactGates, PauliYOnPinnedZero) {
  // a_0 = -40 pins the qubit to |0>; Y|0> = i|1>.
  RbmState s(1, 0);
  s.visible_bias()(0) = Complex(-40.0, 0.0);
  const ComplexVector v = direct_vector(apply_pauli_y(s, 0));
  EXPECT_LT(std::abs(v(0)) / std::abs(v(1)), 1e-15);
  const ComplexVector want = ComplexVector::Unit(2, 1) * Complex(0.0, 1.0);
  EXPECT_NEAR(std::abs(want.dot(v)) / v.norm(), 1.0, 1e-12);
}

TEST(ExactGates, PauliYRelativePhase) {
  // (alpha, beta) -> (-i beta, i alpha): component ratio -beta / alpha.
  RbmState s(1, 0);
  s.visible_bias()(0) = Complex(0.3, 0.7);
  const ComplexVector before = direct_vector(s);
  const ComplexVector after = direct_vector(apply_pauli_y(s, 0));
  EXPECT_LT(std::abs(after(0) / after(1) + before(1) / before(0)), 1e-12);
}

TEST(ExactGates, PauliXTwiceIsIdentity) {
  Rng rng(32);
  const RbmState s = random_state(4, 3, rng);
  const RbmState t = apply_pauli_x(apply_pauli_x(s, 2), 2);
  EXPECT_LT(mismatch_up_to_scalar(direct_vector(t), direct_vector(s)), 1e-12);
}

TEST(ExactGates, ValidationRejectsBadOperands) {
  const RbmState s(3, 1);
  EXPECT_THROW(apply_exact(s, GateOp::rz(3, 0.1)), StructuralError);
  EXPECT_THROW(apply_exact(s, GateOp::crz(1, 1, 0.1)), StructuralError);
  EXPECT_THROW(apply_exact(s, GateOp::rz(0, std::nan(""))), StructuralError);
  EXPECT_THROW(apply_exact(s, GateOp::h(0)), StructuralError);
}

TEST(ExactGates, NamesRoundTrip) {
  for (GateKind k : {GateKind::RZ, GateKind::CRZ, GateKind::H, GateKind::X, GateKind::Y,
                     GateKind::Z}) {
    EXPECT_EQ(parse_gate_kind(gate_name(k)), k);
  }
  EXPECT_FALSE(parse_gate_kind("CNOT").has_value());
}

}  // namespace
}  // namespace nqs
