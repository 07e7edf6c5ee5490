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

#include "nqs/circuits.hpp"
#include "nqs/oracle.hpp"
#include "nqs/verify.hpp"
#include "test_support.hpp"

namespace nqs {
namespace {

using testing::dense_gate;
using testing::direct_vector;

double exact_overlap(const ComplexVector &u, const ComplexVector &v) {
  return std::abs(u.dot(v)) / (u.norm() * v.norm());
}

SamplerConfig enumerate() {
  SamplerConfig cfg;
  cfg.mode = SampleMode::Enumerate;
  return cfg;
}

TEST(Builders, HadamardTransform) {
  EXPECT_EQ(build_hadamard_transform(1).gates, std::vector<GateOp>{GateOp::h(0)});
  const Circuit c = build_hadamard_transform(3);
  EXPECT_EQ(c.gates, (std::vector<GateOp>{GateOp::h(0), GateOp::h(1), GateOp::h(2)}));
  const Circuit big = build_hadamard_transform(20);
  ASSERT_EQ(big.gates.size(), 20u);
  for (const GateOp &g : big.gates) EXPECT_EQ(g.kind, GateKind::H);
  EXPECT_THROW(build_hadamard_transform(0), StructuralError);
}

TEST(Builders, TruncatedFourier) {
  const double a = std::numbers::pi / 2, b = std::numbers::pi / 4;
  EXPECT_EQ(build_truncated_fourier(1).gates, std::vector<GateOp>{GateOp::h(0)});
  EXPECT_EQ(build_truncated_fourier(2).gates,
            (std::vector<GateOp>{GateOp::h(0), GateOp::crz(0, 1, a), GateOp::h(1)}));
  EXPECT_EQ(build_truncated_fourier(4).gates,
            (std::vector<GateOp>{GateOp::h(0), GateOp::crz(0, 1, a), GateOp::crz(0, 2, b),
                                 GateOp::h(1), GateOp::crz(1, 2, a), GateOp::crz(1, 3, b),
                                 GateOp::h(2), GateOp::crz(2, 3, a), GateOp::h(3)}));
  EXPECT_EQ(build_truncated_fourier(12).gates.size(), 12u + 11u + 10u);
}

TEST(TextFormat, ParsesCommentsAndInfersWidth) {
  const Circuit c = parse_circuit("# header\nH 0\n\nCRZ 0 3 0.5  # trailing\nRZ 2 -1e-3\nY 1\n");
  EXPECT_EQ(c.n_qubits, 4);
  EXPECT_EQ(c.gates, (std::vector<GateOp>{GateOp::h(0), GateOp::crz(0, 3, 0.5),
                                          GateOp::rz(2, -1e-3), GateOp::y(1)}));
  EXPECT_EQ(parse_circuit("X 0\n", 5).n_qubits, 5);
}

TEST(TextFormat, RoundTripIsLossless) {
  Rng rng(71);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  Circuit c = build_truncated_fourier(6);
  c.gates.push_back(GateOp::rz(3, angle(rng)));
  c.gates.push_back(GateOp::crz(5, 1, angle(rng)));
  c.gates.push_back(GateOp::x(2));
  c.gates.push_back(GateOp::z(4));
  c.gates.push_back(GateOp::rz(0, 0.1 + 0.2));
  EXPECT_EQ(parse_circuit(circuit_to_text(c), c.n_qubits), c);
}

void expect_parse_error(const std::string &text, const std::string &fragment) {
  try {
    parse_circuit(text);
    FAIL() << "no error for: " << text;
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(TextFormat, ErrorsCarryLineNumbers) {
  expect_parse_error("H 0\nFOO 1\n", "line 2");
  expect_parse_error("H 0\nH 1\nRZ 0\n", "line 3");
  expect_parse_error("RZ 0 abc\n", "line 1");
  expect_parse_error("H -1\n", "line 1");
  expect_parse_error("H 0 0.5\n", "line 1");
  expect_parse_error("CRZ 1\n", "line 1");
  expect_parse_error("H 0\nCRZ 0 0.25\n", "line 2");
  expect_parse_error("X 1.5\n", "line 1");
  EXPECT_THROW(parse_circuit("CRZ 1 1 0.3\n"), StructuralError);
  EXPECT_THROW(parse_circuit("H 4\n", 3), StructuralError);
  EXPECT_THROW(load_circuit("/nonexistent/c.txt"), IoError);
}

TEST(Execute, EmptyCircuitLeavesStateUnchanged) {
  Rng rng(72);
  const RbmState s = random_state(3, 2, rng);
  const ExecutionResult r = execute(Circuit{3, {}}, s, LearnerConfig{}, SamplerConfig{});
  EXPECT_EQ(r.state, s);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_FALSE(r.failure.has_value());
}

TEST(Execute, SingleRzMatchesOracle) {
  Rng rng(73);
  const RbmState s = random_state(4, 4, rng);
  const ExecutionResult r = execute(parse_circuit("RZ 2 0.3\n", 4), s, {}, {});
  const ComplexVector want = dense_gate(GateOp::rz(2, 0.3), 4) * direct_vector(s);
  EXPECT_LT(mismatch_up_to_scalar(direct_vector(r.state), want), 1e-10);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].method, GateMethod::Exact);
  EXPECT_FALSE(r.trace[0].overlap_estimate.has_value());
}

TEST(Execute, ExactOnlyCircuitsAreExact) {
  Rng rng(74);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (Index n : {2, 5, 8, 10}) {
    const RbmState s = random_state(n, n, rng, 0.3);
    Circuit c{n, {}};
    for (int k = 0; k < 3 * n; ++k) {
      const Index q = static_cast<Index>(rng() % n);
      const Index t = (q + 1 + static_cast<Index>(rng() % (n - 1))) % n;
      switch (k % 5) {
        case 0: c.gates.push_back(GateOp::rz(q, angle(rng))); break;
        case 1: c.gates.push_back(GateOp::crz(q, t, angle(rng))); break;
        case 2: c.gates.push_back(GateOp::x(q)); break;
        case 3: c.gates.push_back(GateOp::y(q)); break;
        default: c.gates.push_back(GateOp::z(q)); break;
      }
    }
    const ExecutionResult r = execute(c, s, {}, {});
    StateVector want = expand_rbm(s);
    apply_circuit_exact(want, c);
    EXPECT_NEAR(overlap_exact(expand_rbm(r.state), want), 1.0, 1e-10) << "N=" << n;
  }
}

TEST(Execute, HadamardTwiceReturnsToStart) {
  Rng rng(75);
  const RbmState s = random_state(6, 6, rng, 0.3);
  LearnerConfig lcfg;
  lcfg.seed = 3;
  lcfg.target_infidelity = 1e-4;
  SamplerConfig scfg;
  scfg.seed = 4;
  const ExecutionResult r = execute(parse_circuit("H 0\nH 0\n", 6), s, lcfg, scfg);
  ASSERT_FALSE(r.failure.has_value());
  EXPECT_GT(exact_overlap(direct_vector(r.state), direct_vector(s)), 0.99);
  ASSERT_EQ(r.trace.size(), 2u);
  for (const GateRecord &g : r.trace) {
    EXPECT_EQ(g.method, GateMethod::Learned);
    EXPECT_TRUE(g.overlap_estimate.has_value());
  }
}

TEST(Execute, HadamardTransformOfProductStateIsUniform) {
  for (Index n : {2, 4, 6, 8}) {
    RbmState s(n, n);
    for (Index j = 0; j < n; ++j) s.visible_bias()(j) = Complex(-6.0, 0.0);
    LearnerConfig lcfg;
    lcfg.seed = 6;
    lcfg.target_infidelity = 1e-4;
    const ExecutionResult r = execute(build_hadamard_transform(n), s, lcfg, enumerate());
    ASSERT_FALSE(r.failure.has_value());
    const StateVector v = expand_rbm(r.state);
    const double uniform = 1.0 / std::sqrt(double(v.dim()));
    for (std::uint64_t i = 0; i < v.dim(); ++i) {
      EXPECT_NEAR(std::abs(v[i]) / uniform, 1.0, 0.1) << "N=" << n << " index " << i;
    }
  }
}

TEST(Execute, LearnedGateSeedsDependOnIndex) {
  Rng rng(76);
  const RbmState s = random_state(4, 4, rng);
  LearnerConfig lcfg;
  lcfg.n_iterations = 20;
  lcfg.samples_per_iteration = 256;
  SamplerConfig scfg;
  scfg.n_chains = 4;
  scfg.samples_per_chain = 32;
  const ExecutionResult a = execute(parse_circuit("H 1\nX 0\nH 2\n", 4), s, lcfg, scfg);
  const ExecutionResult b = execute(parse_circuit("H 1\nX 0\nH 2\n", 4), s, lcfg, scfg);
  EXPECT_EQ(a.state, b.state);
  ASSERT_EQ(a.trace.size(), 3u);
  EXPECT_EQ(a.trace[1].method, GateMethod::Exact);
  EXPECT_EQ(a.trace[2].gate_index, 2);
}

TEST(Execute, RejectsWiderCircuit) {
  EXPECT_THROW(execute(build_hadamard_transform(3), RbmState(2, 1), {}, {}), StructuralError);
}

}  // namespace
}  // namespace nqs
