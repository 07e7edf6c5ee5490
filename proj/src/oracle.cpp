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

#include "nqs/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>

#include "nqs/parallel.hpp"
#include "nqs/random.hpp"

namespace nqs {

static_assert(std::endian::native == std::endian::little,
              "statevector dumps assume a little-endian host");

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr Complex kI{0.0, 1.0};

void check_qubit(const StateVector &v, Index q) {
  if (q < 0 || q >= v.n_qubits()) {
    throw StructuralError("qubit " + std::to_string(q) + " out of range for " +
                          std::to_string(v.n_qubits()) + " qubits");
  }
}

// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to qubit q.
void apply_single(StateVector &v, Index q, Complex m00, Complex m01, Complex m10,
                  Complex m11) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  ComplexVector &a = v.amplitudes();
  for (std::uint64_t i = 0; i < v.dim(); ++i) {
    if (i & bit) continue;
    const Complex x0 = a(static_cast<Index>(i));
    const Complex x1 = a(static_cast<Index>(i | bit));
    a(static_cast<Index>(i)) = m00 * x0 + m01 * x1;
    a(static_cast<Index>(i | bit)) = m10 * x0 + m11 * x1;
  }
}

void apply_phase_where(StateVector &v, std::uint64_t mask, Complex phase) {
  ComplexVector &a = v.amplitudes();
  for (std::uint64_t i = 0; i < v.dim(); ++i) {
    if ((i & mask) == mask) a(static_cast<Index>(i)) *= phase;
  }
}

}  // namespace

StateVector::StateVector(Index n_qubits, ComplexVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits_ < 1 || n_qubits_ > 30) {
    throw StructuralError("statevector qubit count " + std::to_string(n_qubits_) +
                          " out of range");
  }
  if (static_cast<std::uint64_t>(amplitudes_.size()) != dim()) {
    throw StructuralError("statevector length " + std::to_string(amplitudes_.size()) +
                          " is not 2^" + std::to_string(n_qubits_));
  }
}

StateVector StateVector::basis_state(Index n_qubits, std::uint64_t index) {
  ComplexVector a = ComplexVector::Zero(static_cast<Index>(std::uint64_t{1} << n_qubits));
  a(static_cast<Index>(index)) = 1.0;
  return StateVector(n_qubits, std::move(a));
}

void StateVector::normalize() {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericError("cannot normalize statevector");
  amplitudes_ /= n;
}

StateVector expand_rbm(const RbmState &state, Index max_qubits) {
  const Index n = state.n_visible();
  if (n > max_qubits) {
    throw LimitError("expanding " + std::to_string(n) + " qubits exceeds the oracle limit of " +
                     std::to_string(max_qubits));
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<Complex> logs(dim);
  ThetaTable table(state, BitString(n));
  Complex visible{0.0, 0.0};
  double max_re = kNegInf;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i > 0) {
      const Index j = std::countr_zero(i);
      visible += table.bits()[j] ? -state.visible_bias()(j) : state.visible_bias()(j);
      table.flip(state, j);
    }
    Complex l = visible;
    for (Index k = 0; k < table.theta().size(); ++k) l += log1p_exp(table.theta()(k));
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) {
      throw NumericError("non-finite log amplitude on " + table.bits().to_string());
    }
    logs[table.bits().to_index()] = l;
    max_re = std::max(max_re, l.real());
  }
  ComplexVector amps(static_cast<Index>(dim));
  for (std::uint64_t i = 0; i < dim; ++i) {
    amps(static_cast<Index>(i)) = std::exp(logs[i] - max_re);
  }
  StateVector v(n, std::move(amps));
  v.normalize();
  return v;
}

void apply_gate_exact(StateVector &v, const GateOp &gate) {
  gate.validate(v.n_qubits());
  const Index q = gate.qubits[0];
  switch (gate.kind) {
    case GateKind::H: {
      const double s = std::numbers::sqrt2 / 2.0;
      apply_single(v, q, s, s, s, -s);
      break;
    }
    case GateKind::X: apply_single(v, q, 0.0, 1.0, 1.0, 0.0); break;
    case GateKind::Y: apply_single(v, q, 0.0, -kI, kI, 0.0); break;
    case GateKind::Z: apply_phase_where(v, std::uint64_t{1} << q, -1.0); break;
    case GateKind::RZ:
      apply_phase_where(v, std::uint64_t{1} << q, std::exp(kI * gate.angle));
      break;
    case GateKind::CRZ:
      apply_phase_where(v, (std::uint64_t{1} << q) | (std::uint64_t{1} << gate.qubits[1]),
                        std::exp(kI * gate.angle));
      break;
  }
}

StateVector apply_gate_exact(const StateVector &v, const GateOp &gate) {
  StateVector out = v;
  apply_gate_exact(out, gate);
  return out;
}

void apply_circuit_exact(StateVector &v, const Circuit &circuit) {
  for (const GateOp &g : circuit.gates) apply_gate_exact(v, g);
}

void apply_pauli(StateVector &v, Index qubit, int pauli) {
  check_qubit(v, qubit);
  switch (pauli) {
    case 0: return;
    case 1: apply_gate_exact(v, GateOp::x(qubit)); return;
    case 2: apply_gate_exact(v, GateOp::y(qubit)); return;
    case 3: apply_gate_exact(v, GateOp::z(qubit)); return;
    default: throw StructuralError("Pauli index must be 0..3");
  }
}

double overlap_exact(const StateVector &u, const StateVector &v) {
  if (u.n_qubits() != v.n_qubits()) {
    throw StructuralError("overlap between statevectors of different size");
  }
  const Complex inner = u.amplitudes().dot(v.amplitudes());
  const double uu = u.amplitudes().squaredNorm();
  const double vv = v.amplitudes().squaredNorm();
  if (!(uu > 0.0) || !(vv > 0.0)) throw NumericError("overlap with a zero vector");
  return std::min(1.0, std::abs(inner) / std::sqrt(uu * vv));
}

void NoiseConfig::validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) throw ConfigError("noise rate must lie in [0, 1]");
  if (trajectories < 1) throw ConfigError("noise trajectories must be positive");
}

OverlapEstimate noisy_transform_overlap(const StateVector &initial, const Circuit &circuit,
                                        const NoiseConfig &noise) {
  noise.validate();
  for (const GateOp &g : circuit.gates) g.validate(initial.n_qubits());
  StateVector exact = initial;
  apply_circuit_exact(exact, circuit);

  std::vector<double> overlaps(static_cast<std::size_t>(noise.trajectories));
  parallel_for(overlaps.size(), [&](std::size_t t) {
    Rng rng(derive_seed(noise.seed, "noise-trajectory", t));
    StateVector v = initial;
    for (const GateOp &g : circuit.gates) {
      apply_gate_exact(v, g);
      if (noise.rate == 0.0 || !(uniform01(rng) < noise.rate)) continue;
      if (g.arity() == 1) {
        apply_pauli(v, g.qubits[0], 1 + static_cast<int>(uniform_index(rng, 3)));
      } else {
        const int pair = 1 + static_cast<int>(uniform_index(rng, 15));
        apply_pauli(v, g.qubits[0], pair / 4);
        apply_pauli(v, g.qubits[1], pair % 4);
      }
    }
    overlaps[t] = overlap_exact(exact, v);
  });

  const double n = static_cast<double>(overlaps.size());
  double mean = 0.0;
  for (double o : overlaps) mean += o;
  mean /= n;
  double var = 0.0;
  for (double o : overlaps) var += (o - mean) * (o - mean);
  OverlapEstimate est{mean, 0.0};
  if (overlaps.size() > 1) est.std_error = std::sqrt(var / (n - 1.0) / n);
  return est;
}

void dump_statevector(const std::string &path, const StateVector &v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const std::uint32_t n = static_cast<std::uint32_t>(v.n_qubits());
  out.write("NQSV", 4);
  out.write(reinterpret_cast<const char *>(&n), sizeof n);
  for (std::uint64_t i = 0; i < v.dim(); ++i) {
    const double re = v[i].real(), im = v[i].imag();
    out.write(reinterpret_cast<const char *>(&re), sizeof re);
    out.write(reinterpret_cast<const char *>(&im), sizeof im);
  }
  if (!out) throw IoError("failed writing " + path);
}

StateVector load_statevector(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[4];
  std::uint32_t n = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char *>(&n), sizeof n);
  if (!in || std::string(magic, 4) != "NQSV" || n < 1 || n > 30) {
    throw IoError(path + ": not a statevector dump");
  }
  ComplexVector a(static_cast<Index>(std::uint64_t{1} << n));
  for (Index i = 0; i < a.size(); ++i) {
    double re, im;
    in.read(reinterpret_cast<char *>(&re), sizeof re);
    in.read(reinterpret_cast<char *>(&im), sizeof im);
    a(i) = {re, im};
  }
  if (!in) throw IoError(path + ": truncated statevector dump");
  return StateVector(static_cast<Index>(n), std::move(a));
}

StateVectorTarget::StateVectorTarget(StateVector v) : v_(std::move(v)) {
  cumulative_.resize(v_.dim());
  double acc = 0.0;
  for (std::uint64_t i = 0; i < v_.dim(); ++i) {
    acc += std::norm(v_[i]);
    cumulative_[i] = acc;
  }
  if (!(acc > 0.0)) throw NumericError("target statevector is zero");
}

Complex StateVectorTarget::log_amplitude(const BitString &b) const {
  if (b.size() != v_.n_qubits()) throw StructuralError("bitstring length mismatch");
  const Complex a = v_[b.to_index()];
  if (a == Complex{0.0, 0.0}) return {kNegInf, 0.0};
  return std::log(a);
}

SampleBatch StateVectorTarget::draw(const SamplerConfig &cfg) const {
  cfg.validate();
  SampleBatch batch;
  batch.n_chains = cfg.mode == SampleMode::Enumerate ? 1 : cfg.n_chains;
  const double total = cumulative_.back();
  if (cfg.mode == SampleMode::Enumerate) {
    for (std::uint64_t i = 0; i < v_.dim(); ++i) {
      const BitString b = BitString::from_index(i, v_.n_qubits());
      batch.bitstrings.push_back(b);
      batch.log_amps.push_back(log_amplitude(b));
      batch.weights.push_back(std::norm(v_[i]) / total);
    }
    return batch;
  }
  for (Index c = 0; c < cfg.n_chains; ++c) {
    Rng rng(derive_seed(cfg.seed, "sampler-chain", static_cast<std::uint64_t>(c)));
    for (Index s = 0; s < cfg.samples_per_chain; ++s) {
      const double u = uniform01(rng) * total;
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      std::uint64_t idx = static_cast<std::uint64_t>(it - cumulative_.begin());
      if (idx >= v_.dim()) idx = v_.dim() - 1;
      while (v_[idx] == Complex{0.0, 0.0} && idx > 0) --idx;
      const BitString b = BitString::from_index(idx, v_.n_qubits());
      batch.bitstrings.push_back(b);
      batch.log_amps.push_back(log_amplitude(b));
    }
  }
  return batch;
}

}  // namespace nqs
