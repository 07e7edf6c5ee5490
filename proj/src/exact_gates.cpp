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

#include "nqs/exact_gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nqs {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit(const RbmState &state, Index q) {
  if (q < 0 || q >= state.n_visible()) {
    throw StructuralError("qubit index " + std::to_string(q) +
                          " out of range for " + std::to_string(state.n_visible()) +
                          " qubits");
  }
}

// Shared by X and Y: B_l -> 1 - B_l moves W_lk B_l into the hidden bias.
RbmState flip_visible(const RbmState &state, Index qubit) {
  check_qubit(state, qubit);
  RbmState out = state;
  out.hidden_bias() += state.weights().row(qubit).transpose();
  out.weights().row(qubit) = -state.weights().row(qubit);
  out.visible_bias()(qubit) = -state.visible_bias()(qubit);
  return out;
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RZ: return "RZ";
    case GateKind::CRZ: return "CRZ";
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
  }
  return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
  for (GateKind k : {GateKind::RZ, GateKind::CRZ, GateKind::H, GateKind::X,
                     GateKind::Y, GateKind::Z}) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

void GateOp::validate(Index n_qubits) const {
  for (int i = 0; i < arity(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= n_qubits) {
      throw StructuralError(to_string() + ": qubit " + std::to_string(qubits[i]) +
                            " out of range for " + std::to_string(n_qubits) +
                            " qubits");
    }
  }
  if (arity() == 2 && qubits[0] == qubits[1]) {
    throw StructuralError(to_string() + ": control and target must differ");
  }
  if (has_angle() && !std::isfinite(angle)) {
    throw StructuralError(to_string() + ": angle is not finite");
  }
}

std::string GateOp::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << gate_name(kind) << ' ' << qubits[0];
  if (arity() == 2) os << ' ' << qubits[1];
  if (has_angle()) os << ' ' << angle;
  return os.str();
}

CrzParameters crz_parameters(double phi) {
  const Complex a = std::acosh(std::exp(-kI * (phi / 2.0)));
  return {-2.0 * a, 2.0 * a, kI * (phi / 2.0) + a, kI * (phi / 2.0) - a};
}

RbmState apply_rz(const RbmState &state, Index qubit, double phi) {
  check_qubit(state, qubit);
  RbmState out = state;
  out.visible_bias()(qubit) += kI * phi;
  return out;
}

RbmState apply_crz(const RbmState &state, Index control, Index target, double phi) {
  GateOp::crz(control, target, phi).validate(state.n_visible());
  return apply_crz(state, control, target, crz_parameters(phi));
}

RbmState apply_crz(const RbmState &state, Index control, Index target,
                   const CrzParameters &p) {
  GateOp::crz(control, target, 0.0).validate(state.n_visible());
  const std::pair<Index, Complex> couplings[] = {{control, p.weight_control},
                                                 {target, p.weight_target}};
  RbmState out = add_hidden_unit(state, couplings);
  out.visible_bias()(control) += p.bias_shift_control;
  out.visible_bias()(target) += p.bias_shift_target;
  return out;
}

RbmState apply_pauli_x(const RbmState &state, Index qubit) {
  return flip_visible(state, qubit);
}

RbmState apply_pauli_y(const RbmState &state, Index qubit) {
  RbmState out = flip_visible(state, qubit);
  out.visible_bias()(qubit) += kI * std::numbers::pi;
  return out;
}

RbmState apply_pauli_z(const RbmState &state, Index qubit) {
  check_qubit(state, qubit);
  RbmState out = state;
  out.visible_bias()(qubit) += kI * std::numbers::pi;
  return out;
}

RbmState apply_exact(const RbmState &state, const GateOp &gate) {
  gate.validate(state.n_visible());
  switch (gate.kind) {
    case GateKind::RZ: return apply_rz(state, gate.qubits[0], gate.angle);
    case GateKind::CRZ: return apply_crz(state, gate.qubits[0], gate.qubits[1], gate.angle);
    case GateKind::X: return apply_pauli_x(state, gate.qubits[0]);
    case GateKind::Y: return apply_pauli_y(state, gate.qubits[0]);
    case GateKind::Z: return apply_pauli_z(state, gate.qubits[0]);
    case GateKind::H: break;
  }
  throw StructuralError("H has no exact RBM update; use the gate learner");
}

}  // namespace nqs
