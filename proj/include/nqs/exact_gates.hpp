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

#ifndef NQS_EXACT_GATES_HPP
#define NQS_EXACT_GATES_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "nqs/rbm_state.hpp"

namespace nqs {

enum class GateKind { RZ, CRZ, H, X, Y, Z };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);

// One circuit element. Qubits are 0-based; CRZ uses both slots, everything
// else only qubits[0]. Angles are radians and only meaningful for RZ/CRZ.
struct GateOp {
  GateKind kind = GateKind::H;
  std::array<Index, 2> qubits{0, 0};
  double angle = 0.0;

  static GateOp rz(Index q, double phi) { return {GateKind::RZ, {q, 0}, phi}; }
  static GateOp crz(Index c, Index t, double phi) { return {GateKind::CRZ, {c, t}, phi}; }
  static GateOp h(Index q) { return {GateKind::H, {q, 0}, 0.0}; }
  static GateOp x(Index q) { return {GateKind::X, {q, 0}, 0.0}; }
  static GateOp y(Index q) { return {GateKind::Y, {q, 0}, 0.0}; }
  static GateOp z(Index q) { return {GateKind::Z, {q, 0}, 0.0}; }

  int arity() const { return kind == GateKind::CRZ ? 2 : 1; }
  bool has_angle() const { return kind == GateKind::RZ || kind == GateKind::CRZ; }
  // Diagonal and Pauli gates have closed-form RBM updates; H does not.
  bool is_exact() const { return kind != GateKind::H; }

  // Throws StructuralError unless indices are distinct, < n_qubits, and the
  // angle is finite.
  void validate(Index n_qubits) const;

  std::string to_string() const;

  friend bool operator==(const GateOp &, const GateOp &) = default;
};

// New hidden unit and visible-bias shifts realizing CRZ(phi) on (l, m):
//   W_lc = -2A, W_mc = +2A, da_l = i phi/2 + A, da_m = i phi/2 - A,
//   A = arccosh(e^{-i phi/2}) on the principal branch.
struct CrzParameters {
  Complex weight_control;
  Complex weight_target;
  Complex bias_shift_control;
  Complex bias_shift_target;
};

CrzParameters crz_parameters(double phi);

RbmState apply_rz(const RbmState &state, Index qubit, double phi);
RbmState apply_crz(const RbmState &state, Index control, Index target, double phi);
RbmState apply_crz(const RbmState &state, Index control, Index target,
                   const CrzParameters &p);
RbmState apply_pauli_x(const RbmState &state, Index qubit);
RbmState apply_pauli_y(const RbmState &state, Index qubit);
RbmState apply_pauli_z(const RbmState &state, Index qubit);

// Dispatch on gate.kind. Throws StructuralError for H.
RbmState apply_exact(const RbmState &state, const GateOp &gate);

}  // namespace nqs

#endif  // NQS_EXACT_GATES_HPP
