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

#include "nqs/rbm_state.hpp"

#include <cmath>
#include <string>

namespace nqs {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_bits(const RbmState &state, const BitString &b) {
  if (b.size() != state.n_visible()) {
    throw StructuralError("bitstring has length " + std::to_string(b.size()) +
                          ", state has " + std::to_string(state.n_visible()) +
                          " visible units");
  }
}

void check_qubit(const RbmState &state, Index l) {
  if (l < 0 || l >= state.n_visible()) {
    throw StructuralError("qubit index " + std::to_string(l) +
                          " out of range for " +
                          std::to_string(state.n_visible()) + " qubits");
  }
}

}  // namespace

RbmState::RbmState(Index n_visible, Index n_hidden)
    : RbmState(ComplexVector::Zero(n_visible), ComplexVector::Zero(n_hidden),
               ComplexMatrix::Zero(n_visible, n_hidden)) {}

RbmState::RbmState(ComplexVector visible_bias, ComplexVector hidden_bias,
                   ComplexMatrix weights)
    : visible_bias_(std::move(visible_bias)),
      hidden_bias_(std::move(hidden_bias)),
      weights_(std::move(weights)) {
  if (visible_bias_.size() < 1) throw StructuralError("n_visible must be >= 1");
  if (weights_.rows() != visible_bias_.size() ||
      weights_.cols() != hidden_bias_.size()) {
    throw StructuralError("weight matrix is " + std::to_string(weights_.rows()) +
                          "x" + std::to_string(weights_.cols()) + ", expected " +
                          std::to_string(visible_bias_.size()) + "x" +
                          std::to_string(hidden_bias_.size()));
  }
  check_finite();
}

ComplexVector RbmState::parameters() const {
  const Index n = n_visible(), m = n_hidden();
  ComplexVector p(n_params());
  p.head(n) = visible_bias_;
  p.segment(n, m) = hidden_bias_;
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < m; ++k) p(n + m + j * m + k) = weights_(j, k);
  }
  return p;
}

void RbmState::set_parameters(const ComplexVector &p) {
  if (p.size() != n_params()) {
    throw StructuralError("parameter vector has length " + std::to_string(p.size()) +
                          ", expected " + std::to_string(n_params()));
  }
  const Index n = n_visible(), m = n_hidden();
  visible_bias_ = p.head(n);
  hidden_bias_ = p.segment(n, m);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < m; ++k) weights_(j, k) = p(n + m + j * m + k);
  }
}

void RbmState::check_finite() const {
  for (Index j = 0; j < visible_bias_.size(); ++j) {
    if (!finite(visible_bias_(j))) {
      throw NumericError("visible bias a_" + std::to_string(j) + " is not finite");
    }
  }
  for (Index k = 0; k < hidden_bias_.size(); ++k) {
    if (!finite(hidden_bias_(k))) {
      throw NumericError("hidden bias b_" + std::to_string(k) + " is not finite");
    }
  }
  for (Index j = 0; j < weights_.rows(); ++j) {
    for (Index k = 0; k < weights_.cols(); ++k) {
      if (!finite(weights_(j, k))) {
        throw NumericError("weight W_" + std::to_string(j) + "," +
                           std::to_string(k) + " is not finite");
      }
    }
  }
}

bool operator==(const RbmState &x, const RbmState &y) {
  return x.visible_bias_.size() == y.visible_bias_.size() &&
         x.hidden_bias_.size() == y.hidden_bias_.size() &&
         x.visible_bias_ == y.visible_bias_ && x.hidden_bias_ == y.hidden_bias_ &&
         x.weights_ == y.weights_;
}

Complex log1p_exp(Complex z) {
  if (z.real() > 0.0) return z + std::log(1.0 + std::exp(-z));
  return std::log(1.0 + std::exp(z));
}

Complex logistic(Complex z) {
  if (z.real() >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const Complex e = std::exp(z);
  return e / (1.0 + e);
}

ComplexVector compute_theta(const RbmState &state, const BitString &b) {
  check_bits(state, b);
  ComplexVector theta = state.hidden_bias();
  for (Index j = 0; j < b.size(); ++j) {
    if (b[j]) theta += state.weights().row(j).transpose();
  }
  return theta;
}

ThetaTable::ThetaTable(const RbmState &state, BitString bits)
    : bits_(std::move(bits)), theta_(compute_theta(state, bits_)) {
  exp_theta_ = theta_.array().exp().matrix();
}

void ThetaTable::flip(const RbmState &state, Index l) {
  check_qubit(state, l);
  if (bits_[l]) {
    theta_ -= state.weights().row(l).transpose();
  } else {
    theta_ += state.weights().row(l).transpose();
  }
  exp_theta_ = theta_.array().exp().matrix();
  bits_.flip(l);
}

ThetaTable update_theta(const ThetaTable &table, const RbmState &state,
                        Index flipped_qubit) {
  ThetaTable out = table;
  out.flip(state, flipped_qubit);
  return out;
}

Complex log_amplitude(const RbmState &state, const ThetaTable &table) {
  const BitString &b = table.bits();
  check_bits(state, b);
  Complex acc{0.0, 0.0};
  for (Index j = 0; j < b.size(); ++j) {
    if (b[j]) acc += state.visible_bias()(j);
  }
  const ComplexVector &theta = table.theta();
  for (Index k = 0; k < theta.size(); ++k) {
    const Complex term = log1p_exp(theta(k));
    if (!finite(term)) {
      throw NumericError("log(1 + exp(theta)) is not finite for hidden unit " +
                         std::to_string(k) + " on bitstring " + b.to_string());
    }
    acc += term;
  }
  return acc;
}

Complex log_amplitude(const RbmState &state, const BitString &b) {
  return log_amplitude(state, ThetaTable(state, b));
}

Complex log_ratio_flip(const RbmState &state, const ThetaTable &table, Index l) {
  check_qubit(state, l);
  const double sign = table.bits()[l] ? -1.0 : 1.0;
  Complex acc = sign * state.visible_bias()(l);
  const ComplexVector &theta = table.theta();
  const auto row = state.weights().row(l);
  for (Index k = 0; k < theta.size(); ++k) {
    acc += log1p_exp(theta(k) + sign * row(k)) - log1p_exp(theta(k));
  }
  return acc;
}

namespace {

constexpr double kTameExponent = 30.0;
constexpr double kRescaleAbove = 1e100;
constexpr double kRescaleBelow = 1e-100;

// Complex product without the inf/nan recovery of operator*.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

FlipEvaluator::FlipEvaluator(const RbmState &state)
    : state_(&state),
      exp_w_(state.weights().array().exp().matrix()),
      exp_neg_w_((-state.weights().array()).exp().matrix()),
      row_is_tame_(static_cast<std::size_t>(state.n_visible())) {
  for (Index j = 0; j < state.n_visible(); ++j) {
    row_is_tame_[static_cast<std::size_t>(j)] =
        state.n_hidden() == 0 ||
        state.weights().row(j).real().cwiseAbs().maxCoeff() <= kTameExponent;
  }
}

Complex FlipEvaluator::hidden_log_ratio(const ComplexVector &theta,
                                        const ComplexVector &exp_theta, Index l,
                                        bool add) const {
  const RbmState &s = *state_;
  const auto w = s.weights().row(l);
  const auto ew = add ? exp_w_.row(l) : exp_neg_w_.row(l);
  const bool tame_row = row_is_tame_[static_cast<std::size_t>(l)];
  const double sign = add ? 1.0 : -1.0;
  Complex log_acc{0.0, 0.0};
  Complex num{1.0, 0.0}, den{1.0, 0.0};
  constexpr double hi = kRescaleAbove * kRescaleAbove, lo = kRescaleBelow * kRescaleBelow;
  for (Index k = 0; k < theta.size(); ++k) {
    if (tame_row && std::abs(theta(k).real()) <= kTameExponent) {
      num = mul(num, 1.0 + mul(exp_theta(k), ew(k)));
      den = mul(den, 1.0 + exp_theta(k));
      const double nn = std::norm(num), nd = std::norm(den);
      if (nn > hi || nn < lo || nd > hi || nd < lo) {
        log_acc += std::log(num) - std::log(den);
        num = den = 1.0;
      }
    } else {
      log_acc += log1p_exp(theta(k) + sign * w(k)) - log1p_exp(theta(k));
    }
  }
  return log_acc + std::log(num / den);
}

Complex FlipEvaluator::log_ratio_flip(const ThetaTable &table, Index l) const {
  check_qubit(*state_, l);
  const bool add = table.bits()[l] == 0;
  const Complex visible = add ? state_->visible_bias()(l) : -state_->visible_bias()(l);
  return visible + hidden_log_ratio(table.theta(), table.exp_theta(), l, add);
}

ComplexVector variational_derivatives(const RbmState &state,
                                      const ThetaTable &table) {
  const BitString &b = table.bits();
  check_bits(state, b);
  const Index n = state.n_visible(), m = state.n_hidden();
  ComplexVector d = ComplexVector::Zero(state.n_params());
  for (Index j = 0; j < n; ++j) d(j) = static_cast<double>(b[j]);
  for (Index k = 0; k < m; ++k) d(n + k) = logistic(table.theta()(k));
  for (Index j = 0; j < n; ++j) {
    if (b[j]) d.segment(n + m + j * m, m) = d.segment(n, m);
  }
  return d;
}

ComplexVector variational_derivatives(const RbmState &state, const BitString &b) {
  return variational_derivatives(state, ThetaTable(state, b));
}

RbmState add_hidden_units(const RbmState &state, std::span<const HiddenUnit> units) {
  const Index n = state.n_visible(), m = state.n_hidden();
  const Index extra = static_cast<Index>(units.size());
  ComplexVector b(m + extra);
  b.head(m) = state.hidden_bias();
  ComplexMatrix w = ComplexMatrix::Zero(n, m + extra);
  w.leftCols(m) = state.weights();
  for (Index u = 0; u < extra; ++u) {
    const HiddenUnit &unit = units[static_cast<std::size_t>(u)];
    b(m + u) = unit.bias;
    for (const auto &[j, value] : unit.couplings) {
      check_qubit(state, j);
      w(j, m + u) = value;
    }
  }
  return RbmState(state.visible_bias(), std::move(b), std::move(w));
}

RbmState add_hidden_unit(const RbmState &state,
                         std::span<const std::pair<Index, Complex>> couplings,
                         Complex hidden_bias) {
  HiddenUnit unit{{couplings.begin(), couplings.end()}, hidden_bias};
  return add_hidden_units(state, std::span<const HiddenUnit>(&unit, 1));
}

}  // namespace nqs
