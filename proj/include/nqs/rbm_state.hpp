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

#ifndef NQS_RBM_STATE_HPP
#define NQS_RBM_STATE_HPP

#include <span>
#include <utility>
#include <vector>

#include "nqs/bit_string.hpp"
#include "nqs/types.hpp"

namespace nqs {

// Complex restricted Boltzmann machine wave function
//
//   Psi(B) = exp(sum_j a_j B_j) * prod_k [1 + exp(theta_k(B))],
//   theta_k(B) = b_k + sum_j W_jk B_j.
//
// Amplitudes are unnormalized. The flat parameter vector is ordered
// (a_0..a_{N-1}, b_0..b_{M-1}, W row-major in (j, k)) everywhere in the
// library: optimizer state, derivatives and serialization all use it.
class RbmState {
 public:
  RbmState(Index n_visible, Index n_hidden);
  RbmState(ComplexVector visible_bias, ComplexVector hidden_bias,
           ComplexMatrix weights);

  Index n_visible() const { return visible_bias_.size(); }
  Index n_hidden() const { return hidden_bias_.size(); }
  Index n_params() const { return n_visible() + n_hidden() + n_visible() * n_hidden(); }

  const ComplexVector &visible_bias() const { return visible_bias_; }
  const ComplexVector &hidden_bias() const { return hidden_bias_; }
  const ComplexMatrix &weights() const { return weights_; }
  ComplexVector &visible_bias() { return visible_bias_; }
  ComplexVector &hidden_bias() { return hidden_bias_; }
  ComplexMatrix &weights() { return weights_; }

  ComplexVector parameters() const;
  void set_parameters(const ComplexVector &params);

  // Throws NumericError naming the first NaN/Inf parameter.
  void check_finite() const;

  friend bool operator==(const RbmState &x, const RbmState &y);

 private:
  ComplexVector visible_bias_;
  ComplexVector hidden_bias_;
  ComplexMatrix weights_;
};

// log(1 + e^z), evaluated as z + log(1 + e^{-z}) when Re z > 0.
Complex log1p_exp(Complex z);

// 1 / (1 + e^{-z}) without overflow for either sign of Re z.
Complex logistic(Complex z);

// Cached pre-activations theta_k and e^{theta_k} for one bitstring.
class ThetaTable {
 public:
  ThetaTable(const RbmState &state, BitString bits);

  const BitString &bits() const { return bits_; }
  const ComplexVector &theta() const { return theta_; }
  const ComplexVector &exp_theta() const { return exp_theta_; }

  // Flips bit l in place, O(M).
  void flip(const RbmState &state, Index l);

 private:
  BitString bits_;
  ComplexVector theta_;
  ComplexVector exp_theta_;
};

ComplexVector compute_theta(const RbmState &state, const BitString &b);

Complex log_amplitude(const RbmState &state, const BitString &b);
Complex log_amplitude(const RbmState &state, const ThetaTable &table);

// Table for the bitstring with bit l flipped.
ThetaTable update_theta(const ThetaTable &table, const RbmState &state,
                        Index flipped_qubit);

// log Psi(B with bit l flipped) - log Psi(B), O(M).
Complex log_ratio_flip(const RbmState &state, const ThetaTable &table, Index l);

// Flip ratios without transcendental calls per hidden unit: keeps e^{+-W_l}
// for every visible unit and multiplies (1 + e^theta e^{+-W}) / (1 + e^theta)
// over k, falling back to log1p_exp differences where |Re theta| or |Re W|
// is large. Equal to log_ratio_flip modulo 2 pi i.
class FlipEvaluator {
 public:
  explicit FlipEvaluator(const RbmState &state);

  const RbmState &state() const { return *state_; }

  Complex log_ratio_flip(const ThetaTable &table, Index l) const;

  // log prod_k (1 + e^{theta_k + s W_lk}) / (1 + e^{theta_k}) with s = +1
  // when adding row l, -1 when removing it.
  Complex hidden_log_ratio(const ComplexVector &theta, const ComplexVector &exp_theta,
                           Index l, bool add) const;

 private:
  const RbmState *state_;
  ComplexMatrix exp_w_;      // N x M
  ComplexMatrix exp_neg_w_;  // N x M
  std::vector<bool> row_is_tame_;
};

// O_p(B) = d log Psi(B) / d p in canonical parameter order.
ComplexVector variational_derivatives(const RbmState &state,
                                      const ThetaTable &table);
ComplexVector variational_derivatives(const RbmState &state, const BitString &b);

// Appends a hidden unit with the given (qubit, weight) couplings; all other
// entries of the new weight column are zero.
RbmState add_hidden_unit(const RbmState &state,
                         std::span<const std::pair<Index, Complex>> couplings,
                         Complex hidden_bias = {0.0, 0.0});

struct HiddenUnit {
  std::vector<std::pair<Index, Complex>> couplings;
  Complex bias{0.0, 0.0};
};

// Batch insertion; an empty list returns the state unchanged.
RbmState add_hidden_units(const RbmState &state, std::span<const HiddenUnit> units);

}  // namespace nqs

#endif  // NQS_RBM_STATE_HPP
