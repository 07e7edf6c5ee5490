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


#ifndef NQS_TESTS_TEST_SUPPORT_HPP
#define NQS_TESTS_TEST_SUPPORT_HPP

#include <filesystem>
#include <string>

#include "nqs/circuits.hpp"
#include "nqs/groundstate.hpp"
#include "nqs/oracle.hpp"
#include "nqs/verify.hpp"

namespace nqs::testing {

// Psi(B) = exp(sum_j a_j B_j) prod_k (1 + exp(b_k + sum_j W_jk B_j)),
// evaluated literally (no logs, no tables).
Complex direct_amplitude(const RbmState &s, const BitString &b);

// Unnormalized vector of direct amplitudes, little-endian.
ComplexVector direct_vector(const RbmState &s);

// Dense 2^n x 2^n matrix of one gate, built from Kronecker products.
ComplexMatrix dense_gate(const GateOp &g, Index n);

// Dense TFIM Hamiltonian and its lowest eigenvalue.
Eigen::MatrixXd dense_tfim(const Lattice &lattice, const TfimParams &p);
double dense_ground_energy(const Lattice &lattice, const TfimParams &p);

// -log(normalized overlap) of psi with an explicit target vector.
double exact_loss(const RbmState &psi, const ComplexVector &target);

// Fresh scratch directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string &name);

}  // namespace nqs::testing

#endif  // NQS_TESTS_TEST_SUPPORT_HPP
