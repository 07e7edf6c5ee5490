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


#ifndef NQS_VERIFY_HPP
#define NQS_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nqs/exact_gates.hpp"
#include "nqs/random.hpp"

namespace nqs {

// Parameters drawn as complex Gaussians with the given scale per component.
RbmState random_state(Index n_visible, Index n_hidden, Rng &rng, double scale = 0.5);

// Largest per-component relative mismatch between a and c * b, with c fixed
// by the largest component of b. Returns +inf if the supports differ.
double mismatch_up_to_scalar(const ComplexVector &a, const ComplexVector &b);

// The four values e^{da_l B_l + da_m B_m} (1 + e^{W_lc B_l + W_mc B_m}) for
// (B_l, B_m) = 00, 10, 01, 11, divided by the 00 value and compared with
// (1, 1, 1, e^{i phi}). Returns the largest absolute deviation.
double crz_assignment_error(double phi, const CrzParameters &p);

struct VerifyOptions {
  std::uint64_t seed = 0;
  // Fault injection: flips the sign of both CRZ couplings.
  bool corrupt_crz_sign = false;
  Index chi_square_samples = 1'000'000;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<PropertyResult> results;
  bool all_passed() const;
};

using PropertyObserver = std::function<void(const PropertyResult &)>;

// Invariant battery: exact gates vs the statevector oracle, CRZ
// assignments over 16 angles, gradient vs finite differences, sampler
// chi-square for |Psi|^2 and |H Psi|^2.
VerifyReport verify_suite(const VerifyOptions &opts = {},
                          const PropertyObserver &observer = {});

}  // namespace nqs

#endif  // NQS_VERIFY_HPP
