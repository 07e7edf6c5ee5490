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

#ifndef NQS_TYPES_HPP
#define NQS_TYPES_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nqs {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

enum class ErrorKind {
  Structural,
  Numeric,
  DegenerateOverlap,
  Learner,
  Config,
  Io,
  Limit,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Dimension mismatches, out-of-range indices, malformed gates.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string &what)
      : Error(ErrorKind::Structural, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string &what)
      : Error(ErrorKind::Numeric, what) {}
};

// <Phi/Psi> vanishes relative to its spread: the two states are orthogonal
// to working precision and the log-overlap gradient is undefined.
class DegenerateOverlapError : public Error {
 public:
  explicit DegenerateOverlapError(const std::string &what)
      : Error(ErrorKind::DegenerateOverlap, what) {}
};

class LearnerError : public Error {
 public:
  explicit LearnerError(const std::string &what)
      : Error(ErrorKind::Learner, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what)
      : Error(ErrorKind::Config, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error(ErrorKind::Io, what) {}
};

class LimitError : public Error {
 public:
  explicit LimitError(const std::string &what)
      : Error(ErrorKind::Limit, what) {}
};

}  // namespace nqs

#endif  // NQS_TYPES_HPP
