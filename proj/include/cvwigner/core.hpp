// Copyright 2026 The cvwigner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cvw {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using SpCMat = Eigen::SparseMatrix<cplx>;

/// Base class of all library errors. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with incompatible mode counts or shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: unknown state kind, bad JSON, missing parameters.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The numerical setup cannot support the requested accuracy: Fock cutoff
/// leaks too much weight, a grid window does not contain the function, etc.
class InadequacyError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold (mixed state given to the Hudson
/// classifier, non-symplectic matrix, invalid channel).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvw
