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

#include <string>
#include <vector>

#include "cvwigner/core.hpp"
#include "cvwigner/phase_space.hpp"

namespace cvw {

/// Real polynomial in k variables as a list of (exponents, coefficient).
class Polynomial {
 public:
  struct Term {
    std::vector<int> exponents;
    double coefficient;
  };

  Polynomial(int variables, std::vector<Term> terms);

  /// x_i.
  static Polynomial variable(int variables, int i);

  int variables() const { return variables_; }
  const std::vector<Term>& terms() const { return terms_; }
  int degree() const;
  double evaluate(const std::vector<double>& x) const;
  std::string to_string() const;

 private:
  int variables_;
  std::vector<Term> terms_;
};

/// f(zeta_1 R, ..., zeta_k R) for a context {zeta_i}.
class PolynomialObservable {
 public:
  inline static constexpr int kMaxDegree = 6;

  /// Throws PreconditionError for a variable-count mismatch or degree > 6.
  PolynomialObservable(Context context, Polynomial poly);

  const Context& context() const { return context_; }
  const Polynomial& poly() const { return poly_; }
  int modes() const { return context_.modes(); }

  /// f(zeta_1 . z, ..., zeta_k . z).
  double evaluate(const Vec& z) const;

 private:
  Context context_;
  Polynomial poly_;
};

}  // namespace cvw
