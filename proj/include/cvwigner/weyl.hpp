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

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvwigner/core.hpp"
#include "cvwigner/grid.hpp"
#include "cvwigner/phase_space.hpp"
#include "cvwigner/polynomial.hpp"

namespace cvw {

struct QuadratureOperator {
  CMat matrix;
  SymplecticVector label;
};

/// sum_i zeta_i R_i from the truncated ladder-operator quadratures.
QuadratureOperator quantize_linear(const SymplecticVector& zeta, int cutoff);

/// Operator written as sum_t c_t tensor_j w_{t,j}, where w_{t,j} is an
/// ordered word over {'q', 'p'} acting on mode j (empty word = identity).
struct WordExpansion {
  int modes = 1;
  std::map<std::vector<std::string>, cplx> terms;

  int degree() const;
};

/// Weyl (fully symmetrized) quantization of f(zeta_1 . z, ..., zeta_k . z).
WordExpansion weyl_expansion(const PolynomialObservable& obs);

/// Exact truncation P w P of every word (built on a padded space), summed.
CMat materialize(const WordExpansion& words, int cutoff);

/// Q[f] on the per-mode `cutoff` space.
CMat quantize_polynomial(const PolynomialObservable& obs, int cutoff);

/// prod_i (P zeta_i R P)^{e_i} in generator order, summed over the terms.
CMat plain_product(const PolynomialObservable& obs, int cutoff);

/// Levels kept by operator comparisons: per-mode levels <= cutoff - 2 degree.
int trusted_levels(int cutoff, int degree);

/// Max entry deviation between two m-mode operators on the trusted block.
double trusted_block_deviation(const CMat& a, const CMat& b, int modes, int cutoff, int keep_levels);

/// Gaussian damping of the symbol comparison: chi is multiplied by
/// exp(-sigma^2 |v|^2 / 2), which smooths symbols by N(0, sigma^2 I).
inline constexpr double kDampingSigma = 0.4;
inline constexpr double kTrustedWindow = 3.0;
inline constexpr double kMultiplicativityTolerance = 1e-3;

struct MultiplicativityReport {
  std::string name;
  double sup_norm_deviation;
  Vec worst_location;
  double trusted_window;
  int cutoff;
  bool pass;
  /// Failed, but the deviation peaks in the outer half of the trusted window.
  bool flagged;
  /// Damped symbol minus f at the origin (the smoothing shifts even
  /// polynomials: x^2 -> x^2 + sigma^2).
  double offset_at_origin;

  nlohmann::json to_json() const;
};

/// Wigner symbol of quantize_polynomial(obs) through the damped
/// characteristic-function route, compared with the equally smoothed f on
/// the nodes of `grid` inside |z|_inf <= 3.
MultiplicativityReport check_wigner_multiplicativity(const PolynomialObservable& obs, const GridSpec& grid,
                                                     int cutoff, const std::string& name = "");

/// E[f(zeta . (z + sigma xi))] with xi ~ N(0, I), by Gauss-Hermite.
double smoothed_polynomial(const PolynomialObservable& obs, const Vec& z, double sigma);

/// U_S op U_S^dag with U_S R U_S^dag = S R, so quantize_linear(zeta) maps to
/// quantize_linear(S^T zeta). Built on a padded space and truncated back.
CMat conjugate_by_metaplectic(const CMat& op, const SymplecticMatrix& s, int cutoff);

/// max |U_S (zeta R) U_S^dag - (S^T zeta) R| over the levels below `keep`,
/// with zeta R built on the padded space before conjugation.
double metaplectic_covariance_deviation(const SymplecticVector& zeta, const SymplecticMatrix& s, int cutoff,
                                        int keep);

}  // namespace cvw
