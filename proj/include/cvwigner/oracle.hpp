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
#include "cvwigner/polynomial.hpp"
#include "cvwigner/states.hpp"

namespace cvw {

/// `count` equal bins on [min, max].
struct BinSpec {
  double min = -6.0;
  double max = 6.0;
  int count = 50;

  std::vector<double> edges() const;
  /// Index of the bin containing x, or -1 outside [min, max).
  int locate(double x) const;
};

struct OutcomeDistribution {
  std::vector<double> bin_edges;
  std::vector<double> masses;

  double total() const;
};

/// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
  double lo;
  double hi;
};
using IntervalSet = std::vector<Interval>;

/// Each interval intersected with [lo, hi]; empty pieces are dropped.
IntervalSet clip(const IntervalSet& x, double lo, double hi);

/// Density of the spectral measure of zeta.R on an axis; Fock states only.
struct QuadratureDensity {
  SymplecticVector observable;
  std::vector<double> x;
  std::vector<double> density;
};

/// Points used to tabulate Fock-backed homodyne densities.
inline constexpr int kHomodyneAxisPoints = 2048;

/// Evaluates the density of zeta.R at the given outcomes. The state is
/// rotated so that zeta/|zeta| becomes q_1, reduced to mode 1 and
/// expanded in Hermite functions.
class FockHomodyne {
 public:
  FockHomodyne(const FockDensityOperator& rho, const SymplecticVector& zeta);

  double density(double x) const;
  QuadratureDensity tabulate(double lo, double hi, int points = kHomodyneAxisPoints) const;
  /// Outcomes outside +-support() carry negligible weight.
  double support() const;

 private:
  SymplecticVector zeta_;
  double scale_;
  Mat reduced_;
};

OutcomeDistribution quantum_homodyne_distribution(const State& rho, const SymplecticVector& zeta, const BinSpec& bins);

struct Expectation {
  double value;
  double error_bound;
};

/// Tr[rho Q[f]] on the truncated space. Gaussian states are first expanded
/// at the default cutoff. Throws InadequacyError if the truncation error
/// bound exceeds 1e-3 of max(1, |value|).
Expectation expectation(const State& rho, const PolynomialObservable& obs);

/// Tr[rho Pi_{zeta.R}(X)].
double event_probability(const State& rho, const SymplecticVector& zeta, const IntervalSet& x);

/// Half the l1 distance; throws DimensionError on different bin edges.
double tv_distance(const OutcomeDistribution& a, const OutcomeDistribution& b);

/// CSV "bin_left,bin_right,mass".
void write_distribution_csv(const OutcomeDistribution& d, const std::string& path);

}  // namespace cvw
