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

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "cvwigner/core.hpp"
#include "cvwigner/grid.hpp"
#include "cvwigner/oracle.hpp"
#include "cvwigner/phase_space.hpp"
#include "cvwigner/polynomial.hpp"
#include "cvwigner/states.hpp"

namespace cvw {

/// Raised by build_hvm: the grid has a value below -1e-9 max|W|, so no
/// noncontextual model with this measure exists.
class NegativityError : public Error {
 public:
  NegativityError(double min_value, Vec location, GridSpec grid);

  double min_value() const { return min_value_; }
  const Vec& location() const { return location_; }
  const GridSpec& grid() const { return grid_; }
  nlohmann::json to_json() const;

 private:
  double min_value_;
  Vec location_;
  GridSpec grid_;
};

/// Phase space as hidden-state space with the measure carried by a Wigner
/// grid. Node i owns the box of half-step around it, clipped to the window,
/// and the measure is uniform inside that box.
class HiddenVariableModel {
 public:
  const WignerGrid& measure() const { return measure_; }
  int modes() const { return measure_.grid.modes(); }
  /// Factor applied to the clamped grid so that the cell masses sum to 1.
  double renormalization() const { return renormalization_; }
  const std::vector<double>& cell_masses() const { return masses_; }
  /// Corners of the box owned by node i.
  void cell_box(std::size_t i, Vec& lo, Vec& hi) const;
  /// Cell chosen by the alias table for two uniforms in [0, 1).
  std::size_t draw_cell(double u, double coin) const;

 private:
  friend HiddenVariableModel build_hvm(const WignerGrid& w);

  WignerGrid measure_;
  double renormalization_ = 1.0;
  std::vector<double> masses_;
  std::vector<std::vector<double>> lo_, hi_;
  std::vector<double> accept_;
  std::vector<std::uint32_t> alias_;
};

/// Clamp floor for sub-tolerance negative values, relative to max|W|.
inline constexpr double kNegativityTolerance = 1e-9;

/// Throws NegativityError when min W < -1e-9 max|W|, PreconditionError when
/// the grid is not normalized to 1e-3.
HiddenVariableModel build_hvm(const WignerGrid& w);

struct HiddenSample {
  SymplecticVector phi;
  std::uint64_t seed_index;
};

/// Samples per independently seeded block of the stream.
inline constexpr std::size_t kSampleChunk = 1024;

/// Sample i depends only on (seed, i): block i / 1024 runs mt19937_64 seeded
/// from seed_seq{seed, block}.
std::vector<HiddenSample> sample(const HiddenVariableModel& model, std::size_t n, std::uint64_t seed);

/// lambda_phi(zeta) = zeta . phi.
double value_assignment(const SymplecticVector& phi, const SymplecticVector& zeta);
/// f(zeta_1 . phi, ..., zeta_k . phi).
double value_assignment(const SymplecticVector& phi, const PolynomialObservable& obs);

/// Histogram of zeta . phi over n samples, as fractions of n.
OutcomeDistribution hvm_homodyne_distribution(const HiddenVariableModel& model, const SymplecticVector& zeta,
                                              const BinSpec& bins, std::size_t n, std::uint64_t seed);

/// nu({phi : zeta . phi in X}), integrated exactly over the cell boxes.
double hvm_event_probability(const HiddenVariableModel& model, const SymplecticVector& zeta, const IntervalSet& x);

struct CharacteristicPoint {
  SymplecticVector v;
  cplx model;
  cplx oracle;
  double deviation;
};

struct CharacteristicReport {
  std::vector<CharacteristicPoint> points;
  double max_deviation;
  double tolerance;
  bool pass;

  nlohmann::json to_json() const;
};

inline constexpr double kCharacteristicTolerance = 2e-3;

/// Compares the integral of exp(i v^T omega phi) against the measure with
/// chi_rho(v) at each test point.
CharacteristicReport empirical_characteristic_check(const HiddenVariableModel& model,
                                                    const std::vector<SymplecticVector>& points, const State& rho);

}  // namespace cvw
