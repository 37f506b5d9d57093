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

#include "json.hpp"

#include "cvwigner/core.hpp"

namespace cvw {

/// Uniform axis with `points` nodes from min to max inclusive.
struct Axis {
  double min = -6.0;
  double max = 6.0;
  int points = 257;

  double step() const { return points > 1 ? (max - min) / (points - 1) : 0.0; }
  double node(int i) const { return min + i * step(); }
};

/// Rectangular grid over R^{2m}; axis k follows the coordinate ordering
/// (q_1..q_m, p_1..p_m). Node index is row-major with axis 0 slowest.
class GridSpec {
 public:
  GridSpec() = default;
  explicit GridSpec(std::vector<Axis> axes);

  /// Same [-window, window] axis with `points` nodes on all 2m coordinates.
  static GridSpec symmetric(int modes, double window, int points);

  const std::vector<Axis>& axes() const { return axes_; }
  int dims() const { return static_cast<int>(axes_.size()); }
  int modes() const { return dims() / 2; }
  std::size_t size() const { return size_; }
  double cell_volume() const;
  std::vector<int> index(std::size_t flat) const;
  Vec point(std::size_t flat) const;
  /// True when some coordinate of the node sits on the first or last point.
  bool on_boundary(std::size_t flat) const;

  nlohmann::json to_json() const;

 private:
  std::vector<Axis> axes_;
  std::size_t size_ = 0;
};

struct WignerGrid {
  GridSpec grid;
  std::vector<double> values;

  double integral() const;
  double abs_integral() const;
  double max_abs() const;
};

struct CharacteristicGrid {
  GridSpec grid;
  std::vector<cplx> values;
};

/// CSV with header "q1,...,qm,p1,...,pm,W", one row per node in index order.
void write_wigner_csv(const WignerGrid& w, const std::string& path);

}  // namespace cvw
