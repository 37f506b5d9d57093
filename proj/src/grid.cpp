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

#include "cvwigner/grid.hpp"

#include <cmath>
#include <fstream>


namespace cvw {

GridSpec::GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() % 2 != 0) throw DimensionError("grid needs an even, nonzero number of axes");
  size_ = 1;
  for (const Axis& a : axes_) {
    if (a.points < 2 || !(a.max > a.min) || !std::isfinite(a.min) || !std::isfinite(a.max)) {
      throw PreconditionError("grid axes need at least 2 points and max > min");
    }
    size_ *= static_cast<std::size_t>(a.points);
  }
  if (size_ > (std::size_t{1} << 28)) throw InadequacyError("grid has too many nodes");
}

GridSpec GridSpec::symmetric(int modes, double window, int points) {
  if (modes < 1) throw DimensionError("grid needs at least one mode");
  if (!(window > 0.0)) throw PreconditionError("grid window must be positive");
  return GridSpec(std::vector<Axis>(static_cast<std::size_t>(2 * modes), Axis{-window, window, points}));
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (const Axis& a : axes_) v *= a.step();
  return v;
}

std::vector<int> GridSpec::index(std::size_t flat) const {
  std::vector<int> idx(axes_.size());
  for (int k = dims() - 1; k >= 0; --k) {
    const auto n = static_cast<std::size_t>(axes_[static_cast<std::size_t>(k)].points);
    idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

Vec GridSpec::point(std::size_t flat) const {
  const auto idx = index(flat);
  Vec z(dims());
  for (int k = 0; k < dims(); ++k) z[k] = axes_[static_cast<std::size_t>(k)].node(idx[static_cast<std::size_t>(k)]);
  return z;
}

bool GridSpec::on_boundary(std::size_t flat) const {
  const auto idx = index(flat);
  for (int k = 0; k < dims(); ++k) {
    const int i = idx[static_cast<std::size_t>(k)];
    if (i == 0 || i == axes_[static_cast<std::size_t>(k)].points - 1) return true;
  }
  return false;
}

nlohmann::json GridSpec::to_json() const {
  nlohmann::json axes = nlohmann::json::array();
  for (const Axis& a : axes_) axes.push_back({{"min", a.min}, {"max", a.max}, {"points", a.points}});
  return axes;
}

double WignerGrid::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.cell_volume();
}

double WignerGrid::abs_integral() const {
  double s = 0.0;
  for (double v : values) s += std::abs(v);
  return s * grid.cell_volume();
}

double WignerGrid::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void write_wigner_csv(const WignerGrid& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  const int m = w.grid.modes();
  for (int j = 0; j < m; ++j) out << 'q' << j + 1 << ',';
  for (int j = 0; j < m; ++j) out << 'p' << j + 1 << ',';
  out << "W\n";
  out.precision(17);
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    const Vec z = w.grid.point(i);
    for (int k = 0; k < z.size(); ++k) out << z[k] << ',';
    out << w.values[i] << '\n';
  }
}

}  // namespace cvw
