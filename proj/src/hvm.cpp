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

#include "cvwigner/hvm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cvwigner/parallel.hpp"
#include "cvwigner/wigner.hpp"

namespace cvw {
namespace {

double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// P(Y <= t) for Y a sum of independent U[0, w_a].
double uniform_sum_cdf(const std::vector<double>& w, double total, double t) {
  if (t <= 0.0) return 0.0;
  if (t >= total) return 1.0;
  const int n = static_cast<int>(w.size());
  double norm = std::tgamma(n + 1.0);
  for (double x : w) norm *= x;
  double s = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double shift = 0.0;
    int bits = 0;
    for (int a = 0; a < n; ++a) {
      if (mask & (1u << a)) {
        shift += w[static_cast<std::size_t>(a)];
        ++bits;
      }
    }
    const double r = t - shift;
    if (r > 0.0) s += (bits % 2 ? -1.0 : 1.0) * std::pow(r, n);
  }
  return std::clamp(s / norm, 0.0, 1.0);
}

}  // namespace

NegativityError::NegativityError(double min_value, Vec location, GridSpec grid)
    : Error("Wigner function is negative (min " + std::to_string(min_value) + "); no noncontextual model"),
      min_value_(min_value),
      location_(std::move(location)),
      grid_(std::move(grid)) {}

nlohmann::json NegativityError::to_json() const {
  return {{"min_value", min_value_},
          {"location", std::vector<double>(location_.data(), location_.data() + location_.size())},
          {"grid_spec", grid_.to_json()}};
}

void HiddenVariableModel::cell_box(std::size_t i, Vec& lo, Vec& hi) const {
  const auto idx = measure_.grid.index(i);
  const int d = measure_.grid.dims();
  lo.resize(d);
  hi.resize(d);
  for (int a = 0; a < d; ++a) {
    lo[a] = lo_[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
    hi[a] = hi_[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
  }
}

std::size_t HiddenVariableModel::draw_cell(double u, double coin) const {
  const std::size_t n = accept_.size();
  const std::size_t i = std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
  return coin < accept_[i] ? i : alias_[i];
}

HiddenVariableModel build_hvm(const WignerGrid& w) {
  if (std::abs(w.integral() - 1.0) > 1e-3) throw PreconditionError("Wigner grid is not normalized");
  const double tol = kNegativityTolerance * w.max_abs();
  const MinValue mv = min_value(w);
  if (mv.value < -tol) throw NegativityError(mv.value, mv.location, w.grid);

  HiddenVariableModel model;
  model.measure_ = w;
  const GridSpec& g = w.grid;
  for (const Axis& ax : g.axes()) {
    std::vector<double> lo(static_cast<std::size_t>(ax.points)), hi(static_cast<std::size_t>(ax.points));
    const double h = ax.step();
    for (int k = 0; k < ax.points; ++k) {
      lo[static_cast<std::size_t>(k)] = std::max(ax.min, ax.node(k) - 0.5 * h);
      hi[static_cast<std::size_t>(k)] = std::min(ax.max, ax.node(k) + 0.5 * h);
    }
    model.lo_.push_back(std::move(lo));
    model.hi_.push_back(std::move(hi));
  }

  const std::size_t n = g.size();
  model.masses_.resize(n);
  double total = 0.0;
  Vec lo, hi;
  for (std::size_t i = 0; i < n; ++i) {
    model.cell_box(i, lo, hi);
    const double v = std::max(0.0, w.values[i]);
    model.masses_[i] = v * (hi - lo).prod();
    total += model.masses_[i];
  }
  model.renormalization_ = 1.0 / total;
  for (std::size_t i = 0; i < n; ++i) {
    model.masses_[i] *= model.renormalization_;
    model.measure_.values[i] = std::max(0.0, w.values[i]) * model.renormalization_;
  }

  // Vose alias table.
  model.accept_.assign(n, 1.0);
  model.alias_.resize(n);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = model.masses_[i] * static_cast<double>(n);
    model.alias_[i] = static_cast<std::uint32_t>(i);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    model.accept_[s] = scaled[s];
    model.alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  return model;
}

std::vector<HiddenSample> sample(const HiddenVariableModel& model, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("sample count must be at least 1");
  const int d = model.measure().grid.dims();
  std::vector<HiddenSample> out(n);
  const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  parallel_for(chunks, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(std::uint64_t(c) >> 32)};
    std::mt19937_64 rng(seq);
    Vec lo, hi, phi(d);
    const std::size_t end = std::min(n, (c + 1) * kSampleChunk);
    for (std::size_t i = c * kSampleChunk; i < end; ++i) {
      const double u = to_unit(rng());
      const double coin = to_unit(rng());
      model.cell_box(model.draw_cell(u, coin), lo, hi);
      for (int a = 0; a < d; ++a) phi[a] = lo[a] + (hi[a] - lo[a]) * to_unit(rng());
      out[i] = {SymplecticVector(phi), i};
    }
  });
  return out;
}

double value_assignment(const SymplecticVector& phi, const SymplecticVector& zeta) { return zeta.dot(phi); }

double value_assignment(const SymplecticVector& phi, const PolynomialObservable& obs) {
  return obs.evaluate(phi.coords());
}

OutcomeDistribution hvm_homodyne_distribution(const HiddenVariableModel& model, const SymplecticVector& zeta,
                                              const BinSpec& bins, std::size_t n, std::uint64_t seed) {
  if (zeta.norm() == 0.0) throw PreconditionError("homodyne observable must be nonzero");
  if (zeta.modes() != model.modes()) throw DimensionError("observable and model have different mode counts");
  const auto samples = sample(model, n, seed);
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins.count), 0);
  for (const auto& s : samples) {
    const int b = bins.locate(value_assignment(s.phi, zeta));
    if (b >= 0) ++counts[static_cast<std::size_t>(b)];
  }
  OutcomeDistribution d{bins.edges(), std::vector<double>(counts.size())};
  for (std::size_t i = 0; i < counts.size(); ++i) d.masses[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  return d;
}

double hvm_event_probability(const HiddenVariableModel& model, const SymplecticVector& zeta, const IntervalSet& x) {
  if (zeta.modes() != model.modes()) throw DimensionError("observable and model have different mode counts");
  const auto intervals = clip(x, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  const auto& masses = model.cell_masses();
  const int d = model.measure().grid.dims();
  std::vector<double> part(masses.size(), 0.0);
  parallel_for(masses.size(), [&](std::size_t i) {
    if (masses[i] == 0.0) return;
    Vec lo, hi;
    model.cell_box(i, lo, hi);
    double base = 0.0;
    std::vector<double> widths;
    double widest = 0.0;
    for (int a = 0; a < d; ++a) widest = std::max(widest, std::abs(zeta[a]) * (hi[a] - lo[a]));
    for (int a = 0; a < d; ++a) {
      const double wa = std::abs(zeta[a]) * (hi[a] - lo[a]);
      // Much narrower directions are collapsed to their midpoint.
      if (wa > 1e-3 * widest) {
        base += std::min(zeta[a] * lo[a], zeta[a] * hi[a]);
        widths.push_back(wa);
      } else {
        base += zeta[a] * 0.5 * (lo[a] + hi[a]);
      }
    }
    double total = 0.0;
    for (double wa : widths) total += wa;
    double p = 0.0;
    for (const auto& iv : intervals) {
      if (widths.empty()) {
        p += (base >= iv.lo && base <= iv.hi) ? 1.0 : 0.0;
      } else {
        p += uniform_sum_cdf(widths, total, iv.hi - base) - uniform_sum_cdf(widths, total, iv.lo - base);
      }
    }
    part[i] = masses[i] * p;
  });
  double s = 0.0;
  for (double v : part) s += v;
  return s;
}

nlohmann::json CharacteristicReport::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) {
    pts.push_back({{"v", std::vector<double>(p.v.coords().data(), p.v.coords().data() + p.v.size())},
                   {"model", {p.model.real(), p.model.imag()}},
                   {"oracle", {p.oracle.real(), p.oracle.imag()}},
                   {"deviation", p.deviation}});
  }
  return {{"points", pts}, {"max_deviation", max_deviation}, {"tolerance", tolerance}, {"pass", pass}};
}

CharacteristicReport empirical_characteristic_check(const HiddenVariableModel& model,
                                                    const std::vector<SymplecticVector>& points, const State& rho) {
  const int m = model.modes();
  if (mode_count(rho) != m) throw DimensionError("state and model have different mode counts");
  const Mat omega = symplectic_form_matrix(m);
  const auto& masses = model.cell_masses();
  CharacteristicReport r{{}, 0.0, kCharacteristicTolerance, true};
  for (const auto& v : points) {
    if (v.modes() != m) throw DimensionError("test point has the wrong mode count");
    const Vec k = omega.transpose() * v.coords();
    std::vector<cplx> part(masses.size(), 0.0);
    parallel_for(masses.size(), [&](std::size_t i) {
      if (masses[i] == 0.0) return;
      Vec lo, hi;
      model.cell_box(i, lo, hi);
      double phase = 0.0;
      double damp = 1.0;
      for (int a = 0; a < 2 * m; ++a) {
        phase += k[a] * 0.5 * (lo[a] + hi[a]);
        const double x = 0.5 * k[a] * (hi[a] - lo[a]);
        damp *= x == 0.0 ? 1.0 : std::sin(x) / x;
      }
      part[i] = masses[i] * damp * std::polar(1.0, phase);
    });
    cplx s = 0.0;
    for (const auto& c : part) s += c;
    const cplx oracle = std::visit([&](const auto& st) { return characteristic_at(st, v.coords()); }, rho);
    const double dev = std::abs(s - oracle);
    r.points.push_back({v, s, oracle, dev});
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  r.pass = r.max_deviation <= r.tolerance;
  return r;
}

}  // namespace cvw
