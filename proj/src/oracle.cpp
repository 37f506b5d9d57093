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

#include "cvwigner/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <fstream>
#include <limits>

#include "cvwigner/fock.hpp"
#include "cvwigner/weyl.hpp"

namespace cvw {
namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

struct Normal {
  double mean;
  double sd;

  double mass(double lo, double hi) const {
    if (sd == 0.0) return (mean >= lo && mean <= hi) ? 1.0 : 0.0;
    return normal_cdf((hi - mean) / sd) - normal_cdf((lo - mean) / sd);
  }
};

Normal gaussian_marginal(const GaussianState& s, const SymplecticVector& zeta) {
  if (zeta.modes() != s.modes()) throw DimensionError("observable and state have different mode counts");
  return {zeta.coords().dot(s.mean()), std::sqrt(zeta.coords().dot(s.covariance() * zeta.coords()))};
}

void require_nonzero(const SymplecticVector& zeta) {
  if (zeta.norm() == 0.0) throw PreconditionError("homodyne observable must be nonzero");
}

double simpson(const FockHomodyne& h, double lo, double hi, int intervals) {
  const double step = (hi - lo) / intervals;
  double s = h.density(lo) + h.density(hi);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * h.density(lo + i * step);
  return s * step / 3.0;
}

}  // namespace

std::vector<double> BinSpec::edges() const {
  if (count < 1 || !(max > min)) throw PreconditionError("bins need count >= 1 and max > min");
  std::vector<double> e(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) e[static_cast<std::size_t>(i)] = min + (max - min) * i / count;
  return e;
}

int BinSpec::locate(double x) const {
  if (!(x >= min && x < max)) return -1;
  const int i = static_cast<int>((x - min) / (max - min) * count);
  return std::min(i, count - 1);
}

double OutcomeDistribution::total() const {
  double t = 0.0;
  for (double m : masses) t += m;
  return t;
}

IntervalSet clip(const IntervalSet& x, double lo, double hi) {
  IntervalSet out;
  for (const auto& i : x) {
    const double a = std::max(i.lo, lo);
    const double b = std::min(i.hi, hi);
    if (b > a) out.push_back({a, b});
  }
  return out;
}

FockHomodyne::FockHomodyne(const FockDensityOperator& rho, const SymplecticVector& zeta)
    : zeta_(zeta), scale_(zeta.norm()) {
  require_nonzero(zeta);
  const int m = rho.modes();
  if (zeta.modes() != m) throw DimensionError("observable and state have different mode counts");
  const SymplecticVector unit = zeta * (1.0 / scale_);
  const SymplecticMatrix s = context_to_standard_basis(Context({unit}));
  const bool trivial = (s.matrix() - Mat::Identity(2 * m, 2 * m)).cwiseAbs().maxCoeff() < 1e-14;
  const FockDensityOperator rotated = trivial ? rho : apply_gaussian_unitary(rho, s.inverse(), Vec::Zero(2 * m));

  const int c = rho.cutoff();
  const int rest = fock::dimension(m, c) / c;
  reduced_ = Mat::Zero(c, c);
  for (int a = 0; a < c; ++a) {
    for (int b = 0; b < c; ++b) {
      cplx t = 0.0;
      for (int r = 0; r < rest; ++r) t += rotated.matrix()(a * rest + r, b * rest + r);
      reduced_(a, b) = t.real();
    }
  }
}

double FockHomodyne::density(double x) const {
  const double u = x / scale_;
  const auto psi = fock::hermite_functions(static_cast<int>(reduced_.rows()), u);
  const Eigen::Map<const Vec> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
  return std::max(0.0, v.dot(reduced_ * v)) / scale_;
}

QuadratureDensity FockHomodyne::tabulate(double lo, double hi, int points) const {
  QuadratureDensity d{zeta_, std::vector<double>(static_cast<std::size_t>(points)),
                      std::vector<double>(static_cast<std::size_t>(points))};
  for (int i = 0; i < points; ++i) {
    const double x = points > 1 ? lo + (hi - lo) * i / (points - 1) : lo;
    d.x[static_cast<std::size_t>(i)] = x;
    d.density[static_cast<std::size_t>(i)] = density(x);
  }
  return d;
}

double FockHomodyne::support() const {
  return scale_ * (std::sqrt(2.0 * static_cast<double>(reduced_.rows()) + 1.0) + 8.0);
}

OutcomeDistribution quantum_homodyne_distribution(const State& rho, const SymplecticVector& zeta, const BinSpec& bins) {
  require_nonzero(zeta);
  OutcomeDistribution d{bins.edges(), std::vector<double>(static_cast<std::size_t>(bins.count))};
  if (const auto* g = std::get_if<GaussianState>(&rho)) {
    const Normal n = gaussian_marginal(*g, zeta);
    for (int i = 0; i < bins.count; ++i) {
      d.masses[static_cast<std::size_t>(i)] = n.mass(d.bin_edges[static_cast<std::size_t>(i)], d.bin_edges[static_cast<std::size_t>(i) + 1]);
    }
    return d;
  }
  const FockHomodyne h(std::get<FockDensityOperator>(rho), zeta);
  const int per_bin = 2 * ((kHomodyneAxisPoints + 2 * bins.count - 1) / (2 * bins.count));
  for (int i = 0; i < bins.count; ++i) {
    d.masses[static_cast<std::size_t>(i)] =
        std::max(0.0, simpson(h, d.bin_edges[static_cast<std::size_t>(i)], d.bin_edges[static_cast<std::size_t>(i) + 1], per_bin));
  }
  return d;
}

Expectation expectation(const State& rho, const PolynomialObservable& obs) {
  const FockDensityOperator f = std::holds_alternative<FockDensityOperator>(rho)
                                    ? std::get<FockDensityOperator>(rho)
                                    : gaussian_to_fock(std::get<GaussianState>(rho), kDefaultCutoff);
  if (obs.modes() != f.modes()) throw DimensionError("observable and state have different mode counts");
  if (2 * obs.poly().degree() >= f.cutoff()) throw PreconditionError("observable degree exceeds the trusted block");
  const CMat q = quantize_polynomial(obs, f.cutoff());
  const double value = (f.matrix().cwiseProduct(q.transpose())).sum().real();
  const double norm = q.cwiseAbs().rowwise().sum().maxCoeff();
  const Expectation e{value, f.leakage() * norm};
  if (e.error_bound > 1e-3 * std::max(1.0, std::abs(value))) {
    throw InadequacyError("truncation error bound of the expectation value is too large");
  }
  return e;
}

double event_probability(const State& rho, const SymplecticVector& zeta, const IntervalSet& x) {
  require_nonzero(zeta);
  const double inf = std::numeric_limits<double>::infinity();
  if (const auto* g = std::get_if<GaussianState>(&rho)) {
    const Normal n = gaussian_marginal(*g, zeta);
    double p = 0.0;
    for (const auto& i : clip(x, -inf, inf)) p += n.mass(i.lo, i.hi);
    return p;
  }
  const FockHomodyne h(std::get<FockDensityOperator>(rho), zeta);
  const double s = h.support();
  double p = 0.0;
  for (const auto& i : clip(x, -s, s)) {
    p += boost::math::quadrature::gauss_kronrod<double, 61>::integrate([&](double t) { return h.density(t); }, i.lo,
                                                                        i.hi, 15, 1e-12);
  }
  return p;
}

double tv_distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  if (a.bin_edges != b.bin_edges || a.masses.size() != b.masses.size()) {
    throw DimensionError("distributions have different bins");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.masses.size(); ++i) s += std::abs(a.masses[i] - b.masses[i]);
  return 0.5 * s;
}

void write_distribution_csv(const OutcomeDistribution& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out.precision(17);
  out << "bin_left,bin_right,mass\n";
  for (std::size_t i = 0; i < d.masses.size(); ++i) {
    out << d.bin_edges[i] << ',' << d.bin_edges[i + 1] << ',' << d.masses[i] << '\n';
  }
}

}  // namespace cvw
