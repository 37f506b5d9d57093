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

#include "cvwigner/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvwigner/fock.hpp"
#include "cvwigner/parallel.hpp"
#include "cvwigner/quadrature.hpp"
#include "cvwigner/wigner.hpp"

namespace cvw {
namespace {

// Appends every word of prod_l (sum_a zeta_{g_l, a} R_a) to `out`.
void expand_sequence(const std::vector<const SymplecticVector*>& seq, std::size_t pos, int modes,
                     std::vector<std::string>& words, double coef, std::map<std::vector<std::string>, cplx>& out) {
  if (pos == seq.size()) {
    out[words] += coef;
    return;
  }
  const SymplecticVector& z = *seq[pos];
  for (int a = 0; a < 2 * modes; ++a) {
    if (z[a] == 0.0) continue;
    const int mode = a % modes;
    words[static_cast<std::size_t>(mode)].push_back(a < modes ? 'q' : 'p');
    expand_sequence(seq, pos + 1, modes, words, coef * z[a], out);
    words[static_cast<std::size_t>(mode)].pop_back();
  }
}

CMat word_matrix(const std::string& word, int cutoff) {
  if (word.empty()) return CMat::Identity(cutoff, cutoff);
  const int pad = cutoff + static_cast<int>(word.size());
  const SpCMat q = fock::position(pad);
  const SpCMat p = fock::momentum(pad);
  SpCMat acc = fock::identity(pad);
  for (char c : word) acc = SpCMat(acc * (c == 'q' ? q : p));
  return CMat(acc).topLeftCorner(cutoff, cutoff);
}

// Single-mode damped symbol (2 pi)^{-1} sum_v tr[A D(v)] e^{-sigma^2 v^2/2} e^{-i[v,z]} dv
// of a banded operator, on the (q, p) nodes of `out`.
std::vector<double> damped_symbol(const CMat& a, int band, const GridSpec& vgrid, const GridSpec& out, double sigma) {
  const int n = static_cast<int>(a.rows());
  CharacteristicGrid chi{vgrid, std::vector<cplx>(vgrid.size())};
  const auto& ax = vgrid.axes();
  const int np = ax[1].points;
  parallel_for(vgrid.size(), [&](std::size_t i) {
    const double vq = ax[0].node(static_cast<int>(i) / np);
    const double vp = ax[1].node(static_cast<int>(i) % np);
    CMat d;
    fock::displacement_band(fock::mode_amplitude(vq, vp), n, band, d);
    cplx s = 0.0;
    for (int r = 0; r < n; ++r) {
      for (int c = std::max(0, r - band); c <= std::min(n - 1, r + band); ++c) s += a(r, c) * d(c, r);
    }
    chi.values[i] = s * std::exp(-0.5 * sigma * sigma * (vq * vq + vp * vp));
  });
  const auto t = symplectic_fourier(chi, out);
  std::vector<double> sym(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) sym[i] = t[i].real() / (2.0 * std::numbers::pi);
  return sym;
}

}  // namespace

QuadratureOperator quantize_linear(const SymplecticVector& zeta, int cutoff) {
  const int m = zeta.modes();
  const auto r = fock::quadratures(m, cutoff);
  SpCMat acc(r.front().rows(), r.front().cols());
  for (int a = 0; a < 2 * m; ++a) {
    if (zeta[a] != 0.0) acc += r[static_cast<std::size_t>(a)] * cplx(zeta[a]);
  }
  return {CMat(acc), zeta};
}

int WordExpansion::degree() const {
  int d = 0;
  for (const auto& [words, c] : terms) {
    int s = 0;
    for (const auto& w : words) s += static_cast<int>(w.size());
    d = std::max(d, s);
  }
  return d;
}

WordExpansion weyl_expansion(const PolynomialObservable& obs) {
  const int m = obs.modes();
  WordExpansion out;
  out.modes = m;
  const auto& gens = obs.context().generators();
  for (const auto& term : obs.poly().terms()) {
    if (term.coefficient == 0.0) continue;
    std::vector<int> labels;
    for (std::size_t i = 0; i < term.exponents.size(); ++i) labels.insert(labels.end(), static_cast<std::size_t>(term.exponents[i]), static_cast<int>(i));
    std::sort(labels.begin(), labels.end());
    std::vector<std::vector<int>> perms;
    do {
      perms.push_back(labels);
    } while (std::next_permutation(labels.begin(), labels.end()));
    const double weight = term.coefficient / static_cast<double>(perms.size());
    for (const auto& perm : perms) {
      std::vector<const SymplecticVector*> seq;
      for (int g : perm) seq.push_back(&gens[static_cast<std::size_t>(g)]);
      std::vector<std::string> words(static_cast<std::size_t>(m));
      expand_sequence(seq, 0, m, words, weight, out.terms);
    }
  }
  return out;
}

CMat materialize(const WordExpansion& words, int cutoff) {
  const int m = words.modes;
  const int dim = fock::dimension(m, cutoff);
  std::map<std::string, CMat> cache;
  auto get = [&](const std::string& w) -> const CMat& {
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, word_matrix(w, cutoff)).first;
    return it->second;
  };
  CMat out = CMat::Zero(dim, dim);
  for (const auto& [key, c] : words.terms) {
    if (c == cplx(0.0)) continue;
    CMat t = get(key[0]);
    for (int j = 1; j < m; ++j) t = fock::kron(t, get(key[static_cast<std::size_t>(j)]));
    out += c * t;
  }
  return out;
}

CMat quantize_polynomial(const PolynomialObservable& obs, int cutoff) {
  return materialize(weyl_expansion(obs), cutoff);
}

CMat plain_product(const PolynomialObservable& obs, int cutoff) {
  const int m = obs.modes();
  const int dim = fock::dimension(m, cutoff);
  std::vector<CMat> gen;
  for (const auto& g : obs.context().generators()) gen.push_back(quantize_linear(g, cutoff).matrix);
  CMat out = CMat::Zero(dim, dim);
  for (const auto& term : obs.poly().terms()) {
    CMat t = CMat::Identity(dim, dim);
    for (std::size_t i = 0; i < term.exponents.size(); ++i) {
      for (int e = 0; e < term.exponents[i]; ++e) t = t * gen[i];
    }
    out += term.coefficient * t;
  }
  return out;
}

int trusted_levels(int cutoff, int degree) { return std::max(0, cutoff - 2 * degree + 1); }

double trusted_block_deviation(const CMat& a, const CMat& b, int modes, int cutoff, int keep_levels) {
  const auto idx = fock::low_level_indices(modes, cutoff, keep_levels);
  double worst = 0.0;
  for (int i : idx) {
    for (int j : idx) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  }
  return worst;
}

double smoothed_polynomial(const PolynomialObservable& obs, const Vec& z, double sigma) {
  const auto& gens = obs.context().generators();
  const int k = static_cast<int>(gens.size());
  Mat zmat(k, z.size());
  for (int i = 0; i < k; ++i) zmat.row(i) = gens[static_cast<std::size_t>(i)].coords().transpose();
  const Vec center = zmat * z;
  if (sigma == 0.0) return obs.poly().evaluate(std::vector<double>(center.data(), center.data() + k));
  const Mat chol = Eigen::LLT<Mat>(zmat * zmat.transpose()).matrixL();
  const int nodes = PolynomialObservable::kMaxDegree / 2 + 1;
  const GaussRule rule = gauss_hermite_normal(nodes);
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  double total = 0.0;
  Vec eta(k);
  while (true) {
    double w = 1.0;
    for (int i = 0; i < k; ++i) {
      eta[i] = rule.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      w *= rule.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    const Vec y = center + sigma * chol * eta;
    total += w * obs.poly().evaluate(std::vector<double>(y.data(), y.data() + k));
    int pos = 0;
    while (pos < k && ++idx[static_cast<std::size_t>(pos)] == nodes) idx[static_cast<std::size_t>(pos++)] = 0;
    if (pos == k) break;
  }
  return total;
}

nlohmann::json MultiplicativityReport::to_json() const {
  return {{"case", name},
          {"sup_norm_deviation", sup_norm_deviation},
          {"worst_location", std::vector<double>(worst_location.data(), worst_location.data() + worst_location.size())},
          {"trusted_window", trusted_window},
          {"cutoff", cutoff},
          {"damping_sigma", kDampingSigma},
          {"offset_at_origin", offset_at_origin},
          {"pass", pass},
          {"flagged", flagged}};
}

MultiplicativityReport check_wigner_multiplicativity(const PolynomialObservable& obs, const GridSpec& grid,
                                                     int cutoff, const std::string& name) {
  const int m = obs.modes();
  if (grid.modes() != m) throw DimensionError("grid and observable have different mode counts");
  const WordExpansion words = weyl_expansion(obs);
  const GridSpec vgrid = GridSpec::symmetric(1, 18.0, 361);

  // Per-mode symbols of every distinct word, on that mode's (q_j, p_j) nodes.
  std::map<std::pair<int, std::string>, std::vector<double>> symbols;
  for (const auto& [key, c] : words.terms) {
    for (int j = 0; j < m; ++j) {
      const std::string& w = key[static_cast<std::size_t>(j)];
      if (symbols.count({j, w})) continue;
      const GridSpec mode_grid({grid.axes()[static_cast<std::size_t>(j)], grid.axes()[static_cast<std::size_t>(m + j)]});
      symbols[{j, w}] = damped_symbol(word_matrix(w, cutoff), static_cast<int>(w.size()), vgrid, mode_grid, kDampingSigma);
    }
  }

  double window = kTrustedWindow;
  for (const Axis& a : grid.axes()) window = std::min({window, -a.min, a.max});
  MultiplicativityReport r;
  r.name = name;
  r.trusted_window = window;
  r.cutoff = cutoff;
  r.sup_norm_deviation = 0.0;
  r.worst_location = Vec::Zero(2 * m);
  double best_origin = std::numeric_limits<double>::infinity();
  r.offset_at_origin = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec z = grid.point(i);
    if (z.cwiseAbs().maxCoeff() > window + 1e-12) continue;
    const auto idx = grid.index(i);
    double s = 0.0;
    for (const auto& [key, c] : words.terms) {
      double t = c.real();
      for (int j = 0; j < m; ++j) {
        const auto& sym = symbols.at({j, key[static_cast<std::size_t>(j)]});
        const int np = grid.axes()[static_cast<std::size_t>(m + j)].points;
        t *= sym[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)]) * np + idx[static_cast<std::size_t>(m + j)]];
      }
      s += t;
    }
    const double dev = std::abs(s - smoothed_polynomial(obs, z, kDampingSigma));
    if (dev > r.sup_norm_deviation) {
      r.sup_norm_deviation = dev;
      r.worst_location = z;
    }
    if (z.norm() < best_origin) {
      best_origin = z.norm();
      r.offset_at_origin = s - obs.evaluate(z);
    }
  }
  r.pass = r.sup_norm_deviation < kMultiplicativityTolerance;
  r.flagged = !r.pass && r.worst_location.cwiseAbs().maxCoeff() > 0.5 * window;
  return r;
}

static int metaplectic_pad(int modes, int cutoff) {
  int pad = cutoff;
  while (pad < cutoff + (modes == 1 ? 40 : 10) && std::pow(pad + 1.0, modes) <= fock::kMaxDimension) ++pad;
  return pad;
}

CMat conjugate_by_metaplectic(const CMat& op, const SymplecticMatrix& s, int cutoff) {
  const int m = s.modes();
  if (op.rows() != fock::dimension(m, cutoff)) throw DimensionError("operator size does not match the cutoff");
  const int pad = metaplectic_pad(m, cutoff);
  // U_S = G_S^dag, so U op U^dag = G^dag op G.
  const CMat g = fock::gaussian_unitary(s, pad);
  const CMat big = fock::extend_levels(op, m, cutoff, pad);
  return fock::restrict_levels(CMat(g.adjoint() * big * g), m, pad, cutoff);
}

double metaplectic_covariance_deviation(const SymplecticVector& zeta, const SymplecticMatrix& s, int cutoff, int keep) {
  const int m = zeta.modes();
  if (s.modes() != m) throw DimensionError("symplectic matrix and vector sizes differ");
  // The quadrature is built on the padded space so that only the unitary is truncated.
  const int pad = metaplectic_pad(m, cutoff);
  const CMat g = fock::gaussian_unitary(s, pad);
  const CMat conj =
      fock::restrict_levels(CMat(g.adjoint() * quantize_linear(zeta, pad).matrix * g), m, pad, cutoff);
  const SymplecticVector image(s.matrix().transpose() * zeta.coords());
  const CMat target = quantize_linear(image, cutoff).matrix;
  return trusted_block_deviation(conj, target, m, cutoff, keep);
}

}  // namespace cvw
