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

#include "cvwigner/wigner.hpp"

#include <cmath>
#include <numbers>

#include "cvwigner/fock.hpp"
#include "cvwigner/parallel.hpp"

namespace cvw {
namespace {

using RowCMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_modes(int a, int b) {
  if (a != b) throw DimensionError("grid and state have different mode counts");
}

// Per-mode weight matrix w(a, b) evaluated at one phase-space node (q, p);
// the grid value is sum_{a,b} rho_{ab} prod_j w_j(a_j, b_j).
using ModeKernel = void (*)(double q, double p, int cutoff, CMat& out);

void characteristic_kernel(double q, double p, int cutoff, CMat& out) {
  // tr[rho D] = sum rho_ab D_ba
  out = fock::displacement(fock::mode_amplitude(q, p), cutoff).transpose();
}

void wigner_kernel(double q, double p, int cutoff, CMat& out) { fock::wigner_kernels(q, p, cutoff, out); }

std::vector<cplx> contract_on_grid(const FockDensityOperator& rho, const GridSpec& grid, ModeKernel kernel) {
  const int m = rho.modes();
  check_modes(grid.modes(), m);
  if (m > 2) throw PreconditionError("grid evaluation of Fock states supports at most two modes");
  const int n = rho.cutoff();
  const CMat& mat = rho.matrix();
  std::vector<cplx> values(grid.size());
  const auto& axes = grid.axes();
  if (m == 1) {
    const int nq = axes[0].points;
    const int np = axes[1].points;
    parallel_for(static_cast<std::size_t>(nq) * np, [&](std::size_t i) {
      CMat w;
      kernel(axes[0].node(static_cast<int>(i) / np), axes[1].node(static_cast<int>(i) % np), n, w);
      values[i] = (mat.array() * w.array()).sum();
    });
    return values;
  }
  // Two modes: axes (q1, q2, p1, p2); contract mode 1 first, then mode 2.
  const int nq1 = axes[0].points, nq2 = axes[1].points, np1 = axes[2].points, np2 = axes[3].points;
  const std::size_t nodes2 = static_cast<std::size_t>(nq2) * np2;
  std::vector<CMat> k2(nodes2);
  parallel_for(nodes2, [&](std::size_t i) {
    kernel(axes[1].node(static_cast<int>(i) / np2), axes[3].node(static_cast<int>(i) % np2), n, k2[i]);
  });
  const std::size_t nodes1 = static_cast<std::size_t>(nq1) * np1;
  parallel_for(nodes1, [&](std::size_t i) {
    const int iq1 = static_cast<int>(i) / np1;
    const int ip1 = static_cast<int>(i) % np1;
    CMat w1;
    kernel(axes[0].node(iq1), axes[2].node(ip1), n, w1);
    CMat reduced = CMat::Zero(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (w1(a, b) != cplx(0.0)) reduced += w1(a, b) * mat.block(a * n, b * n, n, n);
      }
    }
    for (int iq2 = 0; iq2 < nq2; ++iq2) {
      for (int ip2 = 0; ip2 < np2; ++ip2) {
        const std::size_t flat =
            ((static_cast<std::size_t>(iq1) * nq2 + iq2) * np1 + ip1) * np2 + static_cast<std::size_t>(ip2);
        values[flat] = (reduced.array() * k2[static_cast<std::size_t>(iq2) * np2 + ip2].array()).sum();
      }
    }
  });
  return values;
}

// T'[o, j, i] = sum_l M[j, l] T[o, l, i] along axis k of a row-major tensor.
std::vector<cplx> transform_axis(const std::vector<cplx>& t, std::vector<int>& dims, int k, const CMat& m) {
  std::size_t outer = 1, inner = 1;
  for (int i = 0; i < k; ++i) outer *= static_cast<std::size_t>(dims[static_cast<std::size_t>(i)]);
  for (std::size_t i = static_cast<std::size_t>(k) + 1; i < dims.size(); ++i) inner *= static_cast<std::size_t>(dims[i]);
  const auto din = static_cast<Eigen::Index>(dims[static_cast<std::size_t>(k)]);
  const Eigen::Index dout = m.rows();
  std::vector<cplx> out(outer * static_cast<std::size_t>(dout) * inner);
  const auto in_cols = static_cast<Eigen::Index>(inner);
  parallel_for(outer, [&](std::size_t o) {
    Eigen::Map<const RowCMat> src(t.data() + o * static_cast<std::size_t>(din) * inner, din, in_cols);
    Eigen::Map<RowCMat> dst(out.data() + o * static_cast<std::size_t>(dout) * inner, dout, in_cols);
    dst.noalias() = m * src;
  });
  dims[static_cast<std::size_t>(k)] = static_cast<int>(dout);
  return out;
}

}  // namespace

GridSpec default_wigner_grid(int modes) { return GridSpec::symmetric(modes, 6.0, modes == 1 ? 257 : 33); }

GridSpec default_wigner_grid(const StateSpec& spec) {
  const double window = spec.kind == "gkp" ? 10.0 : 6.0;
  return GridSpec::symmetric(spec.modes, window, spec.modes == 1 ? 257 : 33);
}

GridSpec default_characteristic_grid(int modes) {
  return modes == 1 ? GridSpec::symmetric(1, 16.0, 321) : GridSpec::symmetric(modes, 12.0, 49);
}

WignerGrid wigner_gaussian(const GaussianState& s, const GridSpec& grid) {
  check_modes(grid.modes(), s.modes());
  const int m = s.modes();
  Eigen::LLT<Mat> llt(s.covariance());
  if (llt.info() != Eigen::Success) throw PreconditionError("Gaussian Wigner function needs an invertible covariance");
  const Mat inv = llt.solve(Mat::Identity(2 * m, 2 * m));
  const double det = s.covariance().determinant();
  const double norm = std::pow(2.0 * std::numbers::pi, -m) / std::sqrt(det);
  WignerGrid w{grid, std::vector<double>(grid.size())};
  parallel_for(grid.size(), [&](std::size_t i) {
    const Vec d = grid.point(i) - s.mean();
    w.values[i] = norm * std::exp(-0.5 * d.dot(inv * d));
  });
  return w;
}

CharacteristicGrid characteristic_function(const FockDensityOperator& rho, const GridSpec& grid) {
  return {grid, contract_on_grid(rho, grid, characteristic_kernel)};
}

CharacteristicGrid characteristic_function(const GaussianState& s, const GridSpec& grid) {
  check_modes(grid.modes(), s.modes());
  CharacteristicGrid chi{grid, std::vector<cplx>(grid.size())};
  parallel_for(grid.size(), [&](std::size_t i) { chi.values[i] = characteristic_at(s, grid.point(i)); });
  return chi;
}

cplx characteristic_at(const GaussianState& s, const Vec& v) {
  if (v.size() != s.mean().size()) throw DimensionError("characteristic point has the wrong size");
  const int m = s.modes();
  const Mat omega = symplectic_form_matrix(m);
  const Vec w = omega.transpose() * v;
  const double phase = v.dot(omega * s.mean());
  return std::exp(cplx(-0.5 * w.dot(s.covariance() * w), phase));
}

cplx characteristic_at(const FockDensityOperator& rho, const Vec& v) {
  if (v.size() != 2 * rho.modes()) throw DimensionError("characteristic point has the wrong size");
  const CMat d = fock::displacement(SymplecticVector(v), rho.cutoff());
  return (rho.matrix().array() * d.transpose().array()).sum();
}

std::vector<cplx> symplectic_fourier(const CharacteristicGrid& chi, const GridSpec& out) {
  const GridSpec& vg = chi.grid;
  const int m = vg.modes();
  check_modes(out.modes(), m);
  const int n = 2 * m;
  std::vector<int> dims;
  for (const Axis& a : vg.axes()) dims.push_back(a.points);
  std::vector<cplx> t = chi.values;
  // [v, z] = sum_j (v_pj z_qj - v_qj z_pj): axis v_qj feeds z_pj with e^{+i v z},
  // axis v_pj feeds z_qj with e^{-i v z}.
  std::vector<int> target(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int to = k < m ? m + k : k - m;
    target[static_cast<std::size_t>(k)] = to;
    const Axis& va = vg.axes()[static_cast<std::size_t>(k)];
    const Axis& za = out.axes()[static_cast<std::size_t>(to)];
    const double sign = k < m ? 1.0 : -1.0;
    CMat f(za.points, va.points);
    for (int j = 0; j < za.points; ++j) {
      for (int l = 0; l < va.points; ++l) f(j, l) = std::polar(va.step(), sign * va.node(l) * za.node(j));
    }
    t = transform_axis(t, dims, k, f);
  }
  // Position k now holds output axis target[k]; reorder into output layout.
  std::vector<std::size_t> stride(static_cast<std::size_t>(n));
  std::size_t acc = 1;
  for (int k = n - 1; k >= 0; --k) {
    stride[static_cast<std::size_t>(k)] = acc;
    acc *= static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]);
  }
  std::vector<cplx> result(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto idx = out.index(i);
    std::size_t src = 0;
    for (int k = 0; k < n; ++k) {
      src += static_cast<std::size_t>(idx[static_cast<std::size_t>(target[static_cast<std::size_t>(k)])]) *
             stride[static_cast<std::size_t>(k)];
    }
    result[i] = t[src];
  }
  return result;
}

WignerGrid wigner_from_characteristic(const CharacteristicGrid& chi, const GridSpec& out) {
  const GridSpec& vg = chi.grid;
  double edge = 0.0;
  for (std::size_t i = 0; i < vg.size(); ++i) {
    if (vg.on_boundary(i)) edge = std::max(edge, std::abs(chi.values[i]));
  }
  if (edge > 1e-8) {
    throw InadequacyError("characteristic function has not decayed at the grid boundary (|chi| = " +
                          std::to_string(edge) + "); widen the v window");
  }
  const std::vector<cplx> t = symplectic_fourier(chi, out);
  const double pref = std::pow(2.0 * std::numbers::pi, -2 * vg.modes());
  WignerGrid w{out, std::vector<double>(out.size())};
  double residue = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const cplx v = pref * t[i];
    residue = std::max(residue, std::abs(v.imag()));
    w.values[i] = v.real();
  }
  if (residue > 1e-8) {
    throw InadequacyError("Fourier route left an imaginary part of " + std::to_string(residue));
  }
  return w;
}

WignerGrid wigner_fock_direct(const FockDensityOperator& rho, const GridSpec& grid) {
  const auto values = contract_on_grid(rho, grid, wigner_kernel);
  WignerGrid w{grid, std::vector<double>(values.size())};
  for (std::size_t i = 0; i < values.size(); ++i) w.values[i] = values[i].real();
  return w;
}

WignerGrid wigner(const State& state, const GridSpec& grid) {
  if (const auto* g = std::get_if<GaussianState>(&state)) return wigner_gaussian(*g, grid);
  return wigner_fock_direct(std::get<FockDensityOperator>(state), grid);
}

double negativity_volume(const WignerGrid& w) { return w.abs_integral() - w.integral(); }

double log_negativity(const WignerGrid& w) { return std::log(w.abs_integral()); }

MinValue min_value(const WignerGrid& w) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < w.values.size(); ++i) {
    if (w.values[i] < w.values[best]) best = i;
  }
  return {w.values[best], w.grid.point(best)};
}

nlohmann::json wigner_summary(const WignerGrid& w) {
  const MinValue mv = min_value(w);
  return {{"axes", w.grid.to_json()},
          {"cell_volume", w.grid.cell_volume()},
          {"normalization", w.integral()},
          {"min", mv.value},
          {"min_location", std::vector<double>(mv.location.data(), mv.location.data() + mv.location.size())},
          {"negativity_volume", negativity_volume(w)},
          {"log_negativity", log_negativity(w)}};
}

std::string to_string(HudsonClass c) {
  return c == HudsonClass::gaussian_nonnegative ? "gaussian_nonnegative" : "negative";
}

HudsonReport hudson_classify(const State& state, const GridSpec& grid) {
  const double purity = std::visit([](const auto& s) { return s.purity(); }, state);
  if (!(purity > 1.0 - 1e-6)) {
    throw PreconditionError("Hudson classification needs a pure state (purity " + std::to_string(purity) + ")");
  }
  const WignerGrid w = wigner(state, grid);
  const MinValue mv = min_value(w);
  const double max_abs = w.max_abs();
  HudsonReport r;
  r.purity = purity;
  r.min_value = mv.value;
  r.max_abs = max_abs;
  r.classification = mv.value >= -1e-6 * max_abs ? HudsonClass::gaussian_nonnegative : HudsonClass::negative;

  const int m = grid.modes();
  const double total = w.integral() / grid.cell_volume();
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int a = 0; a < 4; ++a) {
      const double theta = a * std::numbers::pi / 4.0;
      const double c = std::cos(theta), s = std::sin(theta);
      double mean = 0.0;
      for (std::size_t i = 0; i < w.values.size(); ++i) {
        const Vec z = grid.point(i);
        mean += w.values[i] * (c * z[j] + s * z[m + j]);
      }
      mean /= total;
      double c2 = 0.0, c4 = 0.0;
      for (std::size_t i = 0; i < w.values.size(); ++i) {
        const Vec z = grid.point(i);
        const double x = c * z[j] + s * z[m + j] - mean;
        c2 += w.values[i] * x * x;
        c4 += w.values[i] * x * x * x * x;
      }
      c2 /= total;
      c4 /= total;
      worst = std::max(worst, std::abs(c4 / (c2 * c2) - 3.0));
    }
  }
  r.max_excess_kurtosis = worst;
  r.gaussianity_consistent = (worst < 1e-3) == (r.classification == HudsonClass::gaussian_nonnegative);
  return r;
}

}  // namespace cvw
