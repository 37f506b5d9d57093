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

#include "cvwigner/fock.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace cvw::fock {
namespace {

int ipow(int base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > (1LL << 30)) return -1;
  }
  return static_cast<int>(r);
}

// Maps each index of the `to` space to the `from` space, or -1 when one of
// its per-mode levels does not exist there.
std::vector<int> level_map(int modes, int from, int to) {
  const int dim_to = ipow(to, modes);
  std::vector<int> map(static_cast<std::size_t>(dim_to), -1);
  std::vector<int> digits(static_cast<std::size_t>(modes), 0);
  for (int idx = 0; idx < dim_to; ++idx) {
    int rem = idx;
    for (int j = modes - 1; j >= 0; --j) {
      digits[static_cast<std::size_t>(j)] = rem % to;
      rem /= to;
    }
    int src = 0;
    bool ok = true;
    for (int j = 0; j < modes; ++j) {
      const int d = digits[static_cast<std::size_t>(j)];
      if (d >= from) {
        ok = false;
        break;
      }
      src = src * from + d;
    }
    map[static_cast<std::size_t>(idx)] = ok ? src : -1;
  }
  return map;
}

// exp(-i H) for a sparse Hermitian H, exponentiated separately on each
// connected component of its sparsity graph. Number-conserving and
// single-mode generators split into small blocks this way.
SpCMat exp_minus_i_hermitian(const SpCMat& h) {
  const int dim = static_cast<int>(h.rows());
  std::vector<int> parent(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int k = 0; k < h.outerSize(); ++k) {
    for (SpCMat::InnerIterator it(h, k); it; ++it) {
      if (it.value() == cplx(0.0)) continue;
      const int a = find(static_cast<int>(it.row()));
      const int b = find(static_cast<int>(it.col()));
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) blocks[static_cast<std::size_t>(find(i))].push_back(i);
  const CMat dense(h);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (const auto& idx : blocks) {
    if (idx.empty()) continue;
    const auto n = static_cast<Eigen::Index>(idx.size());
    CMat sub(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = dense(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    sub = 0.5 * (sub + sub.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMat> eig(sub);
    const CVec phases = (-cplx(0.0, 1.0) * eig.eigenvalues().cast<cplx>()).array().exp();
    const CMat e = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (e(i, j) != cplx(0.0)) trip.emplace_back(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)], e(i, j));
      }
    }
  }
  SpCMat out(dim, dim);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace

int dimension(int modes, int cutoff) {
  if (modes < 1 || cutoff < 1) throw PreconditionError("Fock space needs modes >= 1 and cutoff >= 1");
  const int d = ipow(cutoff, modes);
  if (d < 0 || d > kMaxDimension) {
    throw InadequacyError("Fock dimension cutoff^modes exceeds the dense storage cap of 4096");
  }
  return d;
}

SpCMat annihilation(int cutoff) {
  SpCMat a(cutoff, cutoff);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int n = 1; n < cutoff; ++n) t.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SpCMat identity(int dim) {
  SpCMat id(dim, dim);
  id.setIdentity();
  return id;
}

SpCMat kron(const SpCMat& a, const SpCMat& b) {
  SpCMat out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SpCMat::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SpCMat::InnerIterator ib(b, kb); ib; ++ib) {
          t.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                         static_cast<int>(ia.col() * b.cols() + ib.col()), ia.value() * ib.value());
        }
      }
    }
  }
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SpCMat embed(const SpCMat& single, int mode, int modes, int cutoff) {
  SpCMat out = mode == 0 ? single : identity(cutoff);
  for (int j = 1; j < modes; ++j) out = kron(out, j == mode ? single : identity(cutoff));
  return out;
}

SpCMat position(int cutoff) {
  const SpCMat a = annihilation(cutoff);
  return SpCMat((SpCMat(a.adjoint()) + a) / std::sqrt(2.0));
}

SpCMat momentum(int cutoff) {
  const SpCMat a = annihilation(cutoff);
  return SpCMat((a - SpCMat(a.adjoint())) * cplx(0.0, -1.0 / std::sqrt(2.0)));
}

std::vector<SpCMat> quadratures(int modes, int cutoff) {
  dimension(modes, cutoff);
  std::vector<SpCMat> r;
  const SpCMat q = position(cutoff);
  const SpCMat p = momentum(cutoff);
  for (int j = 0; j < modes; ++j) r.push_back(embed(q, j, modes, cutoff));
  for (int j = 0; j < modes; ++j) r.push_back(embed(p, j, modes, cutoff));
  return r;
}

void displacement_band(cplx alpha, int cutoff, int band, CMat& out) {
  out.setZero(cutoff, cutoff);
  const double x = std::norm(alpha);
  if (x == 0.0) {
    out.setIdentity();
    return;
  }
  const double log_abs = 0.5 * std::log(x);
  const double theta = std::arg(alpha);
  const int max_k = std::min(band, cutoff - 1);
  std::vector<double> lag(static_cast<std::size_t>(cutoff));
  for (int k = 0; k <= max_k; ++k) {
    const int count = cutoff - k;
    // L_n^{(k)}(x) for n < count
    lag[0] = 1.0;
    if (count > 1) lag[1] = 1.0 + k - x;
    for (int n = 1; n + 1 < count; ++n) {
      lag[static_cast<std::size_t>(n + 1)] =
          ((2.0 * n + 1.0 + k - x) * lag[static_cast<std::size_t>(n)] - (n + k) * lag[static_cast<std::size_t>(n - 1)]) / (n + 1.0);
    }
    // sqrt(n!/(n+k)!) |alpha|^k e^{-x/2}, carried along n.
    double pref = std::exp(k * log_abs - 0.5 * x - 0.5 * std::lgamma(k + 1.0));
    const cplx phase_lower = std::polar(1.0, k * theta);                              // alpha^k / |alpha|^k
    const cplx phase_upper = std::polar(1.0, -k * theta) * ((k % 2 == 0) ? 1.0 : -1.0);  // (-conj alpha)^k / |alpha|^k
    for (int n = 0; n < count; ++n) {
      if (n > 0) pref *= std::sqrt(static_cast<double>(n) / (n + k));
      const double mag = pref * lag[static_cast<std::size_t>(n)];
      out(n + k, n) = mag * phase_lower;
      if (k > 0) out(n, n + k) = mag * phase_upper;
    }
  }
}

CMat displacement(cplx alpha, int cutoff) {
  CMat out;
  displacement_band(alpha, cutoff, cutoff, out);
  return out;
}

void wigner_kernels(double q, double p, int cutoff, CMat& out) {
  // W_{|m><n|}(alpha) = (-1)^n / pi * <m|D(2 conj(alpha))|n> in this convention.
  const cplx alpha = mode_amplitude(q, p);
  displacement_band(2.0 * std::conj(alpha), cutoff, cutoff, out);
  for (int n = 0; n < cutoff; ++n) {
    const double sign = (n % 2 == 0 ? 1.0 : -1.0) / std::numbers::pi;
    out.col(n) *= sign;
  }
}

std::vector<double> hermite_functions(int count, double x) {
  std::vector<double> psi(static_cast<std::size_t>(count), 0.0);
  if (count == 0) return psi;
  double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  psi[0] = 1.0;
  if (count > 1) psi[1] = std::sqrt(2.0) * x;
  for (int n = 1; n + 1 < count; ++n) {
    psi[static_cast<std::size_t>(n + 1)] = std::sqrt(2.0 / (n + 1)) * x * psi[static_cast<std::size_t>(n)] -
                                           std::sqrt(static_cast<double>(n) / (n + 1)) * psi[static_cast<std::size_t>(n - 1)];
    if (std::abs(psi[static_cast<std::size_t>(n + 1)]) > 1e150) {
      for (int j = 0; j <= n + 1; ++j) psi[static_cast<std::size_t>(j)] *= 1e-150;
      log_scale += 150.0 * std::log(10.0);
    }
  }
  for (auto& v : psi) {
    if (v != 0.0) v = std::copysign(std::exp(std::log(std::abs(v)) + log_scale), v);
  }
  return psi;
}

CVec coherent_amplitudes(cplx alpha, int cutoff) {
  CVec c(cutoff);
  const double x = std::norm(alpha);
  for (int n = 0; n < cutoff; ++n) {
    if (x == 0.0) {
      c[n] = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double mag = std::exp(-0.5 * x + n * 0.5 * std::log(x) - 0.5 * std::lgamma(n + 1.0));
    c[n] = std::polar(mag, n * std::arg(alpha));
  }
  return c;
}

std::vector<int> low_level_indices(int modes, int cutoff, int keep) {
  std::vector<int> out;
  const auto map = level_map(modes, keep, cutoff);
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] >= 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

CMat restrict_levels(const CMat& m, int modes, int from, int to) {
  const auto idx = low_level_indices(modes, from, to);
  const auto n = static_cast<Eigen::Index>(idx.size());
  CMat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  return out;
}

CMat extend_levels(const CMat& m, int modes, int from, int to) {
  const auto idx = low_level_indices(modes, to, from);
  const int dim = dimension(modes, to);
  CMat out = CMat::Zero(dim, dim);
  const auto n = static_cast<Eigen::Index>(idx.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]) = m(i, j);
  }
  return out;
}

// exp(-i a^dag A a) with e^{-iA} = u for the passive symplectic
// [[X, -Y], [Y, X]], u = X + iY.
SpCMat passive_unitary(const Mat& o, int cutoff) {
  const int m = static_cast<int>(o.rows() / 2);
  const int dim = dimension(m, cutoff);
  CMat u(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) u(i, j) = cplx(o(i, j), o(m + i, j));
  }
  if ((u - CMat::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-15) return identity(dim);
  Eigen::ComplexSchur<CMat> schur(u);
  CVec angles(m);
  for (int i = 0; i < m; ++i) angles[i] = -std::arg(schur.matrixT()(i, i));
  const CMat a_herm = schur.matrixU() * angles.asDiagonal() * schur.matrixU().adjoint();
  const SpCMat a1 = annihilation(cutoff);
  std::vector<SpCMat> ladders;
  for (int j = 0; j < m; ++j) ladders.push_back(embed(a1, j, m, cutoff));
  SpCMat gen(dim, dim);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const cplx c = 0.5 * (a_herm(i, j) + std::conj(a_herm(j, i)));
      if (std::abs(c) > 0.0) {
        gen += SpCMat(SpCMat(ladders[static_cast<std::size_t>(i)].adjoint()) * ladders[static_cast<std::size_t>(j)]) * c;
      }
    }
  }
  return exp_minus_i_hermitian(gen);
}

// S(r) = exp(r/2 (a^2 - a^dag^2)), so S(r)^dag q S(r) = e^{-r} q.
CMat squeeze_unitary(double r, int cutoff) {
  if (r == 0.0) return CMat::Identity(cutoff, cutoff);
  const SpCMat a = annihilation(cutoff);
  const SpCMat a2 = a * a;
  const SpCMat gen = SpCMat(a2 - SpCMat(a2.adjoint())) * cplx(0.0, 0.5 * r);
  return CMat(exp_minus_i_hermitian(gen));
}

GaussianFactors gaussian_factors(const SymplecticMatrix& s, int cutoff) {
  const int m = s.modes();
  dimension(m, cutoff);
  const Mat& sm = s.matrix();
  const Mat omega = symplectic_form_matrix(m);

  // S = O P with P = (S^T S)^{1/2}.
  Eigen::SelfAdjointEigenSolver<Mat> gram(sm.transpose() * sm);
  const Vec lam = gram.eigenvalues();
  const Mat& v = gram.eigenvectors();
  const Mat p_inv = v * lam.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
  const Mat o = sm * p_inv;

  // log P = C diag(kappa, -kappa) C^T with C orthogonal symplectic: the
  // eigenvectors x for kappa >= 0 are paired with omega x for -kappa.
  const Vec log_half = 0.5 * lam.array().log().matrix();
  Mat x(2 * m, m);
  Vec kappa(m);
  int found = 0;
  for (int c = 2 * m - 1; c >= 0 && found < m; --c) {
    Vec cand = v.col(c);
    for (int i = 0; i < found; ++i) {
      cand -= x.col(i).dot(cand) * x.col(i);
      const Vec wx = omega * x.col(i);
      cand -= wx.dot(cand) * wx;
    }
    if (cand.norm() < 0.5) continue;
    x.col(found) = cand.normalized();
    kappa[found] = std::max(0.0, log_half[c]);
    ++found;
  }
  if (found != m) throw PreconditionError("could not diagonalize the positive symplectic factor");
  Mat c(2 * m, 2 * m);
  c << x, omega * x;

  GaussianFactors f;
  for (int j = 0; j < m; ++j) f.squeezes.push_back(squeeze_unitary(-kappa[j], cutoff));
  const SpCMat gc = passive_unitary(c, cutoff);
  f.left = passive_unitary(o, cutoff) * gc;
  f.right = SpCMat(gc.adjoint());
  return f;
}

CMat local_product(const std::vector<CMat>& per_mode) {
  CMat out = per_mode.front();
  for (std::size_t j = 1; j < per_mode.size(); ++j) out = kron(out, per_mode[j]);
  return out;
}

CMat conjugate_local(const std::vector<CMat>& per_mode, const CMat& rho) {
  const int m = static_cast<int>(per_mode.size());
  const int cutoff = static_cast<int>(per_mode.front().rows());
  if (m == 1) return per_mode.front() * rho * per_mode.front().adjoint();
  CMat out = rho;
  for (int j = 0; j < m; ++j) {
    const SpCMat u = embed(SpCMat(per_mode[static_cast<std::size_t>(j)].sparseView()), j, m, cutoff);
    CMat tmp = u * out;
    out = tmp * SpCMat(u.adjoint());
  }
  return out;
}

CMat gaussian_unitary(const SymplecticMatrix& s, int cutoff) {
  const GaussianFactors f = gaussian_factors(s, cutoff);
  return f.left * (local_product(f.squeezes) * f.right);
}

CMat conjugate(const GaussianFactors& f, const CMat& rho) {
  CMat tmp = f.right * rho;
  CMat inner = tmp * SpCMat(f.right.adjoint());
  inner = conjugate_local(f.squeezes, inner);
  tmp = f.left * inner;
  return tmp * SpCMat(f.left.adjoint());
}

CMat conjugate_displacement(const SymplecticVector& zeta, int cutoff, const CMat& rho) {
  const int m = zeta.modes();
  std::vector<CMat> per_mode;
  for (int j = 0; j < m; ++j) per_mode.push_back(displacement(mode_amplitude(zeta[j], zeta[m + j]), cutoff));
  return conjugate_local(per_mode, rho);
}

CMat displacement(const SymplecticVector& zeta, int cutoff) {
  const int m = zeta.modes();
  CMat out = displacement(mode_amplitude(zeta[0], zeta[m]), cutoff);
  for (int j = 1; j < m; ++j) out = kron(out, displacement(mode_amplitude(zeta[j], zeta[m + j]), cutoff));
  return out;
}

}  // namespace cvw::fock
