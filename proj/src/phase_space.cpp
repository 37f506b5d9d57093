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

#include "cvwigner/phase_space.hpp"

#include <cmath>
#include <sstream>

namespace cvw {
namespace {

constexpr double kCommuteTol = 1e-12;
constexpr double kSymplecticTol = 1e-10;

void require_same_modes(const SymplecticVector& u, const SymplecticVector& v) {
  if (u.size() != v.size()) {
    std::ostringstream msg;
    msg << "symplectic vectors of dimension " << u.size() << " and " << v.size();
    throw DimensionError(msg.str());
  }
}

// Removes from x its component in span{e_i, f_i} along the symplectic
// complement, given [e_i, f_j] = -delta_ij and isotropic e's and f's.
Vec project_out(const Vec& x, const std::vector<Vec>& es, const std::vector<Vec>& fs, const Mat& omega) {
  Vec out = x;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const double b = es[i].dot(omega * x);
    const double a = -fs[i].dot(omega * x);
    out += a * es[i] + b * fs[i];
  }
  return out;
}

}  // namespace

SymplecticVector::SymplecticVector(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0 || coords_.size() % 2 != 0) {
    throw DimensionError("phase-space vectors need an even, nonzero number of coordinates");
  }
  if (!coords_.allFinite()) throw PreconditionError("phase-space vector has non-finite entries");
}

SymplecticVector::SymplecticVector(std::initializer_list<double> coords)
    : SymplecticVector(Vec(Eigen::Map<const Vec>(coords.begin(), static_cast<Eigen::Index>(coords.size())))) {}

SymplecticVector SymplecticVector::zero(int modes) { return SymplecticVector(Vec::Zero(2 * modes)); }

SymplecticVector SymplecticVector::q_axis(int modes, int mode) {
  Vec c = Vec::Zero(2 * modes);
  c[mode] = 1.0;
  return SymplecticVector(c);
}

SymplecticVector SymplecticVector::p_axis(int modes, int mode) {
  Vec c = Vec::Zero(2 * modes);
  c[modes + mode] = 1.0;
  return SymplecticVector(c);
}

double SymplecticVector::dot(const SymplecticVector& other) const {
  require_same_modes(*this, other);
  return coords_.dot(other.coords_);
}

SymplecticVector SymplecticVector::operator+(const SymplecticVector& o) const {
  require_same_modes(*this, o);
  return SymplecticVector(Vec(coords_ + o.coords_));
}

SymplecticVector SymplecticVector::operator-(const SymplecticVector& o) const {
  require_same_modes(*this, o);
  return SymplecticVector(Vec(coords_ - o.coords_));
}

SymplecticVector SymplecticVector::operator-() const { return SymplecticVector(Vec(-coords_)); }

SymplecticVector SymplecticVector::operator*(double s) const { return SymplecticVector(Vec(coords_ * s)); }

Mat symplectic_form_matrix(int modes) {
  Mat omega = Mat::Zero(2 * modes, 2 * modes);
  omega.topRightCorner(modes, modes) = -Mat::Identity(modes, modes);
  omega.bottomLeftCorner(modes, modes) = Mat::Identity(modes, modes);
  return omega;
}

double symplectic_form(const SymplecticVector& u, const SymplecticVector& v) {
  require_same_modes(u, v);
  const int m = u.modes();
  // u^T omega v = sum_i (u_{p_i} v_{q_i} - u_{q_i} v_{p_i})
  double acc = 0.0;
  for (int i = 0; i < m; ++i) acc += u[m + i] * v[i] - u[i] * v[m + i];
  return acc;
}

bool is_context(std::span<const SymplecticVector> vectors) {
  if (vectors.empty()) throw PreconditionError("a context needs at least one observable");
  const int dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw DimensionError("context generators with different mode counts");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const double scale = std::max(1.0, vectors[i].norm() * vectors[j].norm());
      if (std::abs(symplectic_form(vectors[i], vectors[j])) > kCommuteTol * scale) return false;
    }
  }
  if (static_cast<int>(vectors.size()) > dim) return false;
  Mat rows(static_cast<Eigen::Index>(vectors.size()), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = vectors[i].coords().transpose();
  Eigen::JacobiSVD<Mat> svd(rows);
  const auto& sv = svd.singularValues();
  if (sv[0] == 0.0) return false;
  return sv[sv.size() - 1] > 1e-10 * sv[0];
}

Context::Context(std::vector<SymplecticVector> generators) : generators_(std::move(generators)) {
  if (!is_context(generators_)) {
    throw PreconditionError("observables are not pairwise commuting and linearly independent");
  }
}

SymplecticMatrix::SymplecticMatrix(Mat entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0 || entries_.rows() % 2 != 0) {
    throw DimensionError("symplectic matrices are square with even dimension");
  }
  if (!entries_.allFinite() || symplectic_defect(entries_) > kSymplecticTol * std::max(1.0, entries_.squaredNorm())) {
    throw PreconditionError("matrix is not symplectic");
  }
}

double SymplecticMatrix::symplectic_defect(const Mat& m) {
  const Mat omega = symplectic_form_matrix(static_cast<int>(m.rows() / 2));
  return (m.transpose() * omega * m - omega).cwiseAbs().maxCoeff();
}

SymplecticMatrix SymplecticMatrix::identity(int modes) { return SymplecticMatrix(Mat::Identity(2 * modes, 2 * modes)); }

SymplecticMatrix SymplecticMatrix::rotation(double theta) {
  Mat r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return SymplecticMatrix(r);
}

SymplecticMatrix SymplecticMatrix::squeeze(double r) {
  Mat s = Mat::Zero(2, 2);
  s(0, 0) = std::exp(-r);
  s(1, 1) = std::exp(r);
  return SymplecticMatrix(s);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  // S^{-1} = -omega S^T omega for symplectic S.
  const Mat omega = symplectic_form_matrix(modes());
  return SymplecticMatrix(Mat(-omega * entries_.transpose() * omega));
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
  if (o.modes() != modes()) throw DimensionError("symplectic matrices of different size");
  return SymplecticMatrix(Mat(entries_ * o.entries_));
}

SymplecticMatrix context_to_standard_basis(const Context& ctx) {
  const int m = ctx.modes();
  const int k = ctx.size();
  if (k > m) throw PreconditionError("an isotropic context has at most m generators");
  const Mat omega = symplectic_form_matrix(m);

  Mat z(k, 2 * m);
  for (int i = 0; i < k; ++i) z.row(i) = ctx.generators()[static_cast<std::size_t>(i)].coords().transpose();
  const Mat gram_inv = (z * z.transpose()).inverse();

  // Partners f_i = sum_l (G^{-1})_{li} omega zeta_l satisfy [zeta_j, f_i] = -delta_ij
  // and are mutually isotropic because the zetas are.
  std::vector<Vec> es, fs;
  for (int i = 0; i < k; ++i) es.push_back(z.row(i).transpose());
  for (int i = 0; i < k; ++i) {
    Vec f = Vec::Zero(2 * m);
    for (int l = 0; l < k; ++l) f += gram_inv(l, i) * (omega * z.row(l).transpose());
    fs.push_back(f);
  }

  // Symplectic Gram-Schmidt on the complement, seeded with the standard basis.
  std::vector<Vec> candidates;
  for (int i = 0; i < 2 * m; ++i) candidates.push_back(Vec::Unit(2 * m, i));
  while (static_cast<int>(es.size()) < m) {
    Vec best;
    double best_norm = 0.0;
    for (const auto& c : candidates) {
      Vec r = project_out(project_out(c, es, fs, omega), es, fs, omega);
      const double n = r.norm();
      if (n > best_norm) {
        best_norm = n;
        best = r;
      }
    }
    if (best_norm < 1e-8) throw InadequacyError("symplectic completion lost rank");
    Vec e = best / best_norm;
    Vec f = project_out(Vec(omega * e), es, fs, omega);
    const double pairing = e.dot(omega * f);
    f *= -1.0 / pairing;
    es.push_back(e);
    fs.push_back(f);
  }

  Mat t(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    t.row(i) = es[static_cast<std::size_t>(i)].transpose();
    t.row(m + i) = fs[static_cast<std::size_t>(i)].transpose();
  }
  // Rows of T are then the zetas, so zeta_i^T T^{-1} = e_i^T. T is
  // symplectic by construction.
  const Mat s = -omega * t.transpose() * omega;
  return SymplecticMatrix(s);
}

AdditivityQuadruple make_additivity_quadruple(int modes, int i, int j, double alpha, double beta) {
  if (i == j || i < 0 || j < 0 || i >= modes || j >= modes) {
    throw PreconditionError("additivity quadruple needs two distinct modes");
  }
  return {alpha * SymplecticVector::q_axis(modes, i), beta * SymplecticVector::p_axis(modes, i),
          beta * SymplecticVector::q_axis(modes, j), alpha * SymplecticVector::p_axis(modes, j)};
}

bool lemma1_commutation_identities(const SymplecticVector& u, const SymplecticVector& v,
                                   const SymplecticVector& u_prime, const SymplecticVector& v_prime) {
  const double c1 = symplectic_form(u + v + u_prime + v_prime, u + v - u_prime - v_prime);
  const double c2 = symplectic_form(u + v_prime, v + u_prime);
  const double c3 = symplectic_form(u - v_prime, v - u_prime);
  return std::abs(c1) <= kCommuteTol && std::abs(c2) <= kCommuteTol && std::abs(c3) <= kCommuteTol;
}

double additive_extension_value(const std::function<double(const SymplecticVector&)>& axis_value,
                                const AdditivityQuadruple& quad) {
  const auto& [u, v, up, vp] = quad;
  // Each pair summed below commutes, so lambda splits over it.
  const double plus = (axis_value(u) + axis_value(vp)) + (axis_value(v) + axis_value(up));
  const double minus = (axis_value(u) + axis_value(-vp)) + (axis_value(v) + axis_value(-up));
  return 0.5 * plus + 0.5 * minus;
}

}  // namespace cvw
