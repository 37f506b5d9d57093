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

#include <functional>
#include <span>
#include <vector>

#include "cvwigner/core.hpp"

namespace cvw {

/// A point of phase space R^{2m}, or equivalently the label of the homodyne
/// observable zeta.R. Coordinates are ordered (q_1..q_m, p_1..p_m).
class SymplecticVector {
 public:
  SymplecticVector() = default;
  explicit SymplecticVector(Vec coords);
  SymplecticVector(std::initializer_list<double> coords);

  static SymplecticVector zero(int modes);
  /// Unit vector e_i along q_i (mode is zero-based).
  static SymplecticVector q_axis(int modes, int mode);
  /// Unit vector f_i along p_i.
  static SymplecticVector p_axis(int modes, int mode);

  int modes() const { return static_cast<int>(coords_.size() / 2); }
  int size() const { return static_cast<int>(coords_.size()); }
  const Vec& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }
  double norm() const { return coords_.norm(); }
  double dot(const SymplecticVector& other) const;

  SymplecticVector operator+(const SymplecticVector& o) const;
  SymplecticVector operator-(const SymplecticVector& o) const;
  SymplecticVector operator-() const;
  SymplecticVector operator*(double s) const;
  friend SymplecticVector operator*(double s, const SymplecticVector& v) { return v * s; }

 private:
  Vec coords_;
};

/// The block matrix omega = [[0, -1], [1, 0]] on R^{2m}.
Mat symplectic_form_matrix(int modes);

/// [u, v] = u^T omega v.
double symplectic_form(const SymplecticVector& u, const SymplecticVector& v);

/// True iff the vectors pairwise commute ([u,v] = 0 within 1e-12, scaled by
/// the operand norms) and are linearly independent.
bool is_context(std::span<const SymplecticVector> vectors);

/// A set of pairwise commuting, linearly independent homodyne observables.
class Context {
 public:
  /// Throws PreconditionError if the generators do not form a context.
  explicit Context(std::vector<SymplecticVector> generators);

  const std::vector<SymplecticVector>& generators() const { return generators_; }
  int size() const { return static_cast<int>(generators_.size()); }
  int modes() const { return generators_.front().modes(); }

 private:
  std::vector<SymplecticVector> generators_;
};

/// A real 2m x 2m matrix with S^T omega S = omega.
class SymplecticMatrix {
 public:
  /// Throws PreconditionError unless the symplectic identity holds to 1e-10.
  explicit SymplecticMatrix(Mat entries);

  static SymplecticMatrix identity(int modes);
  /// Phase-space rotation of one mode by theta: (q, p) -> (q cos - p sin, q sin + p cos).
  static SymplecticMatrix rotation(double theta);
  /// diag(e^{-r}, e^{r}) on one mode.
  static SymplecticMatrix squeeze(double r);

  const Mat& matrix() const { return entries_; }
  int modes() const { return static_cast<int>(entries_.rows() / 2); }
  SymplecticMatrix inverse() const;
  SymplecticMatrix operator*(const SymplecticMatrix& o) const;

  /// max |S^T omega S - omega|.
  static double symplectic_defect(const Mat& m);

 private:
  Mat entries_;
};

/// Completes a context to a symplectic basis: returns S with
/// zeta_i^T S = e_i^T for every generator and S^T omega S = omega.
SymplecticMatrix context_to_standard_basis(const Context& ctx);

/// The four vectors of the additivity argument: u = alpha e_i, v = beta f_i,
/// u' = beta e_j, v' = alpha f_j with i != j.
struct AdditivityQuadruple {
  SymplecticVector u, v, u_prime, v_prime;
};

AdditivityQuadruple make_additivity_quadruple(int modes, int i, int j, double alpha, double beta);

/// Checks [(u+v+u'+v'), (u+v-u'-v')] = 0 and [u +- v', v +- u'] = 0 within 1e-12.
bool lemma1_commutation_identities(const SymplecticVector& u, const SymplecticVector& v,
                                   const SymplecticVector& u_prime, const SymplecticVector& v_prime);

/// Value of lambda(u + v) obtained only from lambda on single axis vectors,
/// through the decomposition u + v = 1/2[(u+v+u'+v') + (u+v-u'-v')] and
/// additivity on commuting pairs. axis_value is consulted on u, v, u', v'
/// and their negatives.
double additive_extension_value(const std::function<double(const SymplecticVector&)>& axis_value,
                                const AdditivityQuadruple& quad);

}  // namespace cvw
