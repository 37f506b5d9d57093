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

#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "cvwigner/core.hpp"
#include "cvwigner/phase_space.hpp"

namespace cvw {

/// Gaussian state with hbar = 1: vacuum covariance is I/2.
class GaussianState {
 public:
  /// Throws PreconditionError unless the covariance is symmetric and obeys
  /// V + (i/2) omega >= 0.
  GaussianState(Vec mean, Mat covariance);

  static GaussianState vacuum(int modes);

  const Vec& mean() const { return mean_; }
  const Mat& covariance() const { return covariance_; }
  int modes() const { return static_cast<int>(mean_.size() / 2); }
  /// 1 / sqrt(det(2V)).
  double purity() const;

 private:
  Vec mean_;
  Mat covariance_;
};

/// Density matrix on the multi-index Fock basis with a per-mode cutoff.
class FockDensityOperator {
 public:
  /// Throws PreconditionError unless the matrix is Hermitian, has unit trace
  /// and no eigenvalue below -1e-10.
  FockDensityOperator(CMat matrix, int modes, int cutoff, double leakage = 0.0);

  static FockDensityOperator pure(const CVec& amplitudes, int modes, int cutoff, double leakage = 0.0);

  const CMat& matrix() const { return matrix_; }
  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  /// Weight lost to truncation before renormalization.
  double leakage() const { return leakage_; }
  double purity() const;

 private:
  CMat matrix_;
  int modes_;
  int cutoff_;
  double leakage_;
};

using State = std::variant<GaussianState, FockDensityOperator>;

int mode_count(const State& state);

/// Gaussian channel acting on moments as mean -> X mean + d,
/// covariance -> X V X^T + Y.
class GaussianChannel {
 public:
  /// Throws PreconditionError unless Y is symmetric and
  /// Y + (i/2)(omega - X omega X^T) >= 0.
  GaussianChannel(Mat x, Mat y, Vec d);

  static GaussianChannel identity(int modes);
  /// Pure loss with transmissivity eta on every mode.
  static GaussianChannel loss(int modes, double eta);

  const Mat& x() const { return x_; }
  const Mat& y() const { return y_; }
  const Vec& d() const { return d_; }
  int modes() const { return static_cast<int>(d_.size() / 2); }

 private:
  Mat x_;
  Mat y_;
  Vec d_;
};

/// Declarative state description {"kind", "params", "modes", "cutoff"}.
struct StateSpec {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
  int modes = 1;
  std::optional<int> cutoff;

  /// Throws ParseError on malformed input.
  static StateSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  /// Cutoff used for Fock-backed kinds when none is given.
  int effective_cutoff() const;
};

inline constexpr int kDefaultCutoff = 30;
inline constexpr int kDefaultGkpCutoff = 60;
/// make_state refuses truncations that lose more weight than this.
inline constexpr double kMaxLeakage = 1e-3;

/// Gaussian kinds return GaussianState, the others a renormalized truncated
/// FockDensityOperator. Non-Gaussian kinds with modes > 1 are product states.
State make_state(const StateSpec& spec);

GaussianState apply_gaussian_unitary(const GaussianState& s, const SymplecticMatrix& S, const Vec& d);
/// Applies D(d) G_S on a padded space and truncates back to the input cutoff.
FockDensityOperator apply_gaussian_unitary(const FockDensityOperator& rho, const SymplecticMatrix& S,
                                           const Vec& d);
GaussianState apply_gaussian_channel(const GaussianState& s, const GaussianChannel& e);
/// The channel "e1 then e2".
GaussianChannel compose_channels(const GaussianChannel& e1, const GaussianChannel& e2);

/// Symplectic S and symplectic eigenvalues nu with V = S diag(nu, nu) S^T.
struct WilliamsonForm {
  Mat s;
  Vec nu;
};
WilliamsonForm williamson(const Mat& covariance);

/// Fock matrix of a one- or two-mode Gaussian state: thermal factors, then
/// G_S, then the displacement, built on a padded space and truncated.
FockDensityOperator gaussian_to_fock(const GaussianState& s, int cutoff);

struct Moments {
  Vec mean;
  Mat covariance;
};

/// Mean and symmetrized covariance recomputed from the truncated quadratures.
Moments fock_moments(const FockDensityOperator& rho);

/// Single-mode amplitudes <n|r> of the squeezed vacuum S(r)|0>, where
/// S(r)^dag q S(r) = e^{-r} q.
CVec squeezed_vacuum_amplitudes(double r, int cutoff);

}  // namespace cvw
