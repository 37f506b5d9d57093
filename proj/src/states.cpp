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

#include "cvwigner/states.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "cvwigner/fock.hpp"

namespace cvw {
namespace {

double min_eigenvalue_hermitian(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

CMat uncertainty_matrix(const Mat& v, const Mat& omega) {
  return v.cast<cplx>() + cplx(0.0, 0.5) * omega.cast<cplx>();
}

template <typename T>
T param_or(const nlohmann::json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("state parameter '") + key + "': " + e.what());
  }
}

double required_double(const nlohmann::json& params, const char* key) {
  if (!params.contains(key)) throw ParseError(std::string("state parameter '") + key + "' is required");
  return param_or<double>(params, key, 0.0);
}

cplx complex_param(const nlohmann::json& params, const char* key) {
  if (!params.contains(key)) throw ParseError(std::string("state parameter '") + key + "' is required");
  const auto& v = params.at(key);
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return cplx(v[0].get<double>(), v[1].get<double>());
  }
  throw ParseError(std::string("state parameter '") + key + "' must be a number or [re, im]");
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw ParseError(std::string(what) + " must be finite");
}

// Single-mode amplitude vector plus the weight it loses below `cutoff`.
struct Truncated {
  CVec amplitudes;
  double leakage;
};

Truncated normalize_truncated(CVec c, double full_norm2) {
  const double kept = c.squaredNorm();
  const double leak = std::max(0.0, 1.0 - kept / full_norm2);
  c /= std::sqrt(kept);
  return {std::move(c), leak};
}

Truncated cat_amplitudes(cplx alpha, bool even, int cutoff) {
  const CVec plus = fock::coherent_amplitudes(alpha, cutoff);
  const CVec minus = fock::coherent_amplitudes(-alpha, cutoff);
  const CVec c = even ? CVec(plus + minus) : CVec(plus - minus);
  const double overlap = std::exp(-2.0 * std::norm(alpha));
  const double norm2 = 2.0 * (1.0 + (even ? overlap : -overlap));
  if (norm2 < 1e-14) throw PreconditionError("odd cat with alpha = 0 is not a state");
  return normalize_truncated(c, norm2);
}

Truncated photon_subtracted_amplitudes(double r, int cutoff) {
  if (r == 0.0) throw PreconditionError("photon subtraction from the vacuum is not a state");
  const CVec sq = squeezed_vacuum_amplitudes(r, cutoff + 1);
  CVec c(cutoff);
  for (int n = 0; n < cutoff; ++n) c[n] = std::sqrt(n + 1.0) * sq[n + 1];
  const double sh = std::sinh(r);
  return normalize_truncated(c, sh * sh);
}

// Gaussian-envelope GKP codeword: peaks of width delta at q = 2 s sqrt(pi)
// weighted by exp(-2 pi delta^2 s^2). Projected onto Hermite functions by
// trapezoidal quadrature, which is spectrally accurate for this integrand.
Truncated gkp_amplitudes(double delta, int cutoff) {
  if (!(delta > 0.0)) throw PreconditionError("gkp delta must be positive");
  const double spacing = 2.0 * std::sqrt(std::numbers::pi);
  const int smax = static_cast<int>(std::ceil(std::sqrt(40.0 / (2.0 * std::numbers::pi * delta * delta))));
  const double reach = std::sqrt(2.0 * cutoff + 1.0) + 8.0;
  const double half = std::max(reach, smax * spacing + 8.0 * delta);
  const double dq = std::min(0.01, delta / 40.0);
  const int points = static_cast<int>(std::ceil(2.0 * half / dq)) + 1;
  const double step = 2.0 * half / (points - 1);
  Vec coef = Vec::Zero(cutoff);
  double norm2 = 0.0;
  for (int i = 0; i < points; ++i) {
    const double q = -half + i * step;
    double psi = 0.0;
    for (int s = -smax; s <= smax; ++s) {
      const double x = q - s * spacing;
      psi += std::exp(-2.0 * std::numbers::pi * delta * delta * s * s - x * x / (2.0 * delta * delta));
    }
    if (psi == 0.0) continue;
    const double w = (i == 0 || i == points - 1) ? 0.5 * step : step;
    norm2 += w * psi * psi;
    const auto h = fock::hermite_functions(cutoff, q);
    for (int n = 0; n < cutoff; ++n) coef[n] += w * psi * h[static_cast<std::size_t>(n)];
  }
  return normalize_truncated(coef.cast<cplx>(), norm2);
}

CVec tensor_power(const CVec& single, int modes) {
  CVec out = single;
  for (int j = 1; j < modes; ++j) {
    CVec next(out.size() * single.size());
    for (Eigen::Index a = 0; a < out.size(); ++a) next.segment(a * single.size(), single.size()) = out[a] * single;
    out = std::move(next);
  }
  return out;
}

FockDensityOperator fock_product(const Truncated& t, int modes, int cutoff, const std::string& kind) {
  const double leak = 1.0 - std::pow(1.0 - t.leakage, modes);
  if (leak > kMaxLeakage) {
    throw InadequacyError(kind + " state loses " + std::to_string(leak) + " of its weight at cutoff " +
                          std::to_string(cutoff) + "; raise the cutoff");
  }
  fock::dimension(modes, cutoff);
  return FockDensityOperator::pure(tensor_power(t.amplitudes, modes), modes, cutoff, leak);
}

int padded_cutoff(int modes, int cutoff, int extra) {
  int pad = cutoff;
  while (pad < cutoff + extra && std::pow(pad + 1.0, modes) <= fock::kMaxDimension) ++pad;
  return pad;
}

FockDensityOperator truncate_padded(const CMat& padded, int modes, int pad, int cutoff) {
  CMat low = fock::restrict_levels(padded, modes, pad, cutoff);
  const double tr = low.trace().real();
  const double leak = std::max(0.0, 1.0 - tr);
  if (leak > kMaxLeakage) {
    throw InadequacyError("Fock truncation at cutoff " + std::to_string(cutoff) + " loses " + std::to_string(leak) +
                          " of the weight");
  }
  low = (0.5 / tr) * (low + low.adjoint()).eval();
  return FockDensityOperator(std::move(low), modes, cutoff, leak);
}

}  // namespace

GaussianState::GaussianState(Vec mean, Mat covariance) : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  const auto n = mean_.size();
  if (n == 0 || n % 2 != 0 || covariance_.rows() != n || covariance_.cols() != n) {
    throw DimensionError("Gaussian state needs a 2m mean and a 2m x 2m covariance");
  }
  if (!mean_.allFinite() || !covariance_.allFinite()) throw PreconditionError("Gaussian moments must be finite");
  const double scale = std::max(1.0, covariance_.cwiseAbs().maxCoeff());
  if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw PreconditionError("covariance matrix is not symmetric");
  }
  covariance_ = 0.5 * (covariance_ + covariance_.transpose()).eval();
  const Mat omega = symplectic_form_matrix(modes());
  if (min_eigenvalue_hermitian(uncertainty_matrix(covariance_, omega)) < -1e-10 * scale) {
    throw PreconditionError("covariance violates the uncertainty relation V + i omega/2 >= 0");
  }
}

GaussianState GaussianState::vacuum(int modes) {
  return GaussianState(Vec::Zero(2 * modes), 0.5 * Mat::Identity(2 * modes, 2 * modes));
}

double GaussianState::purity() const { return 1.0 / std::sqrt((2.0 * covariance_).determinant()); }

FockDensityOperator::FockDensityOperator(CMat matrix, int modes, int cutoff, double leakage)
    : matrix_(std::move(matrix)), modes_(modes), cutoff_(cutoff), leakage_(leakage) {
  const int dim = fock::dimension(modes, cutoff);
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw DimensionError("density matrix must be cutoff^modes square");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw PreconditionError("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - cplx(1.0)) > 1e-6) throw PreconditionError("density matrix trace differs from 1");
  if (min_eigenvalue_hermitian(matrix_) < -1e-10) throw PreconditionError("density matrix is not positive");
}

FockDensityOperator FockDensityOperator::pure(const CVec& amplitudes, int modes, int cutoff, double leakage) {
  const CVec psi = amplitudes / amplitudes.norm();
  CMat rho = psi * psi.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return FockDensityOperator(std::move(rho), modes, cutoff, leakage);
}

double FockDensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

int mode_count(const State& state) {
  return std::visit([](const auto& s) { return s.modes(); }, state);
}

GaussianChannel::GaussianChannel(Mat x, Mat y, Vec d) : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {
  const auto n = d_.size();
  if (n == 0 || n % 2 != 0 || x_.rows() != n || x_.cols() != n || y_.rows() != n || y_.cols() != n) {
    throw DimensionError("Gaussian channel needs 2m x 2m X and Y and a 2m displacement");
  }
  const double scale = std::max({1.0, x_.cwiseAbs().maxCoeff(), y_.cwiseAbs().maxCoeff()});
  if ((y_ - y_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw PreconditionError("channel Y is not symmetric");
  y_ = 0.5 * (y_ + y_.transpose()).eval();
  const Mat omega = symplectic_form_matrix(modes());
  const Mat defect = omega - x_ * omega * x_.transpose();
  if (min_eigenvalue_hermitian(uncertainty_matrix(y_, defect)) < -1e-10 * scale * scale) {
    throw PreconditionError("channel is not completely positive");
  }
}

GaussianChannel GaussianChannel::identity(int modes) {
  const int n = 2 * modes;
  return GaussianChannel(Mat::Identity(n, n), Mat::Zero(n, n), Vec::Zero(n));
}

GaussianChannel GaussianChannel::loss(int modes, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw PreconditionError("loss transmissivity must lie in [0, 1]");
  const int n = 2 * modes;
  return GaussianChannel(std::sqrt(eta) * Mat::Identity(n, n), 0.5 * (1.0 - eta) * Mat::Identity(n, n), Vec::Zero(n));
}

StateSpec StateSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("state spec must be a JSON object");
  StateSpec spec;
  try {
    if (!j.contains("kind") || !j.at("kind").is_string()) throw ParseError("state spec needs a string 'kind'");
    spec.kind = j.at("kind").get<std::string>();
    if (j.contains("params")) {
      if (!j.at("params").is_object()) throw ParseError("'params' must be an object");
      spec.params = j.at("params");
    }
    if (j.contains("modes")) spec.modes = j.at("modes").get<int>();
    if (j.contains("cutoff") && !j.at("cutoff").is_null()) spec.cutoff = j.at("cutoff").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("state spec: ") + e.what());
  }
  static const char* kinds[] = {"vacuum", "coherent", "squeezed", "thermal", "fock",
                                "cat", "gkp", "photon_subtracted_squeezed", "gaussian"};
  bool known = false;
  for (const char* k : kinds) known = known || spec.kind == k;
  if (!known) throw ParseError("unknown state kind '" + spec.kind + "'");
  if (spec.modes < 1 || spec.modes > 4) throw ParseError("modes must be between 1 and 4");
  if (spec.cutoff && *spec.cutoff < 2) throw ParseError("cutoff must be at least 2");
  return spec;
}

nlohmann::json StateSpec::to_json() const {
  nlohmann::json j{{"kind", kind}, {"params", params}, {"modes", modes}};
  if (cutoff) j["cutoff"] = *cutoff;
  return j;
}

int StateSpec::effective_cutoff() const {
  if (cutoff) return *cutoff;
  return kind == "gkp" ? kDefaultGkpCutoff : kDefaultCutoff;
}

CVec squeezed_vacuum_amplitudes(double r, int cutoff) {
  CVec c = CVec::Zero(cutoff);
  const double t = -std::tanh(r);
  // c_{2n} = t^n sqrt((2n)!) / (2^n n!) / sqrt(cosh r), carried as a ratio.
  double mag = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 0; 2 * n < cutoff; ++n) {
    if (n > 0) mag *= t * std::sqrt((2.0 * n - 1.0) / (2.0 * n));
    c[2 * n] = mag;
  }
  return c;
}

State make_state(const StateSpec& spec) {
  const int m = spec.modes;
  const int n = 2 * m;
  const auto& p = spec.params;
  const std::string& kind = spec.kind;
  if (kind == "vacuum") return GaussianState::vacuum(m);
  if (kind == "coherent") {
    Vec mean(n);
    if (p.contains("mean")) {
      const auto v = param_or<std::vector<double>>(p, "mean", {});
      if (static_cast<int>(v.size()) != n) throw ParseError("coherent 'mean' must have 2m entries");
      mean = Eigen::Map<const Vec>(v.data(), n);
    } else {
      const cplx alpha = complex_param(p, "alpha");
      for (int j = 0; j < m; ++j) {
        mean[j] = std::sqrt(2.0) * alpha.real();
        mean[m + j] = std::sqrt(2.0) * alpha.imag();
      }
    }
    if (!mean.allFinite()) throw ParseError("coherent mean must be finite");
    return GaussianState(mean, 0.5 * Mat::Identity(n, n));
  }
  if (kind == "squeezed") {
    const double r = required_double(p, "r");
    const double theta = param_or<double>(p, "theta", 0.0);
    require_finite(r, "r");
    require_finite(theta, "theta");
    const Mat rot = SymplecticMatrix::rotation(0.5 * theta).matrix();
    Mat single = rot * Vec((Vec(2) << std::exp(-2.0 * r), std::exp(2.0 * r)).finished() * 0.5).asDiagonal() *
                 rot.transpose();
    Mat cov = Mat::Zero(n, n);
    for (int j = 0; j < m; ++j) {
      cov(j, j) = single(0, 0);
      cov(j, m + j) = single(0, 1);
      cov(m + j, j) = single(1, 0);
      cov(m + j, m + j) = single(1, 1);
    }
    return GaussianState(Vec::Zero(n), cov);
  }
  if (kind == "thermal") {
    const double nbar = required_double(p, "nbar");
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw ParseError("thermal 'nbar' must be finite and >= 0");
    return GaussianState(Vec::Zero(n), (nbar + 0.5) * Mat::Identity(n, n));
  }
  if (kind == "gaussian") {
    const auto mean = param_or<std::vector<double>>(p, "mean", std::vector<double>(static_cast<std::size_t>(n), 0.0));
    const auto cov = param_or<std::vector<std::vector<double>>>(p, "covariance", {});
    if (static_cast<int>(mean.size()) != n || static_cast<int>(cov.size()) != n) {
      throw ParseError("gaussian state needs a 2m mean and a 2m x 2m covariance");
    }
    Mat v(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(cov[static_cast<std::size_t>(i)].size()) != n) throw ParseError("covariance must be square");
      for (int j = 0; j < n; ++j) v(i, j) = cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return GaussianState(Eigen::Map<const Vec>(mean.data(), n), v);
  }

  const int cutoff = spec.effective_cutoff();
  if (kind == "fock") {
    std::vector<int> levels;
    if (p.contains("n") && p.at("n").is_array()) {
      levels = param_or<std::vector<int>>(p, "n", {});
    } else {
      levels.assign(static_cast<std::size_t>(m), param_or<int>(p, "n", -1));
    }
    if (static_cast<int>(levels.size()) != m) throw ParseError("fock 'n' must be an integer or one per mode");
    int index = 0;
    for (int level : levels) {
      if (level < 0) throw ParseError("fock 'n' must be a non-negative integer");
      if (level >= cutoff) throw InadequacyError("fock level exceeds the cutoff");
      index = index * cutoff + level;
    }
    const int dim = fock::dimension(m, cutoff);
    CVec psi = CVec::Zero(dim);
    psi[index] = 1.0;
    return FockDensityOperator::pure(psi, m, cutoff);
  }
  if (kind == "cat") {
    const cplx alpha = complex_param(p, "alpha");
    const std::string parity = param_or<std::string>(p, "parity", "even");
    if (parity != "even" && parity != "odd") throw ParseError("cat 'parity' must be even or odd");
    return fock_product(cat_amplitudes(alpha, parity == "even", cutoff), m, cutoff, kind);
  }
  if (kind == "gkp") {
    const double delta = required_double(p, "delta");
    require_finite(delta, "delta");
    return fock_product(gkp_amplitudes(delta, cutoff), m, cutoff, kind);
  }
  if (kind == "photon_subtracted_squeezed") {
    const double r = required_double(p, "r");
    require_finite(r, "r");
    return fock_product(photon_subtracted_amplitudes(r, cutoff), m, cutoff, kind);
  }
  throw ParseError("unknown state kind '" + kind + "'");
}

GaussianState apply_gaussian_unitary(const GaussianState& s, const SymplecticMatrix& S, const Vec& d) {
  if (S.modes() != s.modes() || d.size() != s.mean().size()) throw DimensionError("unitary and state sizes differ");
  const Mat& m = S.matrix();
  return GaussianState(m * s.mean() + d, m * s.covariance() * m.transpose());
}

FockDensityOperator apply_gaussian_unitary(const FockDensityOperator& rho, const SymplecticMatrix& S, const Vec& d) {
  const int m = rho.modes();
  if (S.modes() != m || d.size() != 2 * m) throw DimensionError("unitary and state sizes differ");
  const int pad = padded_cutoff(m, rho.cutoff(), m == 1 ? 40 : 12);
  CMat big = fock::extend_levels(rho.matrix(), m, rho.cutoff(), pad);
  big = fock::conjugate(fock::gaussian_factors(S, pad), big);
  big = fock::conjugate_displacement(SymplecticVector(d), pad, big);
  return truncate_padded(big, m, pad, rho.cutoff());
}

GaussianState apply_gaussian_channel(const GaussianState& s, const GaussianChannel& e) {
  if (e.modes() != s.modes()) throw DimensionError("channel and state sizes differ");
  return GaussianState(e.x() * s.mean() + e.d(), e.x() * s.covariance() * e.x().transpose() + e.y());
}

GaussianChannel compose_channels(const GaussianChannel& e1, const GaussianChannel& e2) {
  if (e1.modes() != e2.modes()) throw DimensionError("channels act on different mode counts");
  return GaussianChannel(e2.x() * e1.x(), e2.x() * e1.y() * e2.x().transpose() + e2.y(), e2.x() * e1.d() + e2.d());
}

WilliamsonForm williamson(const Mat& v) {
  const int n = static_cast<int>(v.rows());
  const int m = n / 2;
  Eigen::SelfAdjointEigenSolver<Mat> ev(v);
  if (ev.eigenvalues().minCoeff() <= 0.0) throw PreconditionError("covariance must be positive definite");
  const Mat half = ev.eigenvectors() * ev.eigenvalues().cwiseSqrt().asDiagonal() * ev.eigenvectors().transpose();
  const Mat half_inv =
      ev.eigenvectors() * ev.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * ev.eigenvectors().transpose();
  const Mat a = half_inv * symplectic_form_matrix(m) * half_inv;
  Eigen::SelfAdjointEigenSolver<Mat> sq(a.transpose() * a);
  Mat k(n, n);
  Vec lam(m);
  int found = 0;
  for (int c = n - 1; c >= 0 && found < m; --c) {
    Vec x = sq.eigenvectors().col(c);
    for (int i = 0; i < found; ++i) {
      x -= k.col(i).dot(x) * k.col(i);
      x -= k.col(m + i).dot(x) * k.col(m + i);
    }
    if (x.norm() < 0.5) continue;
    x.normalize();
    const Vec ax = a * x;
    const double l = ax.norm();
    k.col(found) = x;
    k.col(m + found) = ax / l;
    lam[found] = l;
    ++found;
  }
  if (found != m) throw PreconditionError("symplectic diagonalization failed");
  Vec scale(n);
  scale << lam.cwiseSqrt(), lam.cwiseSqrt();
  return {half * k * scale.asDiagonal(), lam.cwiseInverse()};
}

FockDensityOperator gaussian_to_fock(const GaussianState& s, int cutoff) {
  const int m = s.modes();
  if (m > 2) throw PreconditionError("gaussian_to_fock supports one or two modes");
  fock::dimension(m, cutoff);
  const int pad = padded_cutoff(m, cutoff, m == 1 ? std::max(40, cutoff) : 14);
  const WilliamsonForm w = williamson(s.covariance());
  CVec diag = CVec::Ones(1);
  for (int j = 0; j < m; ++j) {
    const double nbar = std::max(0.0, w.nu[j] - 0.5);
    CVec th(pad);
    for (int k = 0; k < pad; ++k) th[k] = nbar == 0.0 ? (k == 0 ? 1.0 : 0.0) : std::pow(nbar, k) / std::pow(nbar + 1.0, k + 1);
    CVec next(diag.size() * pad);
    for (Eigen::Index a = 0; a < diag.size(); ++a) next.segment(a * pad, pad) = diag[a] * th;
    diag = std::move(next);
  }
  CMat rho = fock::conjugate(fock::gaussian_factors(SymplecticMatrix(w.s), pad), CMat(diag.asDiagonal()));
  rho = fock::conjugate_displacement(SymplecticVector(s.mean()), pad, rho);
  return truncate_padded(rho, m, pad, cutoff);
}

Moments fock_moments(const FockDensityOperator& rho) {
  const int m = rho.modes();
  const auto r = fock::quadratures(m, rho.cutoff());
  const int n = 2 * m;
  const CMat& mat = rho.matrix();
  auto expect = [&](const SpCMat& op) { return CMat(mat * op).trace().real(); };
  Vec mean(n);
  for (int i = 0; i < n; ++i) mean[i] = expect(r[static_cast<std::size_t>(i)]);
  Mat cov(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const SpCMat& a = r[static_cast<std::size_t>(i)];
      const SpCMat& b = r[static_cast<std::size_t>(j)];
      const double sym = 0.5 * expect(SpCMat(a * b + b * a));
      cov(i, j) = cov(j, i) = sym - mean[i] * mean[j];
    }
  }
  return {mean, cov};
}

}  // namespace cvw
