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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "cvwigner/fock.hpp"
#include "cvwigner/states.hpp"

using namespace cvw;

namespace {

CMat dense_annihilation(int n) {
  CMat a = CMat::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

// exp(alpha a^dag - alpha^* a) on a generously padded space, truncated.
CMat displacement_by_expm(cplx alpha, int cutoff) {
  const int pad = cutoff + 60;
  const CMat a = dense_annihilation(pad);
  const CMat gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return CMat(gen.exp()).topLeftCorner(cutoff, cutoff);
}

}  // namespace

TEST(Fock, LadderAndQuadratures) {
  const int n = 12;
  const CMat a(fock::annihilation(n));
  EXPECT_LT((a - dense_annihilation(n)).cwiseAbs().maxCoeff(), 1e-15);
  const CMat q(fock::position(n)), p(fock::momentum(n));
  const CMat comm = q * p - p * q;
  // [q, p] = i below the truncation edge.
  for (int k = 0; k < n - 1; ++k) EXPECT_NEAR(std::abs(comm(k, k) - cplx(0, 1)), 0.0, 1e-14);
  EXPECT_LT((q - (a + a.adjoint()) / std::sqrt(2.0)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Fock, DimensionCap) {
  EXPECT_EQ(fock::dimension(2, 30), 900);
  EXPECT_THROW(fock::dimension(3, 30), InadequacyError);
}

TEST(Fock, DisplacementMatchesMatrixExponential) {
  for (cplx alpha : {cplx(0.3, 0.0), cplx(1.2, -0.7), cplx(-2.0, 1.5)}) {
    const CMat d = fock::displacement(alpha, 25);
    EXPECT_LT((d - displacement_by_expm(alpha, 25)).cwiseAbs().maxCoeff(), 1e-10) << alpha;
  }
}

TEST(Fock, DisplacementBandAgreesWithFullMatrix) {
  const cplx alpha(0.8, 0.4);
  const CMat full = fock::displacement(alpha, 20);
  CMat band;
  fock::displacement_band(alpha, 20, 3, band);
  for (int i = 0; i < 20; ++i) {
    for (int j = std::max(0, i - 3); j <= std::min(19, i + 3); ++j) EXPECT_NEAR(std::abs(band(i, j) - full(i, j)), 0.0, 1e-13);
  }
}

TEST(Fock, CoherentAmplitudes) {
  const cplx alpha(1.1, -0.4);
  const CVec c = fock::coherent_amplitudes(alpha, 30);
  const CVec d0 = fock::displacement(alpha, 30).col(0);
  double fact = 1.0;
  for (int n = 0; n < 30; ++n) {
    if (n > 0) fact *= n;
    const cplx expect = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / std::sqrt(fact);
    EXPECT_NEAR(std::abs(c[n] - expect), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d0[n] - expect), 0.0, 1e-12);
  }
}

TEST(Fock, HermiteFunctions) {
  for (double x : {-3.0, -0.4, 0.0, 1.7}) {
    const auto psi = fock::hermite_functions(20, x);
    for (int n = 0; n < 20; ++n) {
      const double norm = std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(std::numbers::pi));
      EXPECT_NEAR(psi[static_cast<std::size_t>(n)], std::hermite(n, x) * std::exp(-0.5 * x * x) / norm, 1e-12);
    }
  }
  // Orthonormality far past the range where factorials overflow.
  const int n = 150;
  const double h = 0.01;
  std::vector<double> g(n, 0.0);
  for (double x = -25.0; x <= 25.0; x += h) {
    const auto psi = fock::hermite_functions(n, x);
    for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] += psi[static_cast<std::size_t>(k)] * psi[static_cast<std::size_t>(k)] * h;
  }
  for (int k = 0; k < n; k += 10) EXPECT_NEAR(g[static_cast<std::size_t>(k)], 1.0, 1e-8) << k;
}

TEST(Fock, WignerKernelsDiagonal) {
  CMat k;
  for (const auto& [q, p] : {std::pair{0.0, 0.0}, std::pair{0.7, -0.2}, std::pair{-1.5, 1.1}}) {
    fock::wigner_kernels(q, p, 8, k);
    const double r2 = q * q + p * p;
    for (int n = 0; n < 8; ++n) {
      const double expect = (n % 2 ? -1.0 : 1.0) / std::numbers::pi * std::exp(-r2) * std::laguerre(n, 2.0 * r2);
      EXPECT_NEAR(k(n, n).real(), expect, 1e-13);
      EXPECT_NEAR(k(n, n).imag(), 0.0, 1e-13);
      for (int m = 0; m < 8; ++m) EXPECT_NEAR(std::abs(k(m, n) - std::conj(k(n, m))), 0.0, 1e-13);
    }
  }
}

TEST(Fock, SqueezeUnitaryOnVacuum) {
  const double r = 0.6;
  const CVec s = fock::squeeze_unitary(r, 60).col(0);
  for (int n = 0; n < 20; ++n) {
    double expect = 0.0;
    if (n % 2 == 0) {
      const int k = n / 2;
      expect = std::pow(-std::tanh(r), k) * std::sqrt(std::tgamma(n + 1.0)) / (std::pow(2.0, k) * std::tgamma(k + 1.0)) /
               std::sqrt(std::cosh(r));
    }
    EXPECT_NEAR(std::abs(s[n] - expect), 0.0, 1e-10) << n;
  }
}

TEST(Fock, GaussianUnitaryTransformsQuadratures) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 5; ++t) {
    const SymplecticMatrix s = SymplecticMatrix::rotation(3 * u(rng)) * SymplecticMatrix::squeeze(0.4 * u(rng)) *
                               SymplecticMatrix::rotation(3 * u(rng));
    const int pad = 80;
    const CMat g = fock::gaussian_unitary(s, pad);
    const CMat q(fock::position(pad)), p(fock::momentum(pad));
    const CMat gq = g.adjoint() * q * g;
    const CMat expect = s.matrix()(0, 0) * q + s.matrix()(0, 1) * p;
    EXPECT_LT((gq - expect).topLeftCorner(20, 20).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((g.adjoint() * g - CMat::Identity(pad, pad)).topLeftCorner(30, 30).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Fock, BeamSplitterIsPassiveAndExact) {
  const double th = 0.7;
  Mat o = Mat::Identity(4, 4);
  o(0, 0) = o(1, 1) = o(2, 2) = o(3, 3) = std::cos(th);
  o(0, 1) = o(2, 3) = -std::sin(th);
  o(1, 0) = o(3, 2) = std::sin(th);
  const int c = 8;
  const CMat u(fock::passive_unitary(o, c));
  EXPECT_LT((u.adjoint() * u - CMat::Identity(c * c, c * c)).cwiseAbs().maxCoeff(), 1e-12);
  const auto r = fock::quadratures(2, c);
  const CMat q0(r[0]), q1(r[1]);
  // Number conservation makes the relation exact on levels with n0 + n1 < c - 1.
  const CMat lhs = u.adjoint() * q0 * u;
  const CMat rhs = std::cos(th) * q0 - std::sin(th) * q1;
  const auto idx = fock::low_level_indices(2, c, 3);
  for (int i : idx) {
    for (int j : idx) EXPECT_NEAR(std::abs(lhs(i, j) - rhs(i, j)), 0.0, 1e-12);
  }
}

TEST(Fock, LevelsRoundTrip) {
  CMat m = CMat::Random(16, 16);
  const CMat big = fock::extend_levels(m, 2, 4, 6);
  EXPECT_EQ(big.rows(), 36);
  EXPECT_EQ((fock::restrict_levels(big, 2, 6, 4) - m).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(fock::low_level_indices(2, 4, 2), (std::vector<int>{0, 1, 4, 5}));
}
