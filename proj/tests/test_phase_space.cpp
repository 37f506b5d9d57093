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

#include <random>

#include "cvwigner/phase_space.hpp"

using namespace cvw;

namespace {

Vec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

}  // namespace

TEST(SymplecticVector, RejectsOddOrEmpty) {
  EXPECT_THROW(SymplecticVector(Vec(3)), DimensionError);
  EXPECT_THROW(SymplecticVector(Vec(0)), DimensionError);
  EXPECT_EQ(SymplecticVector::q_axis(3, 1)[1], 1.0);
  EXPECT_EQ(SymplecticVector::p_axis(3, 1)[4], 1.0);
}

TEST(SymplecticForm, MatchesBlockMatrix) {
  std::mt19937_64 rng(11);
  for (int m = 1; m <= 3; ++m) {
    Mat omega = Mat::Zero(2 * m, 2 * m);
    omega.topRightCorner(m, m) = -Mat::Identity(m, m);
    omega.bottomLeftCorner(m, m) = Mat::Identity(m, m);
    EXPECT_EQ((symplectic_form_matrix(m) - omega).cwiseAbs().maxCoeff(), 0.0);
    for (int t = 0; t < 20; ++t) {
      const SymplecticVector u(random_vec(rng, 2 * m)), v(random_vec(rng, 2 * m));
      EXPECT_NEAR(symplectic_form(u, v), u.coords().dot(omega * v.coords()), 1e-12);
      EXPECT_NEAR(symplectic_form(u, v), -symplectic_form(v, u), 1e-12);
    }
  }
  EXPECT_THROW(symplectic_form(SymplecticVector{1.0, 0.0}, SymplecticVector::q_axis(2, 0)), DimensionError);
}

TEST(Context, CommutingAndIndependent) {
  const auto q1 = SymplecticVector::q_axis(2, 0), q2 = SymplecticVector::q_axis(2, 1);
  const auto p1 = SymplecticVector::p_axis(2, 0), p2 = SymplecticVector::p_axis(2, 1);
  EXPECT_TRUE(is_context(std::vector{q1, q2}));
  EXPECT_TRUE(is_context(std::vector{q1, p2}));
  EXPECT_TRUE(is_context(std::vector{q1 + q2, p1 - p2}));
  EXPECT_FALSE(is_context(std::vector{q1, p1}));
  EXPECT_FALSE(is_context(std::vector{q1, q1 * 2.0}));
  EXPECT_THROW(Context({q1, p1}), PreconditionError);
}

TEST(SymplecticMatrix, BuildersAndInverse) {
  EXPECT_LT(SymplecticMatrix::symplectic_defect(SymplecticMatrix::rotation(0.3).matrix()), 1e-15);
  EXPECT_LT(SymplecticMatrix::symplectic_defect(SymplecticMatrix::squeeze(0.7).matrix()), 1e-15);
  EXPECT_THROW(SymplecticMatrix(Mat::Identity(2, 2) * 2.0), PreconditionError);
  const SymplecticMatrix s = SymplecticMatrix::rotation(0.4) * SymplecticMatrix::squeeze(0.3);
  EXPECT_LT((s.matrix() * s.inverse().matrix() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
  // (q, p) -> (q cos - p sin, q sin + p cos)
  const Vec img = SymplecticMatrix::rotation(std::numbers::pi / 2).matrix() * Vec::Unit(2, 0);
  EXPECT_NEAR(img[0], 0.0, 1e-15);
  EXPECT_NEAR(img[1], 1.0, 1e-15);
}

TEST(ContextToStandardBasis, RandomContexts) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const int m = 1 + t % 3;
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(m));
    // Isotropic generators: random symplectic image of the first k q-axes.
    Mat a = Mat::Identity(2 * m, 2 * m);
    for (int j = 0; j < m; ++j) {
      Mat local = Mat::Identity(2 * m, 2 * m);
      const Mat r = (SymplecticMatrix::rotation(0.7 * t + j) * SymplecticMatrix::squeeze(0.1 * j)).matrix();
      local(j, j) = r(0, 0);
      local(j, m + j) = r(0, 1);
      local(m + j, j) = r(1, 0);
      local(m + j, m + j) = r(1, 1);
      a = local * a;
    }
    if (m > 1) {
      // Mix modes 0 and 1 with a beam splitter.
      Mat bs = Mat::Identity(2 * m, 2 * m);
      const double c = std::cos(0.3 + t), s = std::sin(0.3 + t);
      bs(0, 0) = bs(m, m) = c;
      bs(1, 1) = bs(m + 1, m + 1) = c;
      bs(0, 1) = bs(m, m + 1) = -s;
      bs(1, 0) = bs(m + 1, m) = s;
      a = bs * a;
    }
    std::vector<SymplecticVector> gens;
    for (int i = 0; i < k; ++i) gens.emplace_back(Vec(a.col(i)) * (1.0 + 0.5 * i));
    const SymplecticMatrix s = context_to_standard_basis(Context(gens));
    EXPECT_LT(SymplecticMatrix::symplectic_defect(s.matrix()), 1e-10);
    for (int i = 0; i < k; ++i) {
      const Vec row = gens[static_cast<std::size_t>(i)].coords().transpose() * s.matrix();
      EXPECT_LT((row - Vec::Unit(2 * m, i)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(Additivity, CommutationIdentitiesHold) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 3;
    const int i = t % m, j = (t + 1) % m;
    const auto q = make_additivity_quadruple(m, i, j, c(rng), c(rng));
    EXPECT_TRUE(lemma1_commutation_identities(q.u, q.v, q.u_prime, q.v_prime));
    // u and v themselves do not commute unless a coefficient vanishes.
    EXPECT_NE(symplectic_form(q.u, q.v), 0.0);
  }
  EXPECT_THROW(make_additivity_quadruple(2, 0, 0, 1.0, 1.0), PreconditionError);
}

TEST(Additivity, AdditiveExtensionOfLinearFunctional) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + t % 2;
    const SymplecticVector phi(random_vec(rng, 2 * m));
    const auto quad = make_additivity_quadruple(m, 0, 1, c(rng), c(rng));
    const auto lambda = [&](const SymplecticVector& z) { return phi.dot(z); };
    EXPECT_NEAR(additive_extension_value(lambda, quad), lambda(quad.u + quad.v), 1e-12);
  }
}
