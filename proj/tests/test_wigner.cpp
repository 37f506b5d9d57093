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

#include "cvwigner/wigner.hpp"
#include "test_support.hpp"

using namespace cvw;
using cvw::testing::state_from;

namespace {

constexpr double kPi = std::numbers::pi;

double fock_wigner(int n, double q, double p) {
  const double r2 = q * q + p * p;
  return (n % 2 ? -1.0 : 1.0) / kPi * std::exp(-r2) * std::laguerre(n, 2.0 * r2);
}

// Even cat with real alpha: coherent peaks at +-sqrt(2) alpha on the q axis
// plus the interference fringe.
double even_cat_wigner(double alpha, double q, double p) {
  const double q0 = std::sqrt(2.0) * alpha;
  const double norm = 2.0 * (1.0 + std::exp(-2.0 * alpha * alpha));
  const double g = std::exp(-(q - q0) * (q - q0) - p * p) + std::exp(-(q + q0) * (q + q0) - p * p) +
                   2.0 * std::exp(-q * q - p * p) * std::cos(2.0 * q0 * p);
  return g / (kPi * norm);
}

}  // namespace

TEST(Wigner, FockStatesMatchLaguerreFormula) {
  const GridSpec grid = GridSpec::symmetric(1, 5.0, 41);
  for (int n = 0; n <= 4; ++n) {
    const State st = state_from(R"({"kind":"fock","params":{"n":)" + std::to_string(n) + "}}");
    const WignerGrid w = wigner(st, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Vec z = grid.point(i);
      ASSERT_NEAR(w.values[i], fock_wigner(n, z[0], z[1]), 1e-12) << n;
    }
  }
}

TEST(Wigner, EvenCatMatchesClosedForm) {
  const GridSpec grid = GridSpec::symmetric(1, 6.0, 49);
  const WignerGrid w = wigner(state_from(R"({"kind":"cat","params":{"alpha":2},"cutoff":50})"), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec z = grid.point(i);
    ASSERT_NEAR(w.values[i], even_cat_wigner(2.0, z[0], z[1]), 1e-10);
  }
}

TEST(Wigner, GaussianClosedForm) {
  const GridSpec grid = GridSpec::symmetric(1, 4.0, 17);
  const auto s = std::get<GaussianState>(state_from(R"({"kind":"squeezed","params":{"r":0.5}})"));
  const WignerGrid w = wigner_gaussian(s, grid);
  const double a = std::exp(-2 * 0.5) / 2, b = std::exp(2 * 0.5) / 2;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec z = grid.point(i);
    const double expect = std::exp(-0.5 * (z[0] * z[0] / a + z[1] * z[1] / b)) / (2 * kPi * std::sqrt(a * b));
    EXPECT_NEAR(w.values[i], expect, 1e-14);
  }
}

TEST(Wigner, RoutesAgreeForGaussianStates) {
  const GridSpec grid = default_wigner_grid(1);
  for (const char* s : {R"({"kind":"vacuum"})", R"({"kind":"coherent","params":{"alpha":1}})",
                        R"({"kind":"squeezed","params":{"r":0.5}})"}) {
    const auto g = std::get<GaussianState>(state_from(s));
    const FockDensityOperator f = gaussian_to_fock(g, kDefaultCutoff);
    const WignerGrid a = wigner_gaussian(g, grid);
    const WignerGrid b = wigner_from_characteristic(characteristic_function(f, default_characteristic_grid(1)), grid);
    const WignerGrid c = wigner_fock_direct(f, grid);
    double ab = 0, ac = 0, bc = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      ab = std::max(ab, std::abs(a.values[i] - b.values[i]));
      ac = std::max(ac, std::abs(a.values[i] - c.values[i]));
      bc = std::max(bc, std::abs(b.values[i] - c.values[i]));
    }
    EXPECT_LT(ab, 1e-5) << s;
    EXPECT_LT(ac, 1e-5) << s;
    EXPECT_LT(bc, 1e-5) << s;
  }
}

TEST(Wigner, CharacteristicFunctionValues) {
  const State vac = GaussianState::vacuum(1);
  const State f1 = state_from(R"({"kind":"fock","params":{"n":1}})");
  for (const auto& v : {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.3, -1.2)}) {
    const double r2 = v.squaredNorm();
    EXPECT_NEAR(std::abs(characteristic_at(std::get<GaussianState>(vac), v) - std::exp(-r2 / 4)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(characteristic_at(std::get<FockDensityOperator>(f1), v) - (1 - r2 / 2) * std::exp(-r2 / 4)), 0.0, 1e-13);
  }
  // A coherent state picks up the phase exp(i v^T omega mu).
  const auto coh = std::get<GaussianState>(state_from(R"({"kind":"coherent","params":{"mean":[1.0,0.0]}})"));
  const Vec v = Eigen::Vector2d(0.0, 0.5);
  const double phase = v.dot(symplectic_form_matrix(1) * coh.mean());
  EXPECT_NEAR(std::abs(characteristic_at(coh, v) - std::polar(std::exp(-0.25 * 0.25), phase)), 0.0, 1e-14);
  const FockDensityOperator cf = gaussian_to_fock(coh, 30);
  EXPECT_NEAR(std::abs(characteristic_at(cf, v) - characteristic_at(coh, v)), 0.0, 1e-10);
}

TEST(Wigner, FourierRouteRejectsNarrowWindow) {
  const auto f = std::get<FockDensityOperator>(state_from(R"({"kind":"fock","params":{"n":1}})"));
  const CharacteristicGrid chi = characteristic_function(f, GridSpec::symmetric(1, 2.0, 41));
  EXPECT_THROW(wigner_from_characteristic(chi, default_wigner_grid(1)), InadequacyError);
}

TEST(Wigner, NormalizationAndNegativity) {
  const WignerGrid w1 = wigner(state_from(R"({"kind":"fock","params":{"n":1}})"), default_wigner_grid(1));
  EXPECT_NEAR(w1.integral(), 1.0, 1e-6);
  // Twice the negative mass, which sits on the disc r^2 < 1/2 and equals 2e^{-1/2} - 1.
  EXPECT_NEAR(negativity_volume(w1), 2.0 * (2.0 * std::exp(-0.5) - 1.0), 2e-3);
  EXPECT_NEAR(min_value(w1).value, -1.0 / kPi, 1e-12);
  EXPECT_NEAR(min_value(w1).location.norm(), 0.0, 1e-12);
  EXPECT_NEAR(log_negativity(w1), std::log(1.0 + negativity_volume(w1)), 1e-12);

  const WignerGrid w0 = wigner(GaussianState::vacuum(1), default_wigner_grid(1));
  EXPECT_LT(negativity_volume(w0), 1e-6);
  const auto summary = wigner_summary(w0);
  EXPECT_TRUE(summary.contains("negativity_volume"));
  EXPECT_TRUE(summary.contains("cell_volume"));
}

TEST(Wigner, MarginalIsPositionDensity) {
  const GridSpec grid = default_wigner_grid(1);
  const WignerGrid w = wigner(state_from(R"({"kind":"fock","params":{"n":1}})"), grid);
  const auto& ax = grid.axes();
  double worst = 0.0;
  for (int i = 0; i < ax[0].points; ++i) {
    double m = 0.0;
    for (int j = 0; j < ax[1].points; ++j) m += w.values[static_cast<std::size_t>(i * ax[1].points + j)] * ax[1].step();
    const double q = ax[0].node(i);
    worst = std::max(worst, std::abs(m - 2 * q * q * std::exp(-q * q) / std::sqrt(kPi)));
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Wigner, StatisticalFormulaMoments) {
  const GridSpec grid = default_wigner_grid(1);
  const WignerGrid w = wigner(state_from(R"({"kind":"fock","params":{"n":1}})"), grid);
  double q1 = 0, q2 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = grid.point(i)[0];
    q1 += w.values[i] * q * grid.cell_volume();
    q2 += w.values[i] * q * q * grid.cell_volume();
  }
  EXPECT_NEAR(q1, 0.0, 1e-3);
  EXPECT_NEAR(q2, 1.5, 1e-3);
}

TEST(Wigner, TwoModeProductState) {
  const State st = state_from(R"({"kind":"fock","params":{"n":1},"modes":2})");
  const WignerGrid w = wigner(st, default_wigner_grid(2));
  EXPECT_NEAR(w.integral(), 1.0, 1e-3);
  const std::size_t centre = w.grid.size() / 2;
  EXPECT_NEAR(w.grid.point(centre).norm(), 0.0, 1e-12);
  EXPECT_NEAR(w.values[centre], 1.0 / (kPi * kPi), 1e-12);
}

TEST(Hudson, Classification) {
  const auto classify = [](const char* s) {
    const StateSpec spec = cvw::testing::spec_from(s);
    return hudson_classify(make_state(spec), default_wigner_grid(spec));
  };
  EXPECT_EQ(classify(R"({"kind":"squeezed","params":{"r":0.5}})").classification, HudsonClass::gaussian_nonnegative);
  EXPECT_EQ(classify(R"({"kind":"coherent","params":{"alpha":1}})").classification, HudsonClass::gaussian_nonnegative);
  const HudsonReport f = classify(R"({"kind":"fock","params":{"n":1}})");
  EXPECT_EQ(f.classification, HudsonClass::negative);
  EXPECT_TRUE(f.gaussianity_consistent);
  EXPECT_THROW(classify(R"({"kind":"thermal","params":{"nbar":1}})"), PreconditionError);
}
