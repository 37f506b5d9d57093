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

#include "cvwigner/hvm.hpp"
#include "cvwigner/parallel.hpp"
#include "cvwigner/wigner.hpp"
#include "test_support.hpp"

using namespace cvw;
using cvw::testing::normal_cdf;
using cvw::testing::state_from;

namespace {

const SymplecticVector kQ{1.0, 0.0};
const SymplecticVector kP{0.0, 1.0};

HiddenVariableModel model_of(const State& s) { return build_hvm(wigner(s, default_wigner_grid(mode_count(s)))); }

double tv_to_normal(const OutcomeDistribution& d, double mean, double var) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.masses.size(); ++i) {
    s += std::abs(d.masses[i] - (normal_cdf(d.bin_edges[i + 1], mean, var) - normal_cdf(d.bin_edges[i], mean, var)));
  }
  return 0.5 * s;
}

}  // namespace

TEST(BuildHvm, GaussianStatesBuild) {
  const HiddenVariableModel vac = model_of(GaussianState::vacuum(1));
  EXPECT_NEAR(vac.renormalization(), 1.0, 1e-9);
  double total = 0.0;
  for (double m : vac.cell_masses()) total += m;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NO_THROW(model_of(state_from(R"({"kind":"thermal","params":{"nbar":1}})")));
}

TEST(BuildHvm, NegativityIsTheWitness) {
  try {
    model_of(state_from(R"({"kind":"fock","params":{"n":1}})"));
    FAIL() << "fock(1) must not admit a model";
  } catch (const NegativityError& e) {
    EXPECT_NEAR(e.min_value(), -1.0 / std::numbers::pi, 1e-9);
    EXPECT_NEAR(e.location().norm(), 0.0, 1e-12);
    const auto j = e.to_json();
    EXPECT_TRUE(j.contains("min_value") && j.contains("location") && j.contains("grid_spec"));
  }
}

TEST(BuildHvm, ClampsRoundoffAndRejectsUnnormalized) {
  WignerGrid w = wigner(GaussianState::vacuum(1), default_wigner_grid(1));
  const double tiny = 1e-12 * w.max_abs();
  w.values[0] = -tiny;
  const HiddenVariableModel m = build_hvm(w);
  EXPECT_EQ(m.measure().values[0], 0.0);
  for (auto& v : w.values) v *= 2.0;
  EXPECT_THROW(build_hvm(w), PreconditionError);
}

TEST(Sampling, MeansConverge) {
  const std::size_t n = 100000;
  for (const auto& [spec, q0] : {std::pair{R"({"kind":"vacuum"})", 0.0}, std::pair{R"({"kind":"coherent","params":{"mean":[2.0,0.0]}})", 2.0}}) {
    const auto samples = sample(model_of(state_from(spec)), n, 17);
    double mean = 0.0;
    for (const auto& s : samples) mean += s.phi[0];
    mean /= static_cast<double>(n);
    EXPECT_LT(std::abs(mean - q0), 4.0 * std::sqrt(0.5) / std::sqrt(static_cast<double>(n))) << spec;
  }
}

TEST(Sampling, DeterministicAcrossThreadCounts) {
  const HiddenVariableModel m = model_of(state_from(R"({"kind":"squeezed","params":{"r":0.5}})"));
  set_thread_count(1);
  const auto a = sample(m, 5000, 99);
  set_thread_count(4);
  const auto b = sample(m, 5000, 99);
  set_thread_count(1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].phi.coords(), b[i].phi.coords());
    ASSERT_EQ(a[i].seed_index, i);
  }
  // A prefix of a longer stream is the shorter stream.
  const auto c = sample(m, 3000, 99);
  for (std::size_t i = 0; i < c.size(); ++i) ASSERT_EQ(c[i].phi.coords(), a[i].phi.coords());
  const auto d = sample(m, 10, 100);
  EXPECT_NE(d[0].phi.coords(), a[0].phi.coords());
}

TEST(Sampling, PinnedSingleDraw) {
  const auto s = sample(model_of(GaussianState::vacuum(1)), 1, 7);
  EXPECT_DOUBLE_EQ(s[0].phi[0], -0.43058628778753694);
  EXPECT_DOUBLE_EQ(s[0].phi[1], 0.97041739383391223);
}

TEST(Sampling, StaysInsideWindow) {
  const auto samples = sample(model_of(state_from(R"({"kind":"thermal","params":{"nbar":1}})")), 20000, 3);
  for (const auto& s : samples) ASSERT_LE(s.phi.coords().cwiseAbs().maxCoeff(), 6.0);
}

TEST(ValueAssignment, Examples) {
  EXPECT_EQ(value_assignment(SymplecticVector{1.0, 2.0}, kQ), 1.0);
  const auto q1 = SymplecticVector::q_axis(2, 0), q2 = SymplecticVector::q_axis(2, 1);
  const PolynomialObservable xy(Context({q1, q2}), Polynomial(2, {{{1, 1}, 1.0}}));
  EXPECT_EQ(value_assignment(SymplecticVector{1.0, 3.0, 2.0, 4.0}, xy), 3.0);
  EXPECT_THROW(Context({kQ, kQ}), PreconditionError);
}

TEST(ValueAssignment, LinearAndNoncontextual) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const int m = 1 + t % 3;
    Vec phi(2 * m), a(2 * m), b(2 * m);
    for (int i = 0; i < 2 * m; ++i) {
      phi[i] = u(rng);
      a[i] = u(rng);
      b[i] = u(rng);
    }
    const SymplecticVector ph(phi), za(a), zb(b);
    const double c = u(rng);
    EXPECT_NEAR(value_assignment(ph, za + zb), value_assignment(ph, za) + value_assignment(ph, zb), 1e-13);
    EXPECT_NEAR(value_assignment(ph, za * c), c * value_assignment(ph, za), 1e-13);
    // f on the context {q_1, ..., q_m}: assignment of f equals f of the assignments.
    std::vector<SymplecticVector> gens;
    std::vector<double> vals;
    for (int j = 0; j < m; ++j) {
      gens.push_back(SymplecticVector::q_axis(m, j));
      vals.push_back(value_assignment(ph, gens.back()));
    }
    std::vector<Polynomial::Term> terms;
    for (int k = 0; k < 3; ++k) {
      std::vector<int> e(static_cast<std::size_t>(m));
      for (auto& x : e) x = static_cast<int>(rng() % 3);
      terms.push_back({e, u(rng)});
    }
    const Polynomial f(m, terms);
    EXPECT_EQ(value_assignment(ph, PolynomialObservable(Context(gens), f)), f.evaluate(vals));
  }
}

TEST(HvmHomodyne, MatchesMarginals) {
  const BinSpec b;
  const HiddenVariableModel vac = model_of(GaussianState::vacuum(1));
  EXPECT_LE(tv_to_normal(hvm_homodyne_distribution(vac, kQ, b, 100000, 1), 0.0, 0.5), 0.02);
  EXPECT_LE(tv_to_normal(hvm_homodyne_distribution(vac, kP, b, 100000, 2), 0.0, 0.5), 0.02);
  const HiddenVariableModel sq = model_of(state_from(R"({"kind":"squeezed","params":{"r":0.5}})"));
  EXPECT_LE(tv_to_normal(hvm_homodyne_distribution(sq, kQ, b, 100000, 3), 0.0, std::exp(-1.0) / 2), 0.02);
  const auto d = hvm_homodyne_distribution(vac, kQ, b, 1000, 4);
  EXPECT_NEAR(d.total(), 1.0, 1e-9);
}

TEST(HvmEvents, ExactIntegrals) {
  const double inf = std::numeric_limits<double>::infinity();
  const HiddenVariableModel vac = model_of(GaussianState::vacuum(1));
  EXPECT_NEAR(hvm_event_probability(vac, kQ, {{-6.0, 6.0}}), 1.0, 1e-3);
  EXPECT_NEAR(hvm_event_probability(vac, kQ, {{0.0, inf}}), 0.5, 2e-3);
  const HiddenVariableModel coh = model_of(state_from(R"({"kind":"coherent","params":{"mean":[2.0,0.0]}})"));
  EXPECT_NEAR(hvm_event_probability(coh, kQ, {{0.0, inf}}), 0.5 * std::erfc(-2.0), 2e-3);
  // Oblique observables exercise the sum-of-uniforms cell integral.
  const SymplecticVector z{0.3, -1.1};
  const double var = 0.5 * z.coords().squaredNorm();
  for (const auto& iv : {Interval{-0.4, 0.9}, Interval{1.0, inf}}) {
    const double expect = normal_cdf(std::min(iv.hi, 1e300), 0.0, var) - normal_cdf(iv.lo, 0.0, var);
    EXPECT_NEAR(hvm_event_probability(vac, z, {iv}), expect, 1e-4);
  }
}

TEST(CharacteristicCheck, GaussianStates) {
  const HiddenVariableModel vac = model_of(GaussianState::vacuum(1));
  const auto r0 = empirical_characteristic_check(vac, {SymplecticVector{0.0, 0.0}, kQ}, GaussianState::vacuum(1));
  EXPECT_NEAR(std::abs(r0.points[0].model - 1.0), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(r0.points[1].model - std::exp(-0.25)), 0.0, 2e-3);
  const State sq = state_from(R"({"kind":"squeezed","params":{"r":0.5}})");
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<SymplecticVector> pts;
  while (pts.size() < 10) {
    const SymplecticVector v{u(rng), u(rng)};
    if (v.norm() <= 3.0) pts.push_back(v);
  }
  const auto r = empirical_characteristic_check(model_of(sq), pts, sq);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_deviation, 2e-3);
}
