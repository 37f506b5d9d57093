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

#include "cvwigner/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "cvwigner/hvm.hpp"
#include "cvwigner/oracle.hpp"
#include "cvwigner/parallel.hpp"
#include "cvwigner/states.hpp"
#include "cvwigner/weyl.hpp"
#include "cvwigner/wigner.hpp"

namespace cvw::cli {
namespace {

using nlohmann::json;

json to_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vec(m.row(i).transpose())));
  return rows;
}

Mat matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + " must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Mat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError(std::string(what) + " must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!row[static_cast<std::size_t>(k)].is_number()) throw ParseError(std::string(what) + " has a non-numeric entry");
      m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
  }
  return m;
}

Vec vector_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(std::string(what) + " has a non-numeric entry");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

json base_report(const RunConfig& c) {
  return {{"schema_version", kSchemaVersion}, {"command", c.command}, {"config", c.to_json()}};
}

StateSpec state_spec(const RunConfig& c) {
  if (c.state.is_null()) throw ParseError("--state is required for " + c.command);
  StateSpec spec = StateSpec::from_json(c.state);
  if (c.cutoff) spec.cutoff = *c.cutoff;
  return spec;
}

GridSpec wigner_grid(const RunConfig& c, const StateSpec& spec) {
  const GridSpec def = default_wigner_grid(spec);
  const double window = c.window.value_or(def.axes().front().max);
  const int points = c.points.value_or(def.axes().front().points);
  if (!(window > 0.0)) throw ParseError("--window must be positive");
  if (points < 3 || points % 2 == 0) throw ParseError("--points must be odd and at least 3");
  return GridSpec::symmetric(spec.modes, window, points);
}

std::vector<SymplecticVector> observables(const RunConfig& c, int modes) {
  if (!c.observables.empty()) {
    for (const auto& z : c.observables) {
      if (z.modes() != modes) throw ParseError("observable length does not match the mode count");
    }
    return c.observables;
  }
  const SymplecticVector q = SymplecticVector::q_axis(modes, 0);
  const SymplecticVector p = SymplecticVector::p_axis(modes, 0);
  return {q, p, (q + p) * (1.0 / std::numbers::sqrt2)};
}

std::string format_point(const Vec& z) {
  std::ostringstream out;
  out << '(';
  for (Eigen::Index i = 0; i < z.size(); ++i) out << (i ? ", " : "") << z[i];
  out << ')';
  return out.str();
}

SymplecticMatrix random_single_mode_symplectic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> squeeze(-0.5, 0.5);
  return SymplecticMatrix::rotation(angle(rng)) * SymplecticMatrix::squeeze(squeeze(rng)) *
         SymplecticMatrix::rotation(angle(rng));
}

Mat random_matrix(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m(i, k) = g(rng);
  }
  return m;
}

GaussianChannel random_channel(std::mt19937_64& rng, int modes) {
  const int n = 2 * modes;
  const Mat x = random_matrix(rng, n, 0.6);
  const Mat a = symplectic_form_matrix(modes) - x * symplectic_form_matrix(modes) * x.transpose();
  // (i/2) a is Hermitian with spectrum +-s/2 for the singular values s of a.
  const double s = Eigen::JacobiSVD<Mat>(a).singularValues()[0];
  const Mat b = random_matrix(rng, n, 0.3);
  const Mat y = (0.5 * s + 0.05) * Mat::Identity(n, n) + b * b.transpose();
  const Vec d = random_matrix(rng, n, 1.0).col(0);
  return GaussianChannel(x, y, d);
}

GaussianState random_state(std::mt19937_64& rng, int modes) {
  const int n = 2 * modes;
  std::uniform_real_distribution<double> u(0.5, 1.5);
  Mat s = Mat::Identity(n, n);
  for (int j = 0; j < modes; ++j) {
    Mat local = Mat::Identity(n, n);
    const Mat r = random_single_mode_symplectic(rng).matrix();
    local(j, j) = r(0, 0);
    local(j, modes + j) = r(0, 1);
    local(modes + j, j) = r(1, 0);
    local(modes + j, modes + j) = r(1, 1);
    s = local * s;
  }
  Vec nu(n);
  for (int j = 0; j < modes; ++j) nu[j] = nu[modes + j] = u(rng);
  const Vec mean = random_matrix(rng, n, 1.0).col(0);
  return GaussianState(mean, s * nu.asDiagonal() * s.transpose());
}

double moment_deviation(const GaussianState& a, const GaussianState& b) {
  return std::max((a.mean() - b.mean()).cwiseAbs().maxCoeff(),
                  (a.covariance() - b.covariance()).cwiseAbs().maxCoeff());
}

double channel_deviation(const GaussianChannel& a, const GaussianChannel& b) {
  return std::max({(a.x() - b.x()).cwiseAbs().maxCoeff(), (a.y() - b.y()).cwiseAbs().maxCoeff(),
                   (a.d() - b.d()).cwiseAbs().maxCoeff()});
}

json channel_json(const GaussianChannel& e) { return {{"x", to_json(e.x())}, {"y", to_json(e.y())}, {"d", to_json(e.d())}}; }

std::string file_stem(const std::string& command) {
  std::string s = command;
  for (char& ch : s) {
    if (ch == '-') ch = '_';
  }
  return s;
}

}  // namespace

json RunConfig::to_json() const {
  json obs = json::array();
  for (const auto& z : observables) obs.push_back(cli::to_json(z.coords()));
  json j = {{"state", state},       {"samples", samples},   {"seed", seed},
            {"bins", bins},         {"observables", obs},   {"tv_tolerance", tv_tolerance},
            {"event_tolerance", event_tolerance}};
  j["window"] = window ? json(*window) : json(nullptr);
  j["points"] = points ? json(*points) : json(nullptr);
  j["cutoff"] = cutoff ? json(*cutoff) : json(nullptr);
  if (only_case) j["case"] = *only_case;
  if (!channels.is_null()) j["channels"] = channels;
  return j;
}

json load_json_argument(const std::string& text) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\n\r");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(text);
    if (!in) throw ParseError("cannot read " + text);
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

SymplecticVector parse_observable(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("observable entries must be numbers: " + text);
    }
  }
  if (v.empty() || v.size() % 2 != 0) throw ParseError("observable needs an even, non-zero number of entries");
  return SymplecticVector(Eigen::Map<Vec>(v.data(), static_cast<Eigen::Index>(v.size())));
}

json cmd_wigner(const RunConfig& c) {
  const StateSpec spec = state_spec(c);
  const State st = make_state(spec);
  const WignerGrid w = wigner(st, wigner_grid(c, spec));
  std::filesystem::create_directories(c.out);
  write_wigner_csv(w, (std::filesystem::path(c.out) / "wigner.csv").string());
  json r = base_report(c);
  r.update(wigner_summary(w));
  return r;
}

json cmd_negativity(const RunConfig& c) {
  const StateSpec spec = state_spec(c);
  const WignerGrid w = wigner(make_state(spec), wigner_grid(c, spec));
  const MinValue mv = min_value(w);
  json r = base_report(c);
  r["normalization"] = w.integral();
  r["min"] = mv.value;
  r["min_location"] = to_json(mv.location);
  r["negativity_volume"] = negativity_volume(w);
  r["log_negativity"] = log_negativity(w);
  r["negative"] = mv.value < -kNegativityTolerance * w.max_abs();
  return r;
}

json cmd_hvm_compare(const RunConfig& c) {
  const StateSpec spec = state_spec(c);
  const State st = make_state(spec);
  const GridSpec grid = wigner_grid(c, spec);
  const WignerGrid w = wigner(st, grid);
  json r = base_report(c);
  HiddenVariableModel model;
  try {
    model = build_hvm(w);
  } catch (const NegativityError& e) {
    r["status"] = "contextual";
    r["witness"] = e.to_json();
    r["message"] = "contextual at " + format_point(e.location());
    return r;
  }
  r["status"] = "noncontextual-model-built";
  r["renormalization"] = model.renormalization();
  const double window = grid.axes().front().max;
  json comparisons = json::array();
  bool all = true;
  for (const auto& z : observables(c, spec.modes)) {
    const double reach = window * z.norm();
    const BinSpec bins{-reach, reach, c.bins};
    const auto hv = hvm_homodyne_distribution(model, z, bins, c.samples, c.seed);
    const auto qm = quantum_homodyne_distribution(st, z, bins);
    const double tv = tv_distance(hv, qm);
    json events = json::array();
    bool pass = tv <= c.tv_tolerance;
    for (const Interval& iv : {Interval{0.0, reach}, Interval{-1.0, 1.0}}) {
      const double a = hvm_event_probability(model, z, {iv});
      const double b = event_probability(st, z, {iv});
      const bool ok = std::abs(a - b) <= c.event_tolerance;
      pass = pass && ok;
      events.push_back({{"interval", {iv.lo, iv.hi}},
                        {"hvm", a},
                        {"oracle", b},
                        {"deviation", std::abs(a - b)},
                        {"tolerance", c.event_tolerance},
                        {"pass", ok}});
    }
    all = all && pass;
    comparisons.push_back({{"state", spec.to_json()},
                           {"observable", to_json(z.coords())},
                           {"n", c.samples},
                           {"seed", c.seed},
                           {"bins", {{"min", bins.min}, {"max", bins.max}, {"count", bins.count}}},
                           {"tv_distance", tv},
                           {"tolerance", c.tv_tolerance},
                           {"events", events},
                           {"pass", pass}});
  }
  r["comparisons"] = comparisons;
  r["pass"] = all;
  return r;
}

json cmd_hudson(const RunConfig& c) {
  const StateSpec spec = state_spec(c);
  const HudsonReport h = hudson_classify(make_state(spec), wigner_grid(c, spec));
  json r = base_report(c);
  r["classification"] = to_string(h.classification);
  r["purity"] = h.purity;
  r["min_value"] = h.min_value;
  r["max_abs"] = h.max_abs;
  r["fourth_cumulant"] = h.max_excess_kurtosis;
  r["gaussianity_consistent"] = h.gaussianity_consistent;
  return r;
}

json cmd_lemma_check(const RunConfig& c) {
  json r = base_report(c);
  int passed = 0, flagged = 0, failed = 0;

  // Multiplicativity of the Wigner transform on polynomial observables.
  const int cutoff = c.cutoff.value_or(40);
  const int m = 2;
  const auto q1 = SymplecticVector::q_axis(m, 0), q2 = SymplecticVector::q_axis(m, 1), p2 = SymplecticVector::p_axis(m, 1);
  struct Fn {
    std::string name;
    int vars;
    std::vector<Polynomial::Term> terms;
  };
  const std::vector<Fn> fns = {{"x", 1, {{{1}, 1.0}}},
                               {"x^2", 1, {{{2}, 1.0}}},
                               {"xy", 2, {{{1, 1}, 1.0}}},
                               {"x^2+y^2", 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}}},
                               {"xy^2", 2, {{{1, 2}, 1.0}}}};
  const std::vector<std::pair<std::string, std::vector<SymplecticVector>>> contexts = {
      {"{q1}", {q1}}, {"{q1,q2}", {q1, q2}}, {"{q1,p2}", {q1, p2}}};
  const GridSpec grid = GridSpec::symmetric(m, kTrustedWindow, 25);
  json cases = json::array();
  for (const auto& [cname, gens] : contexts) {
    for (const auto& f : fns) {
      if (f.vars > static_cast<int>(gens.size())) continue;
      // Pad univariate functions with unused variables for larger contexts.
      std::vector<Polynomial::Term> terms = f.terms;
      for (auto& t : terms) t.exponents.resize(gens.size(), 0);
      const std::string name = f.name + " on " + cname;
      if (c.only_case && *c.only_case != name) continue;
      const PolynomialObservable obs(Context(gens), Polynomial(static_cast<int>(gens.size()), terms));
      const auto rep = check_wigner_multiplicativity(obs, grid, cutoff, name);
      json j = rep.to_json();
      j["status"] = rep.pass ? "pass" : (rep.flagged ? "flagged" : "fail");
      (rep.pass ? passed : (rep.flagged ? flagged : failed)) += 1;
      cases.push_back(j);
    }
  }
  if (c.only_case && cases.empty()) throw ParseError("unknown lemma-check case: " + *c.only_case);
  r["multiplicativity"] = {{"cutoff", cutoff}, {"cases", cases}};

  if (!c.only_case) {
    // Metaplectic covariance: U_S (zeta R) U_S^dag = (S^T zeta) R.
    constexpr int kCovCutoff = 40;
    constexpr int kCovKeep = 15;
    constexpr double kCovTolerance = 1e-6;
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    json cov = json::array();
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const SymplecticMatrix s = random_single_mode_symplectic(rng);
      const double a = angle(rng);
      for (const SymplecticVector& z : {SymplecticVector{1.0, 0.0}, SymplecticVector{0.0, 1.0},
                                        SymplecticVector{std::cos(a), std::sin(a)}}) {
        const double dev = metaplectic_covariance_deviation(z, s, kCovCutoff, kCovKeep);
        worst = std::max(worst, dev);
        cov.push_back({{"symplectic", to_json(s.matrix())}, {"zeta", to_json(z.coords())}, {"deviation", dev}});
      }
    }
    const bool cov_pass = worst <= kCovTolerance;
    (cov_pass ? passed : failed) += 1;
    r["covariance"] = {{"cutoff", kCovCutoff}, {"keep_levels", kCovKeep}, {"tolerance", kCovTolerance},
                       {"max_deviation", worst}, {"cases", cov}, {"pass", cov_pass}};

    // Additivity identities and linearity of the value assignment.
    std::uniform_int_distribution<int> modes(2, 4);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    bool identities = true;
    double extension = 0.0, linearity = 0.0;
    for (int t = 0; t < 100; ++t) {
      const int mm = modes(rng);
      const int i = std::uniform_int_distribution<int>(0, mm - 1)(rng);
      int j = std::uniform_int_distribution<int>(0, mm - 2)(rng);
      if (j >= i) ++j;
      const auto quad = make_additivity_quadruple(mm, i, j, coef(rng), coef(rng));
      identities = identities && lemma1_commutation_identities(quad.u, quad.v, quad.u_prime, quad.v_prime);
      Vec phi(2 * mm), z1(2 * mm), z2(2 * mm);
      for (int k = 0; k < 2 * mm; ++k) {
        phi[k] = coef(rng);
        z1[k] = coef(rng);
        z2[k] = coef(rng);
      }
      const SymplecticVector ph(phi);
      const auto lambda = [&](const SymplecticVector& z) { return value_assignment(ph, z); };
      extension = std::max(extension, std::abs(additive_extension_value(lambda, quad) - lambda(quad.u + quad.v)));
      const SymplecticVector a(z1), b(z2);
      linearity = std::max(linearity, std::abs(lambda(a + b) - lambda(a) - lambda(b)));
    }
    const bool l1_pass = identities && extension <= 1e-12 && linearity <= 1e-12;
    (l1_pass ? passed : failed) += 1;
    r["additivity"] = {{"instances", 100},
                   {"identities_hold", identities},
                   {"max_extension_error", extension},
                   {"max_linearity_error", linearity},
                   {"tolerance", 1e-12},
                   {"pass", l1_pass}};
  }

  r["summary"] = {{"passed", passed}, {"flagged", flagged}, {"failed", failed}};
  r["status"] = failed > 0 ? "fail" : (flagged > 0 ? "pass-with-truncation-flags" : "pass");
  return r;
}

json cmd_channel_compose(const RunConfig& c) {
  json r = base_report(c);
  if (c.channels.is_array() && !c.channels.empty()) {
    std::vector<GaussianChannel> chain;
    for (const json& e : c.channels) {
      if (!e.is_object() || !e.contains("x") || !e.contains("y") || !e.contains("d")) {
        throw ParseError("each channel needs \"x\", \"y\" and \"d\"");
      }
      chain.emplace_back(matrix_from_json(e["x"], "x"), matrix_from_json(e["y"], "y"), vector_from_json(e["d"], "d"));
    }
    GaussianChannel total = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i) total = compose_channels(total, chain[i]);
    r["composed"] = channel_json(total);
    if (!c.state.is_null()) {
      const State st = make_state(state_spec(c));
      const auto* g = std::get_if<GaussianState>(&st);
      if (!g) throw PreconditionError("channel-compose needs a Gaussian state");
      GaussianState seq = *g;
      for (const auto& e : chain) seq = apply_gaussian_channel(seq, e);
      const GaussianState once = apply_gaussian_channel(*g, total);
      r["output"] = {{"mean", to_json(once.mean())}, {"covariance", to_json(once.covariance())}};
      r["sequential_deviation"] = moment_deviation(seq, once);
    }
    return r;
  }

  const int modes = c.state.is_null() ? 2 : state_spec(c).modes;
  std::mt19937_64 rng(c.seed);
  double seq_dev = 0.0, assoc_dev = 0.0;
  for (int t = 0; t < 20; ++t) {
    const GaussianChannel e1 = random_channel(rng, modes), e2 = random_channel(rng, modes), e3 = random_channel(rng, modes);
    const GaussianState s = random_state(rng, modes);
    seq_dev = std::max(seq_dev, moment_deviation(apply_gaussian_channel(apply_gaussian_channel(s, e1), e2),
                                                 apply_gaussian_channel(s, compose_channels(e1, e2))));
    assoc_dev = std::max(assoc_dev, channel_deviation(compose_channels(compose_channels(e1, e2), e3),
                                                      compose_channels(e1, compose_channels(e2, e3))));
  }
  r["random_suite"] = {{"modes", modes},       {"triples", 20},  {"sequential_deviation", seq_dev},
                       {"associativity_deviation", assoc_dev}, {"tolerance", 1e-12},
                       {"pass", seq_dev <= 1e-12 && assoc_dev <= 1e-12}};
  return r;
}

json run(const RunConfig& c) {
  set_thread_count(c.threads);
  json r;
  if (c.command == "wigner") {
    r = cmd_wigner(c);
  } else if (c.command == "negativity") {
    r = cmd_negativity(c);
  } else if (c.command == "hvm-compare") {
    r = cmd_hvm_compare(c);
  } else if (c.command == "hudson") {
    r = cmd_hudson(c);
  } else if (c.command == "lemma-check") {
    r = cmd_lemma_check(c);
  } else if (c.command == "channel-compose") {
    r = cmd_channel_compose(c);
  } else {
    throw ParseError("unknown command " + c.command);
  }
  std::filesystem::create_directories(c.out);
  std::ofstream out(std::filesystem::path(c.out) / (file_stem(c.command) + ".json"));
  if (!out) throw Error("cannot write report to " + c.out);
  out << r.dump(2) << '\n';
  return r;
}

int main(int argc, char** argv) {
  CLI::App app{"Wigner functions, negativity and phase-space hidden-variable models of bosonic states"};
  app.require_subcommand(1);
  std::string state, config_path, out, only_case;
  double window = 0.0;
  int points = 0, cutoff = 0, bins = 0, threads = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> obs;
  auto* o_state = app.add_option("--state", state, "StateSpec JSON, inline or a file path");
  auto* o_config = app.add_option("--config", config_path, "JSON file with any of the settings below");
  auto* o_window = app.add_option("--window", window, "Half-width of the phase-space grid");
  auto* o_points = app.add_option("--points", points, "Grid points per axis (odd)");
  auto* o_cutoff = app.add_option("--cutoff", cutoff, "Per-mode Fock cutoff");
  auto* o_samples = app.add_option("--samples", samples, "Hidden-variable samples");
  auto* o_seed = app.add_option("--seed", seed, "Random seed");
  auto* o_bins = app.add_option("--bins", bins, "Histogram bins");
  auto* o_out = app.add_option("--out", out, "Output directory");
  auto* o_obs = app.add_option("--observable", obs, "Homodyne observable \"a,b,...\" (repeatable)");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads");
  auto* o_case = app.add_option("--case", only_case, "lemma-check: single multiplicativity case");
  for (const char* name : {"wigner", "negativity", "hvm-compare", "hudson", "lemma-check", "channel-compose"}) {
    app.add_subcommand(name)->fallthrough();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig c;
    c.command = app.get_subcommands().front()->get_name();
    if (o_config->count()) {
      const json j = load_json_argument(config_path);
      try {
        if (j.contains("state")) c.state = j["state"].is_string() ? load_json_argument(j["state"].get<std::string>()) : j["state"];
        if (j.contains("window") && !j["window"].is_null()) c.window = j["window"].get<double>();
        if (j.contains("points") && !j["points"].is_null()) c.points = j["points"].get<int>();
        if (j.contains("cutoff") && !j["cutoff"].is_null()) c.cutoff = j["cutoff"].get<int>();
        if (j.contains("samples")) c.samples = j["samples"].get<std::size_t>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("bins")) c.bins = j["bins"].get<int>();
        if (j.contains("out")) c.out = j["out"].get<std::string>();
        if (j.contains("threads")) c.threads = j["threads"].get<int>();
        if (j.contains("tv_tolerance")) c.tv_tolerance = j["tv_tolerance"].get<double>();
        if (j.contains("event_tolerance")) c.event_tolerance = j["event_tolerance"].get<double>();
        if (j.contains("case")) c.only_case = j["case"].get<std::string>();
        if (j.contains("channels")) c.channels = j["channels"];
        if (j.contains("observables")) {
          for (const auto& z : j["observables"]) c.observables.emplace_back(vector_from_json(z, "observable"));
        }
      } catch (const json::exception& e) {
        throw ParseError(std::string("bad config value: ") + e.what());
      }
    }
    if (o_state->count()) c.state = load_json_argument(state);
    if (o_window->count()) c.window = window;
    if (o_points->count()) c.points = points;
    if (o_cutoff->count()) c.cutoff = cutoff;
    if (o_samples->count()) c.samples = samples;
    if (o_seed->count()) c.seed = seed;
    if (o_bins->count()) c.bins = bins;
    if (o_out->count()) c.out = out;
    if (o_threads->count()) c.threads = threads;
    if (o_case->count()) c.only_case = only_case;
    if (o_obs->count()) {
      c.observables.clear();
      for (const auto& s : obs) c.observables.push_back(parse_observable(s));
    }
    if (c.samples < 1) throw ParseError("--samples must be at least 1");
    if (c.bins < 1) throw ParseError("--bins must be at least 1");
    if (c.threads < 1) throw ParseError("--threads must be at least 1");
    if (c.cutoff && *c.cutoff < 1) throw ParseError("--cutoff must be at least 1");
    std::cout << run(c).dump(2) << std::endl;
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const InadequacyError& e) {
    std::cerr << "numerical inadequacy: " << e.what() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 4;
  } catch (const DimensionError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cvw::cli
