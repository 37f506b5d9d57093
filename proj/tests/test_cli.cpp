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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Workdir {
  fs::path path;
  explicit Workdir(const std::string& name) : path(fs::temp_directory_path() / ("cvw_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~Workdir() { fs::remove_all(path); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(CVW_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST(Cli, ExitCodes) {
  Workdir w("codes");
  const std::string out = " --out " + w.path.string();
  EXPECT_EQ(run("wigner --state '{\"kind\":\"bogus\"}'" + out), 2);
  EXPECT_EQ(run("wigner --state '{\"kind\":\"gkp\",\"params\":{\"delta\":0.3}}' --cutoff 30" + out), 3);
  EXPECT_EQ(run("hudson --state '{\"kind\":\"thermal\",\"params\":{\"nbar\":1}}'" + out), 4);
  EXPECT_EQ(run("hvm-compare --state '{\"kind\":\"fock\",\"params\":{\"n\":1}}' --samples 1000" + out), 0);
  EXPECT_EQ(load(w.path / "hvm_compare.json")["status"], "contextual");
  EXPECT_EQ(run("no-such-command" + out), 2);
}

TEST(Cli, WignerWritesGridAndSummary) {
  Workdir w("wigner");
  ASSERT_EQ(run("wigner --state '{\"kind\":\"fock\",\"params\":{\"n\":1}}' --points 41 --out " + w.path.string()), 0);
  const auto j = load(w.path / "wigner.json");
  EXPECT_LT(j["min"].get<double>(), -0.3);
  EXPECT_TRUE(fs::exists(w.path / "wigner.csv"));
}

TEST(Cli, DeterministicAcrossThreads) {
  Workdir a("det_a"), b("det_b");
  const std::string common = "hvm-compare --state '{\"kind\":\"squeezed\",\"params\":{\"r\":0.5}}' --samples 20000 --seed 5";
  ASSERT_EQ(run(common + " --threads 1 --out " + a.path.string()), 0);
  ASSERT_EQ(run(common + " --threads 4 --out " + b.path.string()), 0);
  EXPECT_EQ(slurp(a.path / "hvm_compare.json"), slurp(b.path / "hvm_compare.json"));
}

TEST(Cli, FlagsOverrideConfig) {
  Workdir w("precedence");
  const fs::path cfg = w.path / "config.json";
  std::ofstream(cfg) << R"({"state":{"kind":"vacuum"},"seed":11,"samples":2000})";
  ASSERT_EQ(run("hvm-compare --config " + cfg.string() + " --out " + w.path.string()), 0);
  EXPECT_EQ(load(w.path / "hvm_compare.json")["config"]["seed"], 11);
  ASSERT_EQ(run("hvm-compare --config " + cfg.string() + " --seed 12 --out " + w.path.string()), 0);
  const auto j = load(w.path / "hvm_compare.json");
  EXPECT_EQ(j["config"]["seed"], 12);
  EXPECT_EQ(j["config"]["samples"], 2000);
}
