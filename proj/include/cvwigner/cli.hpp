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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvwigner/phase_space.hpp"

namespace cvw::cli {

inline constexpr const char* kSchemaVersion = "1.0";

/// Resolved settings of one invocation. Precedence is flags, then the
/// --config file, then these defaults.
struct RunConfig {
  std::string command;
  nlohmann::json state;
  std::optional<double> window;
  std::optional<int> points;
  std::optional<int> cutoff;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  int bins = 50;
  std::string out = ".";
  std::vector<SymplecticVector> observables;
  int threads = 1;
  double tv_tolerance = 0.02;
  double event_tolerance = 2e-3;
  /// lemma-check: run only the multiplicativity case with this name.
  std::optional<std::string> only_case;
  /// channel-compose: channels {"x", "y", "d"} applied in order.
  nlohmann::json channels;

  /// The part of the configuration that determines results (no output
  /// directory, no thread count).
  nlohmann::json to_json() const;
};

/// Inline JSON when the text starts with '{', otherwise a file path.
nlohmann::json load_json_argument(const std::string& text);
/// "a,b,..." as a phase-space vector.
SymplecticVector parse_observable(const std::string& text);

nlohmann::json cmd_wigner(const RunConfig& config);
nlohmann::json cmd_negativity(const RunConfig& config);
nlohmann::json cmd_hvm_compare(const RunConfig& config);
nlohmann::json cmd_hudson(const RunConfig& config);
nlohmann::json cmd_lemma_check(const RunConfig& config);
nlohmann::json cmd_channel_compose(const RunConfig& config);

/// Dispatches on config.command, writes <out>/<command>.json and returns it.
nlohmann::json run(const RunConfig& config);

/// Full command line entry point; returns the process exit code
/// (0 success, 2 parse error, 3 numerical inadequacy, 4 precondition).
int main(int argc, char** argv);

}  // namespace cvw::cli
