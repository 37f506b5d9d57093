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

#include <cmath>
#include <numbers>
#include <string>

#include "cvwigner/states.hpp"

namespace cvw::testing {

inline State state_from(const std::string& json_text) {
  return make_state(StateSpec::from_json(nlohmann::json::parse(json_text)));
}

inline StateSpec spec_from(const std::string& json_text) { return StateSpec::from_json(nlohmann::json::parse(json_text)); }

inline double normal_cdf(double x, double mean, double var) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * var));
}

}  // namespace cvw::testing
