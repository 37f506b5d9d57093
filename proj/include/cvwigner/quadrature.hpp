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

#include <vector>

#include "cvwigner/core.hpp"

namespace cvw {

/// Nodes and weights of the n-point Gauss-Hermite rule for the standard
/// normal density: sum_i w_i f(x_i) = E[f(X)], exact for polynomials of
/// degree < 2n. Computed with the Golub-Welsch eigenvalue method.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_hermite_normal(int n);

}  // namespace cvw
