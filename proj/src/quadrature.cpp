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

#include "cvwigner/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace cvw {

GaussRule gauss_hermite_normal(int n) {
  if (n < 1) throw PreconditionError("Gauss-Hermite rule needs at least one node");
  Mat jacobi = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Mat> eig(jacobi);
  GaussRule rule;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(eig.eigenvalues()[i]);
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights.push_back(v0 * v0);
  }
  return rule;
}

}  // namespace cvw
