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

#include "cvwigner/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace cvw {

Polynomial::Polynomial(int variables, std::vector<Term> terms) : variables_(variables), terms_(std::move(terms)) {
  if (variables < 1) throw PreconditionError("polynomial needs at least one variable");
  for (const Term& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != variables) throw DimensionError("term has the wrong number of exponents");
    for (int e : t.exponents) {
      if (e < 0) throw PreconditionError("negative exponent");
    }
    if (!std::isfinite(t.coefficient)) throw PreconditionError("non-finite coefficient");
  }
}

Polynomial Polynomial::variable(int variables, int i) {
  std::vector<int> e(static_cast<std::size_t>(variables), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  return Polynomial(variables, {{e, 1.0}});
}

int Polynomial::degree() const {
  int d = 0;
  for (const Term& t : terms_) {
    int s = 0;
    for (int e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

double Polynomial::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != variables_) throw DimensionError("wrong number of polynomial arguments");
  double s = 0.0;
  for (const Term& t : terms_) {
    double v = t.coefficient;
    for (int i = 0; i < variables_; ++i) v *= std::pow(x[static_cast<std::size_t>(i)], t.exponents[static_cast<std::size_t>(i)]);
    s += v;
  }
  return s;
}

std::string Polynomial::to_string() const {
  static const char* names = "xyzuvw";
  std::ostringstream out;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) out << " + ";
    first = false;
    bool wrote = false;
    if (t.coefficient != 1.0) {
      out << t.coefficient;
      wrote = true;
    }
    for (int i = 0; i < variables_; ++i) {
      const int e = t.exponents[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      if (wrote) out << '*';
      if (i < 6) {
        out << names[i];
      } else {
        out << "x" << i + 1;
      }
      if (e > 1) out << '^' << e;
      wrote = true;
    }
    if (!wrote) out << t.coefficient;
  }
  return first ? "0" : out.str();
}

PolynomialObservable::PolynomialObservable(Context context, Polynomial poly)
    : context_(std::move(context)), poly_(std::move(poly)) {
  if (poly_.variables() != context_.size()) {
    throw PreconditionError("polynomial variable count must match the context size");
  }
  if (poly_.degree() > kMaxDegree) throw PreconditionError("polynomial observables are limited to degree 6");
}

double PolynomialObservable::evaluate(const Vec& z) const {
  std::vector<double> x;
  for (const auto& g : context_.generators()) x.push_back(g.coords().dot(z));
  return poly_.evaluate(x);
}

}  // namespace cvw
