// Copyright 2026 The tas-workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TAS_POLYNOMIAL_HPP
#define TAS_POLYNOMIAL_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace tas {

/// Sparse multivariate polynomial over a fixed, shared variable universe.
/// Representation is canonical: terms keyed by exponent vector in sorted
/// order, zero coefficients dropped. Closed under the +,-,* used by the
/// acyclic chain solver, so parametric precomputation stays exact.
class PolynomialFunction {
 public:
  using Universe = std::shared_ptr<const std::vector<std::string>>;
  using TermMap = std::map<std::vector<int>, double>;

  PolynomialFunction() = default;

  static PolynomialFunction constant(Universe universe, double value);
  static PolynomialFunction variable(Universe universe, std::size_t index);

  const std::vector<std::string>& variables() const { return *universe_; }
  const Universe& universe() const { return universe_; }
  const TermMap& terms() const { return terms_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }

  PolynomialFunction operator+(const PolynomialFunction& other) const;
  PolynomialFunction operator-(const PolynomialFunction& other) const;
  PolynomialFunction operator*(const PolynomialFunction& other) const;
  PolynomialFunction operator*(double scalar) const;

  /// Evaluates at a point given in universe order.
  double evaluate(const std::vector<double>& values) const;

  /// Human-readable form, e.g. "1 - f_A2*f_A4".
  std::string to_string() const;

 private:
  PolynomialFunction(Universe universe, TermMap terms)
      : universe_(std::move(universe)), terms_(std::move(terms)) {}
  void prune();
  void check_compatible(const PolynomialFunction& other) const;

  Universe universe_;
  TermMap terms_;
};

}  // namespace tas

#endif  // TAS_POLYNOMIAL_HPP
