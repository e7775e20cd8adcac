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

#include "tas/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tas {

PolynomialFunction PolynomialFunction::constant(Universe universe,
                                                double value) {
  if (!universe) throw std::invalid_argument("polynomial: null universe");
  TermMap terms;
  if (value != 0.0) terms.emplace(std::vector<int>(universe->size(), 0), value);
  return PolynomialFunction(std::move(universe), std::move(terms));
}

PolynomialFunction PolynomialFunction::variable(Universe universe,
                                                std::size_t index) {
  if (!universe || index >= universe->size())
    throw std::invalid_argument("polynomial: variable index out of range");
  std::vector<int> exponents(universe->size(), 0);
  exponents[index] = 1;
  TermMap terms;
  terms.emplace(std::move(exponents), 1.0);
  return PolynomialFunction(std::move(universe), std::move(terms));
}

int PolynomialFunction::degree() const {
  int best = 0;
  for (const auto& [exponents, coeff] : terms_) {
    int total = 0;
    for (int e : exponents) total += e;
    best = std::max(best, total);
  }
  return best;
}

void PolynomialFunction::check_compatible(
    const PolynomialFunction& other) const {
  if (!universe_ || !other.universe_)
    throw std::invalid_argument("polynomial: uninitialized operand");
  if (universe_ != other.universe_ && *universe_ != *other.universe_)
    throw std::invalid_argument("polynomial: mismatched variable universes");
}

void PolynomialFunction::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == 0.0) ? terms_.erase(it) : std::next(it);
}

PolynomialFunction PolynomialFunction::operator+(
    const PolynomialFunction& other) const {
  check_compatible(other);
  PolynomialFunction out(universe_, terms_);
  for (const auto& [exponents, coeff] : other.terms_)
    out.terms_[exponents] += coeff;
  out.prune();
  return out;
}

PolynomialFunction PolynomialFunction::operator-(
    const PolynomialFunction& other) const {
  check_compatible(other);
  PolynomialFunction out(universe_, terms_);
  for (const auto& [exponents, coeff] : other.terms_)
    out.terms_[exponents] -= coeff;
  out.prune();
  return out;
}

PolynomialFunction PolynomialFunction::operator*(
    const PolynomialFunction& other) const {
  check_compatible(other);
  TermMap product;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      std::vector<int> exponents(ea.size());
      for (std::size_t i = 0; i < ea.size(); ++i) exponents[i] = ea[i] + eb[i];
      product[std::move(exponents)] += ca * cb;
    }
  }
  PolynomialFunction out(universe_, std::move(product));
  out.prune();
  return out;
}

PolynomialFunction PolynomialFunction::operator*(double scalar) const {
  PolynomialFunction out(universe_, terms_);
  for (auto& [exponents, coeff] : out.terms_) coeff *= scalar;
  out.prune();
  return out;
}

double PolynomialFunction::evaluate(const std::vector<double>& values) const {
  if (!universe_) return 0.0;
  if (values.size() != universe_->size())
    throw std::invalid_argument("polynomial: wrong number of values");
  double total = 0.0;
  for (const auto& [exponents, coeff] : terms_) {
    double term = coeff;
    for (std::size_t i = 0; i < exponents.size(); ++i)
      for (int e = 0; e < exponents[i]; ++e) term *= values[i];
    total += term;
  }
  return total;
}

std::string PolynomialFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [exponents, coeff] : terms_) {
    const double c = coeff;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const double mag = std::abs(c);
    bool printed = false;
    bool any_var = std::any_of(exponents.begin(), exponents.end(),
                               [](int e) { return e != 0; });
    if (mag != 1.0 || !any_var) {
      out << mag;
      printed = true;
    }
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (exponents[i] == 0) continue;
      if (printed) out << "*";
      out << (*universe_)[i];
      if (exponents[i] > 1) out << "^" << exponents[i];
      printed = true;
    }
  }
  return out.str();
}

}  // namespace tas
