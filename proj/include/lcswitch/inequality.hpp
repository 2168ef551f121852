// Copyright 2026 The lcswitch Authors
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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcswitch/correlation.hpp"
#include "lcswitch/expression.hpp"
#include "lcswitch/rational.hpp"
#include "lcswitch/scenario.hpp"

namespace lcs {

/// One weighted shorthand probability: weight * P[event | fixed].
struct Term {
  Rational weight;
  Expr event;
  std::vector<FixedSetting> fixed;

  std::string to_string() const;
};

/// f(p) = offset + sum_i coefficients[i] * p[i] over flattened coordinates.
struct LinearFunctional {
  Scenario scenario;
  RationalVector coefficients;
  Rational offset;

  LinearFunctional(Scenario sc, RationalVector coeffs, Rational off = 0);
  static LinearFunctional zero(const Scenario& sc) {
    return LinearFunctional(sc, RationalVector(sc.size()));
  }

  Rational operator()(const ExactCorrelation& corr) const;
  double operator()(const FloatCorrelation& corr) const;
  Rational dot(std::span<const Rational> point) const;
};

/// Compiles terms into a functional. Events may mix outcomes and settings;
/// every satisfying assignment contributes weight / (number of free setting
/// tuples). Throws ScenarioError for variables outside the scenario.
LinearFunctional compile(const Scenario& scenario, std::span<const Term> terms);

/// lhs <= bound.
struct InequalityRecord {
  std::string name;
  std::vector<Term> terms;
  Rational bound;
  Variant variant;
  LinearFunctional lhs;

  /// The same inequality compiled over another scenario.
  InequalityRecord on(const Scenario& scenario) const;
  InequalityRecord on(Variant v) const { return on(Scenario::four_party(v)); }
};

InequalityRecord make_record(std::string name, std::vector<Term> terms, Rational bound, Variant variant);

/// Names accepted by builtin().
const std::vector<std::string>& builtin_names();

/// Built-in inequalities: main, i .. vii, i-footnote, chsh and gyni (alias of
/// iv). `variant` overrides the default scenario of the inequality.
InequalityRecord builtin(std::string_view name, std::optional<Variant> variant = std::nullopt);

/// Parses the line-oriented form
///
///     # comment
///     1 * P[b=0, a2=x1 | y=0]
///     + 1/2 * P[b=1 | y=0]
///     <= 1/2
///
/// A missing weight means 1; a leading '+' or '-' is allowed.
InequalityRecord parse_inequality(std::string_view text, std::string name, Variant variant);
std::string to_dsl(const InequalityRecord& rec);

template <class T>
struct Evaluation {
  T value;
  bool violated;
  T margin;
};

inline constexpr double kViolationTolerance = 1e-9;

/// value = lhs(corr); violated is strict in exact mode and beyond 1e-9 in
/// floating mode. A four-party correlation of the other variant is handled
/// by recompiling the record over its scenario.
Evaluation<Rational> evaluate(const InequalityRecord& rec, const ExactCorrelation& corr);
Evaluation<double> evaluate(const InequalityRecord& rec, const FloatCorrelation& corr);

}  // namespace lcs
