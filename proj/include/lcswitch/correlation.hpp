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

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lcswitch/errors.hpp"
#include "lcswitch/expression.hpp"
#include "lcswitch/rational.hpp"
#include "lcswitch/scenario.hpp"

namespace lcs {

/// Comparison policy per numeric mode: exact rationals compare exactly,
/// doubles within a tolerance.
template <class T>
struct Numeric;

template <>
struct Numeric<Rational> {
  static constexpr bool exact = true;
  static bool equal(const Rational& a, const Rational& b, double /*tol*/) { return a == b; }
  static double as_double(const Rational& a) { return a.get_d(); }
  static Rational from_rational(const Rational& a) { return a; }
};

template <>
struct Numeric<double> {
  static constexpr bool exact = false;
  static bool equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }
  static double as_double(double a) { return a; }
  static double from_rational(const Rational& a) { return a.get_d(); }
};

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kIndependenceTolerance = 1e-9;

/// A conditional probability table p(outcomes | settings), immutable after
/// construction. Entries are stored in the scenario's flattened order.
template <class T>
class Correlation {
 public:
  Correlation(Scenario scenario, std::vector<T> entries)
      : scenario_(std::move(scenario)), entries_(std::move(entries)) {
    if (entries_.size() != scenario_.size())
      throw ScenarioError("correlation has " + std::to_string(entries_.size()) +
                          " entries, scenario needs " + std::to_string(scenario_.size()));
  }

  /// Builds the table from (outcomes, settings, value) records; every index
  /// of the scenario must be covered exactly once.
  struct Record {
    std::vector<int> outcomes;
    std::vector<int> settings;
    T value;
  };
  static Correlation from_records(const Scenario& scenario, std::span<const Record> records);

  static Correlation uniform(const Scenario& scenario);

  /// Deterministic strategy: `rule(settings, outcomes)` writes the outcome
  /// tuple for the given setting tuple.
  static Correlation deterministic(const Scenario& scenario,
                                   const std::function<void(std::span<const int>, std::span<int>)>& rule);

  /// weight * a + (1 - weight) * b.
  static Correlation mixture(const T& weight, const Correlation& a, const Correlation& b);

  const Scenario& scenario() const { return scenario_; }
  std::span<const T> entries() const { return entries_; }
  const T& operator[](std::size_t index) const { return entries_[index]; }
  const T& at(std::span<const int> outcomes, std::span<const int> settings) const {
    return entries_[scenario_.index(outcomes, settings)];
  }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Correlation& a, const Correlation& b) {
    return a.scenario_ == b.scenario_ && a.entries_ == b.entries_;
  }

 private:
  Scenario scenario_;
  std::vector<T> entries_;
};

using ExactCorrelation = Correlation<Rational>;
using FloatCorrelation = Correlation<double>;
using AnyCorrelation = std::variant<ExactCorrelation, FloatCorrelation>;

FloatCorrelation to_float(const ExactCorrelation& corr);
/// Rounds every entry to the best rational with denominator at most
/// `max_denominator`. The result need not be exactly normalized.
ExactCorrelation to_exact(const FloatCorrelation& corr, const Integer& max_denominator);

struct ValidationIssue {
  enum class Kind { Range, Normalization } kind;
  std::size_t setting_index;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks that entries lie in [0,1] and each setting column sums to one
/// (exactly, or within 1e-12 for floating tables).
template <class T>
ValidationReport validate(const Correlation<T>& corr, double tolerance = kNormalizationTolerance);

/// "The joint marginal of `outcomes` does not depend on `settings`", i.e.
/// q(o|s r) = q(o|s' r) for all values o of the outcome subset, all values
/// s, s' of the setting subset and all values r of the remaining settings.
struct IndependenceRelation {
  std::vector<std::string> outcomes;
  std::vector<std::string> settings;

  std::string describe() const;
  friend bool operator==(const IndependenceRelation&, const IndependenceRelation&) = default;
};

/// Result of an independence test; on failure names the first offending pair
/// of setting tuples.
struct IndependenceCheck {
  bool holds = true;
  double max_deviation = 0.0;
  std::string witness;
};

template <class T>
IndependenceCheck check_independence_detailed(const Correlation<T>& corr, const IndependenceRelation& rel,
                                              double tolerance = kIndependenceTolerance);

template <class T>
bool check_independence(const Correlation<T>& corr, const IndependenceRelation& rel,
                        double tolerance = kIndependenceTolerance) {
  return check_independence_detailed(corr, rel, tolerance).holds;
}

/// A partial assignment of setting values.
struct FixedSetting {
  std::string variable;
  int value;
  friend bool operator==(const FixedSetting&, const FixedSetting&) = default;
};

/// Setting tuples consistent with `fixed`, as indices into the scenario's
/// setting-tuple order. Throws ScenarioError for unknown or non-setting
/// variables.
std::vector<std::size_t> consistent_settings(const Scenario& scenario, std::span<const FixedSetting> fixed);

/// p(event | fixed) with every setting not in `fixed` averaged uniformly and
/// independently.
template <class T>
T shorthand_probability(const Correlation<T>& corr, const Expr& event, std::span<const FixedSetting> fixed);

/// Marginal over a subset of parties, with the settings of the discarded
/// parties required to be irrelevant. Throws PreconditionError when a
/// discarded party's setting influences the kept outcomes.
template <class T>
Correlation<T> marginal(const Correlation<T>& corr, std::span<const std::size_t> kept_parties,
                        double tolerance = kIndependenceTolerance);

}  // namespace lcs
