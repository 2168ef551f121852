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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcswitch/correlation.hpp"
#include "lcswitch/expression.hpp"
#include "lcswitch/inequality.hpp"
#include "lcswitch/rational.hpp"

namespace lcs {

/// Image array: coordinate i is sent to perm[i].
using Permutation = std::vector<std::uint32_t>;

Permutation identity_permutation(std::size_t n);
/// (a * b)[i] = a[b[i]]: apply b, then a.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
bool is_identity(const Permutation& p);

/// A simultaneous relabelling of scenario variables: every rule's right-hand
/// side is evaluated on the original values. Variables without a rule keep
/// their values.
///
/// Text form, rules separated by ',' or ';':
///
///     x1 -> x1 ^ 1, a1 -> a1 ^ x1
///     c -> c ^ a1&a2&x1&x2
///     (a1, a2, x1, x2) -> (a2, a1, x2, x1)
class Relabelling {
 public:
  struct Rule {
    std::string variable;
    Expr value;
  };

  Relabelling() = default;
  explicit Relabelling(std::vector<Rule> rules);

  static Relabelling parse(std::string_view text);
  std::string to_string() const;

  const std::vector<Rule>& rules() const { return rules_; }

  /// The induced map on table coordinates. Throws ScenarioError when a rule
  /// names an unknown variable, leaves a value range, lets a setting depend
  /// on an outcome, or the map is not a bijection.
  Permutation permutation(const Scenario& scenario) const;

 private:
  std::vector<Rule> rules_;
};

/// (g p)[g(i)] = p[i]. For functionals the same rule gives f(g p) = (g^-1 f)(p).
template <typename T>
Correlation<T> apply(const Permutation& g, const Correlation<T>& corr);
LinearFunctional apply(const Permutation& g, const LinearFunctional& f);
RationalVector apply(const Permutation& g, std::span<const Rational> v);

/// Permutation group on table coordinates generated by relabellings, with a
/// Schreier-Sims stabilizer chain for order and membership queries.
class SymmetryGroup {
 public:
  SymmetryGroup(Scenario scenario, std::vector<Relabelling> generators);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<Relabelling>& generators() const { return generators_; }
  const std::vector<Permutation>& permutations() const { return perms_; }

  Integer order() const;
  bool contains(const Permutation& p) const;
  /// Permutation of a relabelling over this group's scenario; throws
  /// ScenarioError for other scenarios.
  Permutation element(const Relabelling& r) const { return r.permutation(scenario_); }

  /// Lexicographically smallest point of the orbit of v. Uses the normal
  /// subgroup of conditional c flips when it is present, otherwise
  /// enumerates the group (BudgetExceeded above `element_budget` elements).
  RationalVector canonical_form(std::span<const Rational> v) const;
  /// Breadth-first orbit under the generators (BudgetExceeded past `limit`).
  std::vector<RationalVector> orbit(std::span<const Rational> v, std::size_t limit = 1u << 24) const;
  /// Orbit size without storing the orbit points beyond hashing.
  std::size_t orbit_size(std::span<const Rational> v, std::size_t limit = 1u << 24) const;

  /// Size of the coset transversal used by canonical_form.
  std::size_t transversal_size() const;
  /// Number of independent c-flip blocks found in the group.
  std::size_t flip_blocks() const;

  static constexpr std::size_t element_budget = 1u << 22;

 private:
  struct Chain;
  struct Canonizer;

  Scenario scenario_;
  std::vector<Relabelling> generators_;
  std::vector<Permutation> perms_;
  std::shared_ptr<const Chain> chain_;
  std::shared_ptr<const Canonizer> canonizer_;
};

/// Eight relabellings generating the symmetry group of the without-z LC
/// polytope: x1 flip, a1 twist by x1, x2 flip, a2 twist by x2, the
/// conditional c flip, y flip, b twist by y, and the A1/A2 exchange.
std::vector<Relabelling> lc_generators();
/// The group they generate over the without-z scenario.
const SymmetryGroup& lc_symmetry_group();

}  // namespace lcs
