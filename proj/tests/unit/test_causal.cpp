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

#include <span>

#include "doctest.h"
#include "lcswitch/causal.hpp"
#include "lcswitch/errors.hpp"
#include "lcswitch/quantum.hpp"
#include "support/oracles.hpp"

using namespace lcs;

namespace {

using Rule = void (*)(std::span<const int>, std::span<int>);

ExactCorrelation det(Variant v, Rule rule) { return ExactCorrelation::deterministic(Scenario::four_party(v), rule); }

// In LC1 only: A1 signals to A2.
void first_order(std::span<const int> s, std::span<int> o) { o[0] = 1, o[1] = s[0], o[2] = s[2], o[3] = s[1]; }
// In LC2 only: A2 signals to A1.
void second_order(std::span<const int> s, std::span<int> o) { o[0] = s[1], o[1] = 0, o[2] = 0, o[3] = s[0]; }

HiddenVariableModel model_of(const Rational& mu, const ExactCorrelation& b1, const ExactCorrelation& b2) {
  return {mu, b1, b2};
}

bool any_failed(const std::vector<RelationCheck>& checks) {
  for (const auto& c : checks)
    if (!c.holds) return true;
  return false;
}

}  // namespace

TEST_CASE("a definite-order mixture passes every check") {
  for (Variant v : {Variant::WithZ, Variant::WithoutZ}) {
    const auto b1 = det(v, first_order), b2 = det(v, second_order);
    const Rational mu(2, 7);
    const auto target = ExactCorrelation::mixture(mu, b1, b2);
    const ModelReport rep = verify_model(target, model_of(mu, b1, b2));
    CHECK(rep.ok());
    CHECK(rep.violations().empty());
    CHECK(rep.mixture_deviation == 0.0);
  }
}

TEST_CASE("swapped branches break the order relations only") {
  const auto b1 = det(Variant::WithoutZ, first_order), b2 = det(Variant::WithoutZ, second_order);
  const Rational mu(1, 3);
  const auto target = ExactCorrelation::mixture(mu, b1, b2);
  const ModelReport rep = verify_model(target, model_of(1 - mu, b2, b1));
  CHECK(rep.mixture_ok);
  CHECK(rep.locality_ok());
  CHECK_FALSE(rep.order_ok());
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.violations().empty());
}

TEST_CASE("a signalling branch breaks locality") {
  // b = x1: Alice 1 signals to Bob.
  const auto bad = det(Variant::WithoutZ, [](std::span<const int> s, std::span<int> o) {
    o[0] = 0, o[1] = 0, o[2] = s[0], o[3] = 0;
  });
  const auto b2 = det(Variant::WithoutZ, second_order);
  const auto target = ExactCorrelation::mixture(Rational(1, 2), bad, b2);
  const ModelReport rep = verify_model(target, model_of(Rational(1, 2), bad, b2));
  CHECK(rep.mixture_ok);
  CHECK_FALSE(rep.locality_ok());
  CHECK(any_failed(rep.locality));
}

TEST_CASE("mixture mismatch and weight range") {
  const auto b1 = det(Variant::WithoutZ, first_order), b2 = det(Variant::WithoutZ, second_order);
  const auto target = ExactCorrelation::mixture(Rational(1, 2), b1, b2);
  const ModelReport wrong = verify_model(target, model_of(Rational(1, 3), b1, b2));
  CHECK_FALSE(wrong.mixture_ok);
  CHECK_FALSE(wrong.mixture_witness.empty());
  CHECK(wrong.mixture_deviation == doctest::Approx(1.0 / 6));
  const ModelReport weight = verify_model(target, model_of(Rational(3, 2), b1, b2));
  CHECK_FALSE(weight.weight_ok);
  CHECK_FALSE(weight.ok());
}

TEST_CASE("strict mode also forbids z reaching the Alices and Bob") {
  // a1 = z in branch 1, otherwise the first-order strategy.
  const auto b1 = det(Variant::WithZ, [](std::span<const int> s, std::span<int> o) {
    o[0] = s[3], o[1] = s[0], o[2] = 0, o[3] = 0;
  });
  const auto b2 = det(Variant::WithZ, second_order);
  const auto target = ExactCorrelation::mixture(Rational(1, 2), b1, b2);
  const auto m = model_of(Rational(1, 2), b1, b2);
  CHECK(verify_model(target, m, ModelCheckMode::Lenient).ok());
  const ModelReport strict = verify_model(target, m, ModelCheckMode::Strict);
  CHECK_FALSE(strict.ok());
  CHECK_FALSE(strict.order_ok());
  CHECK(strict.locality_ok());
}

TEST_CASE("floating models compare within the tolerance") {
  const auto b1 = to_float(det(Variant::WithoutZ, first_order));
  const auto b2 = to_float(det(Variant::WithoutZ, second_order));
  const auto target = FloatCorrelation::mixture(0.25, b1, b2);
  CHECK(verify_model(target, FloatModel{0.25 + 1e-12, b1, b2}).ok());
  CHECK_FALSE(verify_model(target, FloatModel{0.25 + 1e-6, b1, b2}).ok());
}

TEST_CASE("Alice marginal of the switch is causal") {
  const auto p = correlation(SwitchSetup::defaults());
  MembershipOptions opt;
  opt.tolerance = 1e-9;
  const auto r = marginal_causal_check(p, opt);
  CHECK(r.marginal_ok);
  CHECK(r.alice_marginal_causal);
  REQUIRE(r.marginal.has_value());
  CHECK(r.marginal->scenario() == Scenario::alice_pair());
}

TEST_CASE("marginal checks on exact tables") {
  // Each Alice outputs the other's setting: the marginal is outside C.
  const auto g = det(Variant::WithoutZ, [](std::span<const int> s, std::span<int> o) {
    o[0] = s[1], o[1] = s[0], o[2] = 0, o[3] = 0;
  });
  const auto r = marginal_causal_check(g);
  CHECK(r.marginal_ok);
  CHECK_FALSE(r.alice_marginal_causal);
  REQUIRE(r.decomposition.has_value());
  REQUIRE(r.decomposition->violation.has_value());
  CHECK(r.decomposition->violation->margin > 0);

  const auto ok = marginal_causal_check(det(Variant::WithoutZ, first_order));
  CHECK(ok.alice_marginal_causal);

  // a1 = y: the Alice marginal is not even defined without y.
  const auto sig = det(Variant::WithoutZ, [](std::span<const int> s, std::span<int> o) {
    o[0] = s[2], o[1] = 0, o[2] = 0, o[3] = 0;
  });
  const auto bad = marginal_causal_check(sig);
  CHECK_FALSE(bad.marginal_ok);
  CHECK_FALSE(bad.issue.empty());
  CHECK_FALSE(bad.marginal.has_value());
}

TEST_CASE("chain-rule branches for the switch") {
  const auto p = correlation(SwitchSetup::defaults());
  MembershipOptions opt;
  opt.tolerance = 1e-9;
  const FloatModel m = chain_rule_branches(p, opt);
  CHECK(m.mu == doctest::Approx(0.5).epsilon(1e-9));
  const ModelReport rep = verify_model(p, m, ModelCheckMode::Lenient, 1e-9);
  CHECK(rep.mixture_ok);
  CHECK(rep.mixture_deviation < 1e-9);
  CHECK(rep.order_ok());
  // The violation has to come from somewhere: each branch lets y reach c.
  const auto prof = branch_signalling_profile(m);
  CHECK(prof[0].bob_to_charlie);
  CHECK(prof[1].bob_to_charlie);
}

TEST_CASE("chain rule on an exact LC member reproduces it") {
  // Bob's output ignores y here. Otherwise conditioning c on b can carry y
  // into the reattached branches even for a member of LC.
  const auto b1 = det(Variant::WithZ, [](std::span<const int> s, std::span<int> o) {
    o[0] = 1, o[1] = s[0], o[2] = 0, o[3] = s[1];
  });
  const auto b2 = det(Variant::WithZ, second_order);
  const auto target = ExactCorrelation::mixture(Rational(3, 5), b1, b2);
  const HiddenVariableModel m = chain_rule_branches(target);
  const ModelReport rep = verify_model(target, m, ModelCheckMode::Lenient);
  CHECK(rep.mixture_ok);
  CHECK(rep.order_ok());
  const auto prof = branch_signalling_profile(m);
  CHECK_FALSE(prof[0].bob_to_charlie);
  CHECK_FALSE(prof[1].bob_to_charlie);
}

TEST_CASE("the pair behind the chain rule") {
  const auto [p1, p2] = build_alice_bob_pair();
  CHECK(p1.scenario == Scenario::alice_bob());
  CHECK(p1.contains(ExactCorrelation::uniform(Scenario::alice_bob())));
  CHECK(p2.contains(ExactCorrelation::uniform(Scenario::alice_bob())));
}
