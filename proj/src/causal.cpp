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

#include "lcswitch/causal.hpp"

#include <cmath>

#include "lcswitch/errors.hpp"

namespace lcs {

bool ModelReport::locality_ok() const {
  for (const auto& c : locality)
    if (!c.holds) return false;
  return true;
}

bool ModelReport::order_ok() const {
  for (const auto& c : order)
    if (!c.holds) return false;
  return true;
}

bool ModelReport::ok() const { return weight_ok && branches_valid && mixture_ok && locality_ok() && order_ok(); }

std::vector<std::string> ModelReport::violations() const {
  std::vector<std::string> out;
  if (!weight_ok) out.push_back("mixture weight outside [0,1]");
  if (!branches_valid) out.push_back("a branch is not a normalized table");
  if (!mixture_ok) out.push_back("mixture does not reproduce the target: " + mixture_witness);
  for (const auto* group : {&locality, &order})
    for (const auto& c : *group)
      if (!c.holds)
        out.push_back(std::string(group == &locality ? "locality" : "order") + " branch " + std::to_string(c.branch) +
                      ": " + (c.witness.empty() ? c.relation.describe() + " fails" : c.witness));
  return out;
}

namespace {

bool has_z(const Scenario& sc) { return sc.find("z").has_value(); }

void require_four_party(const Scenario& sc) {
  if (!sc.variant()) throw ScenarioError("expected a four-party correlation");
}

template <class T>
RelationCheck run_check(const Correlation<T>& corr, IndependenceRelation rel, int branch, double tolerance) {
  IndependenceCheck c = check_independence_detailed(corr, rel, tolerance);
  return RelationCheck{std::move(rel), branch, c.holds, c.max_deviation, c.witness};
}

std::vector<IndependenceRelation> locality_relations(const Scenario& sc) {
  std::vector<IndependenceRelation> out{{{"a1", "a2", "c"}, {"y"}}};
  if (has_z(sc)) out.push_back({{"b"}, {"x1", "x2", "z"}});
  else out.push_back({{"b"}, {"x1", "x2"}});
  return out;
}

}  // namespace

template <class T>
ModelReport verify_model(const Correlation<T>& target, const MixtureModel<T>& model, ModelCheckMode mode,
                         double tolerance) {
  const Scenario& sc = target.scenario();
  require_four_party(sc);
  if (!(model.branch1.scenario() == sc) || !(model.branch2.scenario() == sc))
    throw ScenarioError("model branches and target have different scenarios");
  ModelReport rep;
  const T zero = Numeric<T>::from_rational(0), one = Numeric<T>::from_rational(1);
  rep.weight_ok = !(model.mu < zero) && !(one < model.mu);
  rep.branches_valid = validate(model.branch1).ok() && validate(model.branch2).ok();

  const T rest = one - model.mu;
  for (std::size_t i = 0; i < sc.size(); ++i) {
    const T mix = model.mu * model.branch1[i] + rest * model.branch2[i];
    const double dev = std::abs(Numeric<T>::as_double(mix) - Numeric<T>::as_double(target[i]));
    if (dev > rep.mixture_deviation) rep.mixture_deviation = dev;
    if (rep.mixture_ok && !Numeric<T>::equal(mix, target[i], tolerance)) {
      rep.mixture_ok = false;
      rep.mixture_witness = "entry " + std::to_string(i);
    }
  }

  for (int branch = 1; branch <= 2; ++branch) {
    const Correlation<T>& p = branch == 1 ? model.branch1 : model.branch2;
    for (auto& rel : locality_relations(sc)) rep.locality.push_back(run_check(p, rel, branch, tolerance));
    rep.order.push_back(run_check(p,
                                  branch == 1 ? IndependenceRelation{{"a1", "b"}, {"x2"}}
                                              : IndependenceRelation{{"a2", "b"}, {"x1"}},
                                  branch, tolerance));
    if (mode == ModelCheckMode::Strict && has_z(sc))
      rep.order.push_back(run_check(p, IndependenceRelation{{"a1", "a2", "b"}, {"z"}}, branch, tolerance));
  }
  return rep;
}

template ModelReport verify_model(const ExactCorrelation&, const HiddenVariableModel&, ModelCheckMode, double);
template ModelReport verify_model(const FloatCorrelation&, const FloatModel&, ModelCheckMode, double);

// ---------------------------------------------------------------------------

namespace {

template <class T, class Decide>
MarginalCausalResult marginal_check(const Correlation<T>& corr, Decide decide) {
  require_four_party(corr.scenario());
  MarginalCausalResult out;
  const std::vector<std::size_t> alices{0, 1};
  std::optional<Correlation<T>> m;
  try {
    m = marginal(corr, alices);
  } catch (const PreconditionError& e) {
    out.issue = e.what();
    return out;
  }
  out.marginal_ok = true;
  out.decomposition = decide(*m);
  out.alice_marginal_causal = out.decomposition->member;
  if constexpr (Numeric<T>::exact) out.marginal = *m;
  else out.marginal = to_exact(*m, Integer("1000000000000"));
  return out;
}

}  // namespace

MarginalCausalResult marginal_causal_check(const ExactCorrelation& corr) {
  auto [c1, c2] = build_causal_pair();
  return marginal_check(corr, [&](const ExactCorrelation& m) { return union_membership(c1, c2, m); });
}

MarginalCausalResult marginal_causal_check(const FloatCorrelation& corr, const MembershipOptions& options) {
  auto [c1, c2] = build_causal_pair();
  return marginal_check(corr, [&](const FloatCorrelation& m) { return union_membership(c1, c2, m, options); });
}

std::pair<HPolytope, HPolytope> build_alice_bob_pair() {
  const Scenario sc = Scenario::alice_bob();
  std::vector<IndependenceRelation> common{{{"a1", "a2"}, {"y"}}, {{"b"}, {"x1", "x2"}}};
  auto first = common, second = common;
  first.push_back({{"a1", "b"}, {"x2"}});
  second.push_back({{"a2", "b"}, {"x1"}});
  return {polytope_from_relations("AB1", sc, std::move(first)), polytope_from_relations("AB2", sc, std::move(second))};
}

namespace {

template <class T>
MixtureModel<T> reattach(const Correlation<T>& corr, const Correlation<T>& ab, const HiddenVariableModel& model) {
  const Scenario& sc = corr.scenario();
  const Scenario& sab = ab.scenario();
  std::vector<T> e1(sc.size()), e2(sc.size());
  std::vector<int> assign(2 * sc.party_count());
  const std::size_t np = sc.party_count();
  std::array<int, 3> o{}, s{};
  for (std::size_t i = 0; i < sc.size(); ++i) {
    sc.decode(i, assign);
    o = {assign[0], assign[1], assign[2]};
    s = {assign[np], assign[np + 1], assign[np + 2]};
    const std::size_t j = sab.index(o, s);
    // p(c | x y z a b); uniform where the conditioning event is impossible.
    const T cond = ab[j] == Numeric<T>::from_rational(0)
                       ? Numeric<T>::from_rational(Rational(1, sc.parties()[3].outcomes))
                       : T(corr[i] / ab[j]);
    e1[i] = Numeric<T>::from_rational(model.branch1[j]) * cond;
    e2[i] = Numeric<T>::from_rational(model.branch2[j]) * cond;
  }
  return MixtureModel<T>{Numeric<T>::from_rational(model.mu), Correlation<T>(sc, std::move(e1)),
                         Correlation<T>(sc, std::move(e2))};
}

template <class T, class Decide>
MixtureModel<T> chain_rule_impl(const Correlation<T>& corr, Decide decide) {
  require_four_party(corr.scenario());
  const std::vector<std::size_t> kept{0, 1, 2};
  Correlation<T> ab = marginal(corr, kept);
  MembershipResult r = decide(ab);
  if (!r.member || !r.model) throw PreconditionError("the Alice-Bob marginal has no definite-order decomposition");
  return reattach(corr, ab, *r.model);
}

}  // namespace

FloatModel chain_rule_branches(const FloatCorrelation& corr, const MembershipOptions& options) {
  auto [p1, p2] = build_alice_bob_pair();
  return chain_rule_impl(corr, [&](const FloatCorrelation& ab) { return union_membership(p1, p2, ab, options); });
}

HiddenVariableModel chain_rule_branches(const ExactCorrelation& corr) {
  auto [p1, p2] = build_alice_bob_pair();
  return chain_rule_impl(corr, [&](const ExactCorrelation& ab) { return union_membership(p1, p2, ab); });
}

template <class T>
std::array<SignallingProfile, 2> branch_signalling_profile(const MixtureModel<T>& model, double tolerance) {
  const Scenario& sc = model.branch1.scenario();
  require_four_party(sc);
  std::vector<IndependenceRelation> rels{has_z(sc) ? IndependenceRelation{{"b"}, {"x1", "x2", "z"}}
                                                   : IndependenceRelation{{"b"}, {"x1", "x2"}},
                                         {{"c"}, {"y"}},
                                         {{"a1", "a2", "c"}, {"y"}},
                                         {{"a1", "b"}, {"x2"}},
                                         {{"a2", "b"}, {"x1"}}};
  std::array<SignallingProfile, 2> out;
  for (int branch = 1; branch <= 2; ++branch) {
    auto& prof = out[static_cast<std::size_t>(branch - 1)];
    const Correlation<T>& p = branch == 1 ? model.branch1 : model.branch2;
    for (const auto& rel : rels) prof.checks.push_back(run_check(p, rel, branch, tolerance));
    prof.bob_to_charlie = !prof.checks[2].holds;
  }
  return out;
}

template std::array<SignallingProfile, 2> branch_signalling_profile(const HiddenVariableModel&, double);
template std::array<SignallingProfile, 2> branch_signalling_profile(const FloatModel&, double);

}  // namespace lcs
