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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lcswitch/correlation.hpp"
#include "lcswitch/polytope.hpp"

namespace lcs {

struct RelationCheck {
  IndependenceRelation relation;
  /// 1 or 2.
  int branch = 0;
  bool holds = true;
  double deviation = 0.0;
  std::string witness;
};

enum class ModelCheckMode {
  /// Also require a1 a2 b independent of z in both branches.
  Strict,
  Lenient,
};

/// Outcome of verify_model. Locality (parameter independence in each
/// branch) and definite order are reported separately.
struct ModelReport {
  bool weight_ok = true;
  bool branches_valid = true;
  bool mixture_ok = true;
  double mixture_deviation = 0.0;
  std::string mixture_witness;
  std::vector<RelationCheck> locality;
  std::vector<RelationCheck> order;

  bool locality_ok() const;
  bool order_ok() const;
  bool ok() const;
  /// One line per failed check.
  std::vector<std::string> violations() const;
};

/// Checks that mu lies in [0,1], the branches are normalized tables, the
/// mixture reproduces the target, and each branch satisfies the locality
/// relations (a1 a2 c of y, b of x1 x2 [z]) and its order relation
/// (a1 b of x2 for branch 1, a2 b of x1 for branch 2). Strict mode adds
/// a1 a2 b of z when the scenario has z. Floating tables compare within
/// `tolerance`.
template <class T>
ModelReport verify_model(const Correlation<T>& target, const MixtureModel<T>& model,
                         ModelCheckMode mode = ModelCheckMode::Strict, double tolerance = kIndependenceTolerance);

struct MarginalCausalResult {
  /// False when the Alice marginal depends on y or z; nothing else is
  /// computed then.
  bool marginal_ok = false;
  std::string issue;
  std::optional<ExactCorrelation> marginal;
  bool alice_marginal_causal = false;
  std::optional<MembershipResult> decomposition;
};

/// p(a1 a2 | x1 x2) and its membership in conv(C1 u C2).
MarginalCausalResult marginal_causal_check(const ExactCorrelation& corr);
MarginalCausalResult marginal_causal_check(const FloatCorrelation& corr, const MembershipOptions& options);

/// The pair of polytopes over p(a1 a2 b | x1 x2 y) with a definite Alice
/// order and Bob spacelike: a1 a2 of y, b of x1 x2, and a1 b of x2 (first)
/// or a2 b of x1 (second).
std::pair<HPolytope, HPolytope> build_alice_bob_pair();

/// Decomposes the Alice-Bob marginal over build_alice_bob_pair() and
/// reattaches Charlie through p(c | x y z a b) in each branch. Throws
/// PreconditionError when the marginal is not in the pair's hull or depends
/// on z.
FloatModel chain_rule_branches(const FloatCorrelation& corr, const MembershipOptions& options);
HiddenVariableModel chain_rule_branches(const ExactCorrelation& corr);

struct SignallingProfile {
  std::vector<RelationCheck> checks;
  /// a1 a2 c depends on y in this branch.
  bool bob_to_charlie = false;
};

/// Per branch: b of x1 x2 [z], c of y, a1 a2 c of y, a1 b of x2, a2 b of x1.
template <class T>
std::array<SignallingProfile, 2> branch_signalling_profile(const MixtureModel<T>& model,
                                                           double tolerance = kIndependenceTolerance);

}  // namespace lcs
