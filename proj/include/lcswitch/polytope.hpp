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
#include <utility>
#include <vector>

#include "lcswitch/correlation.hpp"
#include "lcswitch/inequality.hpp"
#include "lcswitch/simplex.hpp"

namespace lcs {

/// {x >= 0 : cone_rows x = 0, mass_row x = 1} over the table coordinates of
/// a scenario. `cone_rows` is a linearly independent subset of the defining
/// independence equalities together with "all setting columns carry equal
/// mass"; dropping the mass row gives the homogeneous cone used for
/// unnormalized branch tables.
struct HPolytope {
  std::string name;
  Scenario scenario;
  std::vector<IndependenceRelation> relations;
  std::vector<SparseRow> cone_rows;
  SparseRow mass_row;

  std::size_t coordinates() const { return scenario.size(); }
  /// Standard-form program over the table coordinates.
  LinearProgram program() const;
  /// Exact membership test (nonnegativity, normalization, relations).
  bool contains(const ExactCorrelation& corr) const;
  /// Number of independent equalities, including the mass row.
  std::size_t equality_rank() const { return cone_rows.size() + 1; }
};

HPolytope polytope_from_relations(std::string name, Scenario scenario,
                                  std::vector<IndependenceRelation> relations);

/// NS, LC1 or LC2 over the four-party scenario; C1 or C2 over the Alice pair
/// (variant ignored). Throws Error for other names.
HPolytope build(std::string_view name, Variant variant);

/// The independence relations defining `name`.
std::vector<IndependenceRelation> defining_relations(std::string_view name, Variant variant);

/// Pair (LC1, LC2) or (C1, C2).
std::pair<HPolytope, HPolytope> build_lc_pair(Variant variant);
std::pair<HPolytope, HPolytope> build_causal_pair();

/// Exact maximum of a functional with a verified dual certificate. Throws
/// Error if the polytope is empty or the certificate fails to verify.
LPResult lp_maximize(const HPolytope& poly, const LinearFunctional& f);

struct ValidTight {
  bool valid = false;
  bool tight = false;
  Rational max_branch1;
  Rational max_branch2;
  std::optional<ExactCorrelation> witness;
};

/// Validity and tightness over LC = conv(LC1 u LC2) of the record's variant.
ValidTight check_valid_tight(const InequalityRecord& rec);

/// A two-branch hidden-variable model: target = mu * branch1 + (1-mu) * branch2.
template <class T>
struct MixtureModel {
  T mu;
  Correlation<T> branch1;
  Correlation<T> branch2;
};
using HiddenVariableModel = MixtureModel<Rational>;
using FloatModel = MixtureModel<double>;

/// A functional with f <= 0 on the convex hull of the two polytopes and
/// f(p) = margin > 0 at the tested point. `farkas` is set when the point is
/// not even in the cone spanned with white noise (e.g. it signals).
struct Separation {
  LinearFunctional functional;
  Rational margin;
  bool farkas = false;
};

struct MembershipOptions {
  /// Floating mode: l1 radius around the rationalised point. Must be set for
  /// floating correlations.
  std::optional<double> tolerance;
  /// Denominator bound used to rationalise floating entries.
  Integer max_denominator = Integer("1000000000000");
};

struct MembershipResult {
  bool member = false;
  /// Smallest white-noise weight s with (p + s u)/(1 + s) in the hull; zero
  /// for members.
  Rational robustness;
  std::optional<HiddenVariableModel> model;
  std::optional<Separation> violation;
  /// True when the exact LP certificate was re-verified.
  bool certified = false;
  bool single_branch = false;
};

/// Decides p in conv(P1 u P2) by LP over unnormalized branch tables.
MembershipResult union_membership(const HPolytope& p1, const HPolytope& p2, const ExactCorrelation& corr);
MembershipResult union_membership(const HPolytope& p1, const HPolytope& p2, const FloatCorrelation& corr,
                                  const MembershipOptions& options);

/// Membership in LC for a four-party correlation of either variant.
MembershipResult membership(const ExactCorrelation& corr);
MembershipResult membership(const FloatCorrelation& corr, const MembershipOptions& options);

/// The 24 vertices of the bipartite no-signalling polytope over p(bc|yz):
/// 16 deterministic ones first, then the 8 PR boxes.
const std::vector<ExactCorrelation>& bipartite_ns_vertices();

struct NSDecomposition {
  RationalVector weights;  // over bipartite_ns_vertices()
  Rational local_weight;   // total weight on the deterministic vertices
};

/// Convex decomposition of a nonsignalling p(bc|yz) maximizing the local
/// weight. Throws PreconditionError for signalling input.
NSDecomposition ns_decompose(const ExactCorrelation& corr);

}  // namespace lcs
