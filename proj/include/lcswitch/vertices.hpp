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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcswitch/inequality.hpp"
#include "lcswitch/polytope.hpp"
#include "lcswitch/symmetry.hpp"

namespace lcs {

/// Vertices of a polytope, or orbit representatives with their orbit sizes
/// when enumerated under a group.
struct VertexSet {
  Scenario scenario;
  std::vector<RationalVector> vertices;
  std::vector<RationalVector> class_representatives;
  std::vector<std::uint64_t> class_sizes;
  /// False when a budget stopped the enumeration; `note` says where.
  bool exhaustive = true;
  std::string note;

  /// Number of vertices, counting whole orbits for representative sets.
  std::uint64_t total() const;
};

struct EnumerationOptions {
  /// Cap on processed orbit classes in adjacency decomposition; 0 means no cap.
  std::size_t budget = 0;
  /// Cap on intermediate rays in any single double-description run; 0 means
  /// no cap.
  std::size_t ray_budget = 0;
  /// Orbit frontier checkpoint file for adjacency decomposition; resumed
  /// when it exists.
  std::string checkpoint;
  /// Worker threads for neighbour computations.
  unsigned threads = 1;
};

/// Exact extremality check: v lies in the polytope and its active
/// nonnegativity constraints together with the equalities have full rank.
bool is_vertex(const HPolytope& poly, std::span<const Rational> v);

/// Double description over the affine hull of the polytope. Throws
/// BudgetExceeded past options.ray_budget intermediate rays.
VertexSet double_description(const HPolytope& poly, const EnumerationOptions& options = {});

/// Without a group this is double_description. With a group, adjacency
/// decomposition over orbit classes; every generator must map the polytope
/// onto itself. A budget stop returns a set flagged non-exhaustive.
VertexSet enumerate_vertices(const HPolytope& poly, const SymmetryGroup* group, const EnumerationOptions& options = {});

/// All deterministic (0/1) points of the polytope.
std::vector<RationalVector> deterministic_vertices(const HPolytope& poly);

/// Affine rank of the saturating vertices, minus one. Needs an exhaustive
/// vertex list (orbit representatives are expanded with `group`).
long face_dimension(const VertexSet& vertices, const InequalityRecord& rec, const SymmetryGroup* group = nullptr);

/// Dimension of a face of conv(P1 u P2) from LP queries alone: affinely
/// independent points of the face found by optimization, and functionals
/// proved constant on the face by exact LP optima. Without a functional it
/// is the dimension of the hull itself.
struct HullDimension {
  long dimension = -1;
  std::vector<RationalVector> points;       // dimension + 1 affinely independent points
  std::vector<RationalVector> constant;     // n - dimension independent functionals constant on the face
  std::size_t lp_solves = 0;
};
HullDimension hull_dimension(const std::vector<const HPolytope*>& pieces, const LinearFunctional* face = nullptr,
                             const Rational& level = 0);
/// The face of LC cut out by an inequality at its bound.
HullDimension face_dimension_lp(const InequalityRecord& rec);

/// Summary of the LC (without-z) vertex statistics. The full run enumerates
/// LC1 by adjacency decomposition under the part of the group fixing LC1.
/// The sampled run skips enumeration: it classifies every deterministic
/// vertex and certifies the dimension from those plus LP-optimal vertices of
/// LC1 and LC2 for seeded random objectives.
struct LCVertexReport {
  bool exhaustive = false;
  std::uint64_t lc1_vertices = 0;
  std::uint64_t lc_vertices = 0;
  std::size_t lc1_classes = 0;
  /// In a sampled run, the number of classes met (a lower bound).
  std::size_t lc_classes = 0;
  std::size_t deterministic_vertices = 0;
  std::size_t deterministic_classes = 0;
  bool half_integral = true;
  long sample_dimension = -1;
  long ns_dimension = -1;
  std::size_t sampled_vertices = 0;
  std::vector<RationalVector> lc_representatives;
  std::string note;
};

struct LCReportOptions {
  bool full = false;
  EnumerationOptions enumeration;
  std::size_t samples = 32;
  std::uint64_t seed = 0;
};
LCVertexReport lc_vertex_report(const LCReportOptions& options);

/// Line-oriented vertex file: comment header with scenario and flattening,
/// then a double-description style "V-representation" block.
void write_vertex_file(std::ostream& out, const VertexSet& vertices);
VertexSet read_vertex_file(std::istream& in);

}  // namespace lcs
