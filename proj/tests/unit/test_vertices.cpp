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

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "lcswitch/errors.hpp"
#include "lcswitch/vertices.hpp"
#include "support/oracles.hpp"

using namespace lcs;

namespace {

std::set<RationalVector> as_set(const std::vector<RationalVector>& v) { return {v.begin(), v.end()}; }

// All deterministic LC1 points written out from their parametrisation:
// a1 = f(x1), a2 = h(x1, x2), b = g(y), c = k(x1, x2).
std::set<RationalVector> lc1_deterministic_oracle() {
  const Scenario sc = Scenario::four_party(Variant::WithoutZ);
  const auto as = oracle::assignments(sc);
  std::set<RationalVector> out;
  for (int f = 0; f < 4; ++f)
    for (int h = 0; h < 16; ++h)
      for (int g = 0; g < 4; ++g)
        for (int k = 0; k < 16; ++k) {
          RationalVector v(sc.size());
          for (std::size_t i = 0; i < as.size(); ++i) {
            const auto& a = as[i];
            const int s = a.x1 + 2 * a.x2;
            v[i] = a.a1 == ((f >> a.x1) & 1) && a.a2 == ((h >> s) & 1) && a.b == ((g >> a.y) & 1) &&
                   a.c == ((k >> s) & 1);
          }
          out.insert(v);
        }
  return out;
}

HPolytope bipartite_ns() {
  return polytope_from_relations("NS2", Scenario::bob_charlie(), {{{"b"}, {"z"}}, {{"c"}, {"y"}}});
}

InequalityRecord pair_gyni() {
  std::vector<Term> terms{{Rational(1), Expr::parse("a1=x2, a2=x1"), {}}};
  LinearFunctional f = compile(Scenario::alice_pair(), terms);
  return InequalityRecord{"pair-gyni", terms, Rational(1, 2), Variant::WithZ, f};
}

}  // namespace

TEST_CASE("double description of the causal polytopes") {
  const auto [c1, c2] = build_causal_pair();
  const VertexSet v1 = double_description(c1);
  const VertexSet v2 = double_description(c2);
  CHECK(v1.exhaustive);
  CHECK(v1.vertices.size() == 64u);
  CHECK(v2.vertices.size() == 64u);
  for (const auto& v : v1.vertices) {
    CHECK(std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0 || x == 1; }));
    CHECK(is_vertex(c1, v));
  }
  CHECK(as_set(v1.vertices) == as_set(deterministic_vertices(c1)));
  auto both = as_set(v1.vertices);
  both.insert(v2.vertices.begin(), v2.vertices.end());
  // a1 = f(x1), a2 = g(x2) are shared.
  CHECK(both.size() == 64u + 64u - 16u);
}

TEST_CASE("bipartite nonsignalling polytope has 24 vertices") {
  const VertexSet vs = double_description(bipartite_ns());
  CHECK(vs.vertices.size() == 24u);
  std::set<RationalVector> want;
  for (const auto& v : bipartite_ns_vertices()) want.insert(RationalVector(v.entries().begin(), v.entries().end()));
  CHECK(as_set(vs.vertices) == want);
}

TEST_CASE("is_vertex") {
  const auto ns = bipartite_ns();
  const auto& vs = bipartite_ns_vertices();
  for (const auto& v : vs) CHECK(is_vertex(ns, RationalVector(v.entries().begin(), v.entries().end())));
  const auto u = ExactCorrelation::uniform(ns.scenario);
  CHECK_FALSE(is_vertex(ns, RationalVector(u.entries().begin(), u.entries().end())));
  const auto mid = ExactCorrelation::mixture(Rational(1, 2), vs[0], vs[20]);
  CHECK_FALSE(is_vertex(ns, RationalVector(mid.entries().begin(), mid.entries().end())));
  RationalVector outside(ns.coordinates(), Rational(0));
  outside[0] = 2;
  CHECK_FALSE(is_vertex(ns, outside));
}

TEST_CASE("deterministic vertices of LC1 and LC2") {
  const auto [lc1, lc2] = build_lc_pair(Variant::WithoutZ);
  const auto d1 = deterministic_vertices(lc1);
  CHECK(d1.size() == 4096u);
  CHECK(as_set(d1) == lc1_deterministic_oracle());
  auto all = as_set(d1);
  const auto d2 = deterministic_vertices(lc2);
  CHECK(d2.size() == 4096u);
  all.insert(d2.begin(), d2.end());
  CHECK(all.size() == 7168u);
}

TEST_CASE("face dimension from vertices matches the LP route") {
  const auto [c1, c2] = build_causal_pair();
  VertexSet vs = double_description(c1);
  const VertexSet v2 = double_description(c2);
  vs.vertices.insert(vs.vertices.end(), v2.vertices.begin(), v2.vertices.end());
  const auto rec = pair_gyni();
  const long from_vertices = face_dimension(vs, rec);
  const HullDimension lp = hull_dimension({&c1, &c2}, &rec.lhs, rec.bound);
  CHECK(from_vertices == lp.dimension);
  CHECK(lp.points.size() == static_cast<std::size_t>(lp.dimension + 1));
  CHECK(oracle::affine_dimension(lp.points) == lp.dimension);
  // The whole hull: no functional.
  CHECK(oracle::affine_dimension(vs.vertices) == hull_dimension({&c1, &c2}).dimension);

  // A violated inequality cannot define a face.
  auto bad = rec;
  bad.bound = Rational(1, 4);
  CHECK_THROWS_AS(face_dimension(vs, bad), PreconditionError);
  vs.exhaustive = false;
  CHECK_THROWS_AS(face_dimension(vs, rec), PreconditionError);
}

TEST_CASE("orbit enumeration under a group") {
  const auto c1 = build("C1", Variant::WithZ);
  std::vector<Relabelling> gens;
  for (const char* t : {"x1 -> x1 ^ 1", "a1 -> a1 ^ x1", "x2 -> x2 ^ 1", "a2 -> a2 ^ x2"})
    gens.push_back(Relabelling::parse(t));
  const SymmetryGroup g(Scenario::alice_pair(), gens);
  const VertexSet vs = enumerate_vertices(c1, &g);
  CHECK(vs.exhaustive);
  CHECK(vs.total() == 64u);
  std::set<RationalVector> expanded;
  for (std::size_t k = 0; k < vs.class_representatives.size(); ++k) {
    const auto orbit = g.orbit(vs.class_representatives[k]);
    CHECK(orbit.size() == vs.class_sizes[k]);
    expanded.insert(orbit.begin(), orbit.end());
  }
  CHECK(expanded == as_set(double_description(c1).vertices));
}

TEST_CASE("budgets") {
  const auto lc1 = build("LC1", Variant::WithoutZ);
  auto gens = lc_generators();
  gens.pop_back();
  const SymmetryGroup g1(lc1.scenario, gens);
  // The ray cap keeps the single neighbour computation short; the run stops
  // there and reports it.
  EnumerationOptions opt;
  opt.budget = 1;
  opt.ray_budget = 1000;
  const VertexSet partial = enumerate_vertices(lc1, &g1, opt);
  CHECK_FALSE(partial.exhaustive);
  CHECK_FALSE(partial.note.empty());
  EnumerationOptions rays;
  rays.ray_budget = 10;
  CHECK_THROWS_AS(double_description(lc1, rays), BudgetExceeded);
}

TEST_CASE("vertex file round trip") {
  const VertexSet vs = double_description(bipartite_ns());
  std::stringstream out;
  write_vertex_file(out, vs);
  std::istringstream in(out.str());
  const VertexSet back = read_vertex_file(in);
  CHECK(back.scenario == vs.scenario);
  CHECK(back.vertices == vs.vertices);
  CHECK(back.exhaustive);

  std::string text = out.str();
  const auto at = text.find("1/2");
  REQUIRE(at != std::string::npos);
  text.replace(at, 3, "1/x");
  std::istringstream broken(text);
  try {
    read_vertex_file(broken);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() > 0);
  }
  std::istringstream empty("");
  CHECK_THROWS_AS(read_vertex_file(empty), ParseError);
}
