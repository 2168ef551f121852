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

#include <string>

#include "doctest.h"
#include "lcswitch/errors.hpp"
#include "lcswitch/inequality.hpp"
#include "support/oracles.hpp"

using namespace lcs;

namespace {

// Direct sums for a few catalogue entries, without the compiler.
Rational gyni_value(const ExactCorrelation& p) {
  Rational v;
  const auto as = oracle::assignments(p.scenario());
  for (std::size_t i = 0; i < as.size(); ++i)
    if (as[i].a1 == as[i].x2 && as[i].a2 == as[i].x1) v += p[i] / 8;
  return v;
}

Rational i_value(const ExactCorrelation& p) {
  Rational v;
  const auto as = oracle::assignments(p.scenario());
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto& a = as[i];
    if (a.y == 0 && a.b == 0 && a.a2 == a.x1) v += p[i] / 4;
    if (a.y == 0 && a.b == 1 && a.a1 == a.x2) v += p[i] / 4;
    if (a.x1 == 0 && (a.b ^ a.c) == (a.x2 & a.y)) v += p[i] / 4;
  }
  return v;
}

Rational chsh_value(const ExactCorrelation& p) {
  Rational v;
  const auto as = oracle::assignments(p.scenario());
  for (std::size_t i = 0; i < as.size(); ++i)
    if (as[i].x1 == 0 && as[i].x2 == 0 && (as[i].b ^ as[i].c) == (as[i].y & as[i].z)) v += p[i] / 4;
  return v;
}

}  // namespace

TEST_CASE("compiled functionals match direct summation on random tables") {
  oracle::Gen gen(2024);
  const auto main = builtin("main");
  const auto gyni = builtin("iv");
  const auto i = builtin("i");
  const auto chsh = builtin("chsh");
  for (int trial = 0; trial < 25; ++trial) {
    auto pz = gen.random_table(Scenario::four_party(Variant::WithZ));
    auto pn = gen.random_table(Scenario::four_party(Variant::WithoutZ));
    CHECK(main.lhs(pz) == oracle::main_value(pz));
    CHECK(chsh.lhs(pz) == chsh_value(pz));
    CHECK(gyni.lhs(pn) == gyni_value(pn));
    CHECK(i.lhs(pn) == i_value(pn));
    const auto fz = to_float(pz);
    CHECK(main.lhs(fz) == doctest::Approx(oracle::main_value(pz).get_d()).epsilon(1e-12));
  }
}

TEST_CASE("catalogue metadata") {
  for (const std::string& name : builtin_names()) {
    const auto rec = builtin(name);
    CHECK(rec.name == name);
    CHECK(rec.lhs.scenario == Scenario::four_party(rec.variant));
  }
  CHECK(builtin("main").bound == Rational(7, 4));
  CHECK(builtin("main").variant == Variant::WithZ);
  CHECK(builtin("ii").variant == Variant::WithoutZ);
  CHECK(builtin("iv").bound == Rational(1, 2));
  CHECK(builtin("vi").bound == Rational(3, 4));
  CHECK(builtin("gyni").lhs.coefficients == builtin("iv").lhs.coefficients);
  CHECK_THROWS_AS(builtin("nope"), Error);
}

TEST_CASE("the uniform table sits strictly inside every bound") {
  for (const std::string& name : builtin_names()) {
    const auto rec = builtin(name);
    const auto u = ExactCorrelation::uniform(rec.lhs.scenario);
    const auto e = evaluate(rec, u);
    CAPTURE(name);
    CHECK_FALSE(e.violated);
    CHECK(e.margin == e.value - rec.bound);
  }
}

TEST_CASE("DSL round trip preserves the functional") {
  for (const std::string& name : builtin_names()) {
    const auto rec = builtin(name);
    const auto back = parse_inequality(to_dsl(rec), name, rec.variant);
    CAPTURE(name);
    CHECK(back.lhs.coefficients == rec.lhs.coefficients);
    CHECK(back.lhs.offset == rec.lhs.offset);
    CHECK(back.bound == rec.bound);
  }
}

TEST_CASE("DSL syntax") {
  const auto rec = parse_inequality("# chsh-like\n- 1/2 * P[b=1 | y=0]\n+ P[b=0|y=0]\n<= 1\n", "t",
                                    Variant::WithoutZ);
  CHECK(rec.terms.size() == 2u);
  CHECK(rec.terms[0].weight == Rational(-1, 2));
  CHECK(rec.bound == 1);
  const auto u = ExactCorrelation::uniform(rec.lhs.scenario);
  CHECK(evaluate(rec, u).value == Rational(1, 4));

  CHECK_THROWS_AS(parse_inequality("P[b=0 | y=0]\n", "t", Variant::WithoutZ), ParseError);
  CHECK_THROWS_AS(parse_inequality("P[b=0 | y=0\n<= 1\n", "t", Variant::WithoutZ), ParseError);
  CHECK_THROWS_AS(parse_inequality("P[q=0]\n<= 1\n", "t", Variant::WithoutZ), ScenarioError);
  CHECK_THROWS_AS(parse_inequality("P[b=0 | z=0]\n<= 1\n", "t", Variant::WithoutZ), ScenarioError);
  try {
    parse_inequality("P[b=0]\n+ P[b==]\n<= 1\n", "t", Variant::WithoutZ);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("recompiling over the other variant") {
  // z has no meaning without Charlie's setting.
  CHECK_THROWS_AS(builtin("main").on(Variant::WithoutZ), ScenarioError);
  const auto i = builtin("i");
  const auto moved = i.on(Variant::WithZ);
  CHECK(moved.lhs.scenario == Scenario::four_party(Variant::WithZ));
  // Over the with-z table the same terms are additionally averaged over z.
  oracle::Gen gen(9);
  auto p = gen.random_table(Scenario::four_party(Variant::WithZ));
  Rational want;
  const auto as = oracle::assignments(p.scenario());
  for (std::size_t k = 0; k < as.size(); ++k) {
    const auto& a = as[k];
    if (a.y == 0 && a.b == 0 && a.a2 == a.x1) want += p[k] / 8;
    if (a.y == 0 && a.b == 1 && a.a1 == a.x2) want += p[k] / 8;
    if (a.x1 == 0 && (a.b ^ a.c) == (a.x2 & a.y)) want += p[k] / 8;
  }
  CHECK(moved.lhs(p) == want);
  CHECK(evaluate(i, p).value == want);
}

TEST_CASE("expression evaluation") {
  const Scenario sc = Scenario::four_party(Variant::WithZ);
  const BoundExpr e(Expr::parse("b^c = y&z"), sc);
  const auto as = oracle::assignments(sc);
  std::vector<int> slots(8);
  for (std::size_t i = 0; i < sc.size(); ++i) {
    sc.decode(i, slots);
    CHECK(e.holds(slots) == ((as[i].b ^ as[i].c) == (as[i].y & as[i].z)));
  }
  const BoundExpr chain(Expr::parse("c^1=b=y"), sc);
  for (std::size_t i = 0; i < sc.size(); ++i) {
    sc.decode(i, slots);
    CHECK(chain.holds(slots) == ((as[i].c ^ 1) == as[i].b && as[i].b == as[i].y));
  }
  CHECK(Expr::parse("x1&(a1^x2)").variables() == std::set<std::string>{"a1", "x1", "x2"});
  CHECK(Expr::parse("a1").as_variable() == "a1");
  CHECK_THROWS_AS(Expr::parse("a1 +"), ParseError);
  CHECK(BoundExpr(Expr::parse("1-x2"), sc).eval(std::vector<int>{0, 0, 0, 0, 0, 1, 0, 0}) == 0);
}
