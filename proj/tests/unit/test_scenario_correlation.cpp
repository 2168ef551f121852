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

#include <array>
#include <vector>

#include "doctest.h"
#include "lcswitch/correlation.hpp"
#include "lcswitch/errors.hpp"
#include "lcswitch/scenario.hpp"
#include "support/oracles.hpp"

using namespace lcs;

TEST_CASE("flat index follows a1 + 2a2 + 4b + 8c + 16(x1 + 2x2 + 4y + 8z)") {
  for (Variant v : {Variant::WithZ, Variant::WithoutZ}) {
    const Scenario sc = Scenario::four_party(v);
    const bool z = v == Variant::WithZ;
    CHECK(sc.size() == (z ? 256u : 128u));
    for (std::size_t i = 0; i < sc.size(); ++i) {
      std::vector<int> a(sc.party_count() * 2);
      sc.decode(i, a);
      const std::size_t expected =
          a[0] + 2 * a[1] + 4 * a[2] + 8 * a[3] + 16 * (a[4] + 2 * a[5] + 4 * a[6] + 8 * (z ? a[7] : 0));
      CHECK(expected == i);
      const std::array<int, 4> out{a[0], a[1], a[2], a[3]};
      std::vector<int> set(a.begin() + 4, a.begin() + 4 + (z ? 4 : 3));
      CHECK(sc.index(out, set) == i);
    }
  }
}

TEST_CASE("scenario description round trip") {
  for (const Scenario& sc : {Scenario::four_party(Variant::WithZ), Scenario::four_party(Variant::WithoutZ),
                             Scenario::alice_pair(), Scenario::bob_charlie(), Scenario::alice_bob()}) {
    CHECK(Scenario::parse(sc.describe()) == sc);
  }
  CHECK(Scenario::four_party(Variant::WithoutZ).describe() == "A1(x1:2,a1:2) A2(x2:2,a2:2) B(y:2,b:2) C(c:2)");
  CHECK(Scenario::four_party(Variant::WithZ).variant() == Variant::WithZ);
  CHECK(Scenario::four_party(Variant::WithoutZ).variant() == Variant::WithoutZ);
  CHECK_FALSE(Scenario::alice_pair().variant().has_value());
  CHECK_THROWS_AS(Scenario::parse("A1(x1:2"), ParseError);
}

TEST_CASE("single-setting parties ignore the setting name") {
  Party a{"C", "z", "c", 1, 2};
  Party b{"C", "w", "c", 1, 2};
  CHECK(a == b);
  a.settings = b.settings = 2;
  CHECK_FALSE(a == b);
  CHECK_FALSE(Scenario::four_party(Variant::WithoutZ).find("z").has_value());
  CHECK(Scenario::four_party(Variant::WithZ).find("z").has_value());
}

TEST_CASE("rationals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("010") == 10);
  CHECK(parse_rational("08/016") == Rational(1, 2));
  CHECK(parse_rational("1.5e-2") == Rational(3, 200));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK(lcs::to_string(ratio(6, 4)) == "3/2");
  // ratio() canonicalizes, so equality with the reduced form is exact.
  CHECK(ratio(0, 7) == 0);
  CHECK(ratio(0, 7).get_den() == 1);
  CHECK(approximate(0.3333333333333333, Integer(1000)) == Rational(1, 3));
}

TEST_CASE("validation flags range and normalisation errors") {
  const Scenario sc = Scenario::bob_charlie();
  oracle::Gen gen(7);
  auto p = gen.random_table(sc);
  CHECK(validate(p).ok());
  std::vector<Rational> e(p.entries().begin(), p.entries().end());
  e[0] += 1;
  auto bad = validate(ExactCorrelation(sc, e));
  CHECK_FALSE(bad.ok());
  e[0] = -1;
  e[1] += 2;
  bad = validate(ExactCorrelation(sc, e));
  bool range = false;
  for (const auto& issue : bad.issues) range = range || issue.kind == ValidationIssue::Kind::Range;
  CHECK(range);
  CHECK_THROWS_AS(ExactCorrelation(sc, std::vector<Rational>(3)), ScenarioError);
}

TEST_CASE("uniform, deterministic and mixture tables") {
  const Scenario sc = Scenario::four_party(Variant::WithoutZ);
  auto u = ExactCorrelation::uniform(sc);
  for (const auto& x : u.entries()) CHECK(x == Rational(1, 16));
  auto d = ExactCorrelation::deterministic(sc, [](std::span<const int> s, std::span<int> o) {
    o[0] = s[1];
    o[1] = s[0];
    o[2] = 0;
    o[3] = s[2];
  });
  const auto as = oracle::assignments(sc);
  for (std::size_t i = 0; i < sc.size(); ++i) {
    const auto& a = as[i];
    const bool hit = a.a1 == a.x2 && a.a2 == a.x1 && a.b == 0 && a.c == a.y;
    CHECK(d[i] == (hit ? 1 : 0));
  }
  auto m = ExactCorrelation::mixture(Rational(1, 4), d, u);
  for (std::size_t i = 0; i < sc.size(); ++i) CHECK(m[i] == Rational(1, 4) * d[i] + Rational(3, 4) * u[i]);
}

TEST_CASE("independence checks agree with a hand oracle on random products") {
  // p(b c | y z) = q(b | y) r(c | z) is nonsignalling; a table where c copies
  // y signals from Bob to Charlie.
  const Scenario sc = Scenario::bob_charlie();
  oracle::Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto q = gen.simplex_point(4), r = gen.simplex_point(4);
    std::vector<Rational> e(sc.size());
    std::vector<int> a(4);
    // p(b=0 | y) and p(c=0 | z).
    const Rational pb[2] = {q[0], q[0] + q[1]};
    const Rational pc[2] = {r[0], r[0] + r[1]};
    for (std::size_t i = 0; i < sc.size(); ++i) {
      sc.decode(i, a);
      const Rational b0 = pb[a[2]], c0 = pc[a[3]];
      e[i] = (a[0] == 0 ? b0 : 1 - b0) * (a[1] == 0 ? c0 : 1 - c0);
    }
    ExactCorrelation p(sc, e);
    CHECK(validate(p).ok());
    CHECK(check_independence(p, {{"b"}, {"z"}}));
    CHECK(check_independence(p, {{"c"}, {"y"}}));
  }
  auto sig = ExactCorrelation::deterministic(
      sc, [](std::span<const int> s, std::span<int> o) { o[0] = 0, o[1] = s[0]; });
  auto detail = check_independence_detailed(sig, {{"c"}, {"y"}});
  CHECK_FALSE(detail.holds);
  CHECK(detail.max_deviation == doctest::Approx(1.0));
  CHECK_FALSE(detail.witness.empty());
  CHECK(check_independence(sig, {{"b"}, {"z"}}));
}

TEST_CASE("marginals sum out parties") {
  const Scenario sc = Scenario::four_party(Variant::WithZ);
  auto d = ExactCorrelation::deterministic(sc, [](std::span<const int> s, std::span<int> o) {
    o[0] = 1;
    o[1] = s[0];
    o[2] = s[2];
    o[3] = 0;
  });
  const std::array<std::size_t, 2> alices{0, 1};
  auto m = marginal(d, alices);
  CHECK(m.scenario() == Scenario::alice_pair());
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
          const std::array<int, 2> o{a1, a2}, s{x1, x2};
          CHECK(m.at(o, s) == ((a1 == 1 && a2 == x1) ? 1 : 0));
        }
  // Keeping B only while it still depends on y yields p(b|y); c depended on
  // nothing, so dropping C is always allowed.
  const std::array<std::size_t, 1> bob{2};
  auto mb = marginal(d, bob);
  CHECK(mb.size() == 4u);
}

TEST_CASE("shorthand probabilities average the free settings") {
  const Scenario sc = Scenario::four_party(Variant::WithoutZ);
  oracle::Gen gen(3);
  auto p = gen.random_table(sc);
  const std::vector<FixedSetting> fixed{{"y", 0}};
  const Rational got = shorthand_probability(p, Expr::parse("b=0, a2=x1"), fixed);
  Rational want;
  const auto as = oracle::assignments(sc);
  for (std::size_t i = 0; i < as.size(); ++i)
    if (as[i].y == 0 && as[i].b == 0 && as[i].a2 == as[i].x1) want += p[i] / 4;
  CHECK(got == want);
  CHECK(consistent_settings(sc, fixed).size() == 4u);
}

TEST_CASE("float to exact conversion bounds the denominators") {
  const Scenario sc = Scenario::alice_pair();
  oracle::Gen gen(5);
  auto p = to_float(gen.random_table(sc));
  auto q = to_exact(p, Integer(1000));
  for (std::size_t i = 0; i < q.size(); ++i) {
    CHECK(q[i].get_den() <= 1000);
    CHECK(std::abs(q[i].get_d() - p[i]) < 1e-3);
  }
}
