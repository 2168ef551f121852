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

#include <cmath>
#include <string>

#include "doctest.h"
#include "lcswitch/errors.hpp"
#include "lcswitch/io.hpp"
#include "support/oracles.hpp"

using namespace lcs;

namespace {

template <class F>
ParseError parse_error_of(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError("");
}

}  // namespace

TEST_CASE("exact correlation round trip") {
  oracle::Gen gen(1);
  for (const Scenario& sc : {Scenario::four_party(Variant::WithZ), Scenario::four_party(Variant::WithoutZ),
                             Scenario::alice_pair(), Scenario::bob_charlie()}) {
    const auto p = gen.random_table(sc);
    const auto back = read_correlation(write_correlation(p));
    REQUIRE(std::holds_alternative<ExactCorrelation>(back));
    CHECK(std::get<ExactCorrelation>(back) == p);
  }
}

TEST_CASE("floating correlation round trip keeps every bit") {
  const auto p = correlation(SwitchSetup::defaults());
  const auto back = read_correlation(write_correlation(p));
  REQUIRE(std::holds_alternative<FloatCorrelation>(back));
  CHECK(std::get<FloatCorrelation>(back) == p);
}

TEST_CASE("hand-written documents") {
  const std::string text = R"json({"scenario": "B(y:2,b:2) C(z:2,c:2)",
    "entries": [
      {"outcomes": [0, 0], "settings": [0, 0], "p": "1/2"},
      {"outcomes": [1, 1], "settings": [0, 0], "p": "0.5"},
      {"outcomes": [0, 1], "settings": [0, 0], "p": "0"},
      {"outcomes": [1, 0], "settings": [0, 0], "p": "0"},
      {"outcomes": [0, 0], "settings": [1, 0], "p": "1/4"},
      {"outcomes": [0, 1], "settings": [1, 0], "p": "1/4"},
      {"outcomes": [1, 0], "settings": [1, 0], "p": "1/4"},
      {"outcomes": [1, 1], "settings": [1, 0], "p": "1/4"},
      {"outcomes": [0, 0], "settings": [0, 1], "p": "1/4"},
      {"outcomes": [0, 1], "settings": [0, 1], "p": "1/4"},
      {"outcomes": [1, 0], "settings": [0, 1], "p": "1/4"},
      {"outcomes": [1, 1], "settings": [0, 1], "p": "1/4"},
      {"outcomes": [0, 0], "settings": [1, 1], "p": "1/4"},
      {"outcomes": [0, 1], "settings": [1, 1], "p": "1/4"},
      {"outcomes": [1, 0], "settings": [1, 1], "p": "1/4"},
      {"outcomes": [1, 1], "settings": [1, 1], "p": "1/4"}]})json";
  const auto any = read_correlation(text);
  REQUIRE(std::holds_alternative<ExactCorrelation>(any));
  const auto& p = std::get<ExactCorrelation>(any);
  CHECK(p.scenario() == Scenario::bob_charlie());
  const std::array<int, 2> o{1, 1}, s{0, 0};
  CHECK(p.at(o, s) == Rational(1, 2));

  // A single JSON number switches the whole table to floating point.
  std::string mixed = text;
  mixed.replace(mixed.find("\"0.5\""), 5, "0.5");
  CHECK(std::holds_alternative<FloatCorrelation>(read_correlation(mixed)));
}

TEST_CASE("errors carry line and column") {
  const std::string bad_count = "{\"scenario\": \"B(y:2,b:2)\",\n \"entries\": [{\"outcomes\": [0, 1], \"p\": \"1\"}]}";
  auto e = parse_error_of([&] { read_correlation(bad_count); });
  CHECK(e.line() == 2);
  CHECK(e.column() > 1);
  CHECK(e.message().find("expected 1 values") != std::string::npos);

  auto syntax = parse_error_of([] { read_correlation("{\n  \"scenario\": ,\n}"); });
  CHECK(syntax.line() == 2);

  const std::string bad_p = "{\"scenario\": \"B(y:2,b:2)\",\n \"entries\": [\n {\"outcomes\": [0], \"settings\": [0], \"p\": \"1/0\"}]}";
  CHECK(parse_error_of([&] { read_correlation(bad_p); }).line() == 3);

  // Missing records are reported against the entry list.
  const std::string missing = "{\"scenario\": \"B(y:2,b:2)\",\n \"entries\": [{\"outcomes\": [0], \"settings\": [0], \"p\": \"1\"}]}";
  CHECK(parse_error_of([&] { read_correlation(missing); }).line() == 2);
  CHECK(parse_error_of([] { read_correlation("[]"); }).line() == 1);
}

TEST_CASE("complex numbers") {
  CHECK(parse_complex("1") == std::complex<double>(1, 0));
  CHECK(parse_complex("-0.5i") == std::complex<double>(0, -0.5));
  CHECK(parse_complex("0.25+0.5i") == std::complex<double>(0.25, 0.5));
  CHECK(parse_complex("3e-1-2i") == std::complex<double>(0.3, -2));
  CHECK(parse_complex("i") == std::complex<double>(0, 1));
  CHECK_THROWS_AS(parse_complex(""), ParseError);
  CHECK_THROWS_AS(parse_complex("1+"), ParseError);
  CHECK_THROWS_AS(parse_complex("abc"), ParseError);
}

TEST_CASE("setup round trip") {
  SwitchSetup s;
  s.target = {std::complex<double>(0.6, 0), std::complex<double>(0, 0.8)};
  s.bob[1] = Direction{0.3, -1.25};
  s.postprocess = CharliePostprocess::Relabel;
  s.variant = Variant::WithoutZ;
  const SwitchSetup back = read_setup(write_setup(s));
  CHECK(back.target == s.target);
  CHECK(back.control_bob == s.control_bob);
  CHECK(back.bob[1].theta == s.bob[1].theta);
  CHECK(back.bob[1].phase == s.bob[1].phase);
  CHECK(back.charlie[0].theta == s.charlie[0].theta);
  CHECK(back.postprocess == s.postprocess);
  CHECK(back.variant == s.variant);

  const SwitchSetup d = read_setup("{}");
  CHECK(d.bob[1].theta == SwitchSetup::defaults().bob[1].theta);
  CHECK(parse_error_of([] { read_setup("{\"bob\": [0]}"); }).line() == 1);
  CHECK(parse_error_of([] { read_setup("{\n\"target\": [\"1\", \"x\"]}"); }).line() == 2);
  CHECK_THROWS_AS(read_setup("{\"postprocess\": \"later\"}"), ParseError);
}

TEST_CASE("model and functional round trips") {
  oracle::Gen gen(3);
  const Scenario sc = Scenario::four_party(Variant::WithoutZ);
  const HiddenVariableModel m{Rational(1, 3), gen.random_table(sc), gen.random_table(sc)};
  const HiddenVariableModel back = read_model(write_model(m));
  CHECK(back.mu == m.mu);
  CHECK(back.branch1 == m.branch1);
  CHECK(back.branch2 == m.branch2);

  const LinearFunctional f = builtin("iii").lhs;
  LinearFunctional g = f;
  g.offset = Rational(-7, 4);
  const LinearFunctional h = read_functional(write_functional(g));
  CHECK(h.scenario == g.scenario);
  CHECK(h.coefficients == g.coefficients);
  CHECK(h.offset == g.offset);
  CHECK_THROWS_AS(read_functional("{\"scenario\": \"B(y:2,b:2)\", \"coefficients\": [\"1\"], \"offset\": \"0\"}"),
                  ParseError);
}

TEST_CASE("files") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), Error);
}
