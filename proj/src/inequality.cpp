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

#include "lcswitch/inequality.hpp"

#include <cctype>
#include <map>

#include "lcswitch/errors.hpp"

namespace lcs {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Offset of `part` within `whole`, both views of the same buffer.
int column_of(std::string_view whole, std::string_view part) {
  return static_cast<int>(part.data() - whole.data()) + 1;
}

std::vector<FixedSetting> parse_fixed(std::string_view text, std::string_view line, int line_no) {
  std::vector<FixedSetting> out;
  text = trim(text);
  if (text.empty()) return out;
  while (true) {
    auto comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'variable=value' in condition", line_no, column_of(line, item));
    std::string_view var = trim(item.substr(0, eq));
    std::string_view val = trim(item.substr(eq + 1));
    if (var.empty() || val.size() != 1 || !std::isdigit(static_cast<unsigned char>(val[0])))
      throw ParseError("malformed condition '" + std::string(item) + "'", line_no, column_of(line, item));
    out.push_back({std::string(var), val[0] - '0'});
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

Term parse_term(std::string_view line, int line_no) {
  std::string_view s = trim(line);
  auto p = s.find("P[");
  if (p == std::string_view::npos) throw ParseError("expected 'P[' in term", line_no, column_of(line, s));
  auto close = s.rfind(']');
  if (close == std::string_view::npos || close < p)
    throw ParseError("missing ']'", line_no, column_of(line, s) + static_cast<int>(s.size()));
  if (!trim(s.substr(close + 1)).empty())
    throw ParseError("trailing text after term", line_no, column_of(line, s.substr(close + 1)));

  std::string_view prefix = trim(s.substr(0, p));
  Rational weight = 1;
  bool negative = false;
  if (!prefix.empty() && (prefix.front() == '+' || prefix.front() == '-')) {
    negative = prefix.front() == '-';
    prefix = trim(prefix.substr(1));
  }
  if (!prefix.empty()) {
    if (prefix.back() != '*') throw ParseError("expected '*' after weight", line_no, column_of(line, prefix));
    prefix = trim(prefix.substr(0, prefix.size() - 1));
    try {
      weight = parse_rational(prefix);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, column_of(line, prefix));
    }
  }
  if (negative) weight = -weight;

  std::string_view inner = s.substr(p + 2, close - p - 2);
  auto bar = inner.find('|');
  std::string_view event_text = inner.substr(0, bar);
  Term term{weight, Expr::constant(1), {}};
  try {
    term.event = Expr::parse(event_text);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), line_no, column_of(line, event_text) + e.column() - 1);
  }
  if (bar != std::string_view::npos) term.fixed = parse_fixed(inner.substr(bar + 1), line, line_no);
  return term;
}

struct BuiltinText {
  const char* name;
  Variant variant;
  const char* text;
};

// Conditioning terms are written with explicit setting values; the remaining
// settings are averaged uniformly.
const BuiltinText kBuiltins[] = {
    {"main", Variant::WithZ,
     "P[b=0, a2=x1 | y=0]\n"
     "+ P[b=1, a1=x2 | y=0]\n"
     "+ P[b^c = y&z | x1=0, x2=0]\n"
     "<= 7/4\n"},
    {"i", Variant::WithoutZ,
     "P[b=0, a2=x1 | y=0]\n"
     "+ P[b=1, a1=x2 | y=0]\n"
     "+ P[b^c = x2&y | x1=0]\n"
     "<= 7/4\n"},
    {"ii", Variant::WithoutZ,
     "P[b=0, a2=x1 | x2=0, y=0]\n"
     "+ P[b=1, a1=x2 | x1=0, y=0]\n"
     "+ P[b^c = x2&y | x1=0]\n"
     "<= 7/4\n"},
    {"iii", Variant::WithoutZ,
     "P[b=0, a2=x1 | x2=0, y=0]\n"
     "+ P[b=1, a1=x2 | x1=1, y=0]\n"
     "+ P[b^c = x2&y | x1=0]\n"
     "+ P[a2=1, c^1=b=y | x1=0, x2=0]\n"
     "<= 7/4\n"},
    {"iv", Variant::WithoutZ,
     "P[a1=x2, a2=x1]\n"
     "<= 1/2\n"},
    {"v", Variant::WithoutZ,
     "P[a1=x2, a2=x1, b=0 | y=0]\n"
     "+ 1/2 * P[b=1 | y=0]\n"
     "<= 1/2\n"},
    {"vi", Variant::WithoutZ,
     "P[x1&(a1^x2)=0, x2&(a2^x1)=0]\n"
     "<= 3/4\n"},
    {"vii", Variant::WithoutZ,
     "P[x1&(a1^x2)=0, x2&(a2^x1)=0, b=0 | y=0]\n"
     "+ 3/4 * P[b=1 | y=0]\n"
     "<= 3/4\n"},
    {"i-footnote", Variant::WithoutZ,
     "P[b=0, a2=x1 | y=0]\n"
     "+ P[b=1, a1=x2 | y=0]\n"
     "+ P[b ^ x2&a1 ^ (1-x2)&c = x2&y | x1=0]\n"
     "<= 7/4\n"},
    {"chsh", Variant::WithZ,
     "P[b^c = y&z | x1=0, x2=0]\n"
     "<= 3/4\n"},
    {"gyni", Variant::WithoutZ,
     "P[a1=x2, a2=x1]\n"
     "<= 1/2\n"},
};

// Without z, Charlie's role in the parity game passes to x2.
const char* kChshWithoutZ =
    "P[b^c = x2&y | x1=0]\n"
    "<= 3/4\n";

}  // namespace

std::string Term::to_string() const {
  std::string out;
  if (weight != 1) out += lcs::to_string(weight) + " * ";
  out += "P[" + event.to_string();
  if (!fixed.empty()) {
    out += " |";
    for (std::size_t i = 0; i < fixed.size(); ++i)
      out += (i ? ", " : " ") + fixed[i].variable + "=" + std::to_string(fixed[i].value);
  }
  return out + "]";
}

LinearFunctional::LinearFunctional(Scenario sc, RationalVector coeffs, Rational off)
    : scenario(std::move(sc)), coefficients(std::move(coeffs)), offset(std::move(off)) {
  if (coefficients.size() != scenario.size())
    throw ScenarioError("functional has " + std::to_string(coefficients.size()) + " coefficients, scenario needs " +
                        std::to_string(scenario.size()));
}

Rational LinearFunctional::dot(std::span<const Rational> point) const {
  if (point.size() != coefficients.size()) throw ScenarioError("functional applied to a point of wrong length");
  Rational total = offset;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (sgn(coefficients[i]) != 0 && sgn(point[i]) != 0) total += coefficients[i] * point[i];
  return total;
}

Rational LinearFunctional::operator()(const ExactCorrelation& corr) const {
  if (!(corr.scenario() == scenario)) throw ScenarioError("functional and correlation scenarios differ");
  return dot(corr.entries());
}

double LinearFunctional::operator()(const FloatCorrelation& corr) const {
  if (!(corr.scenario() == scenario)) throw ScenarioError("functional and correlation scenarios differ");
  double total = offset.get_d();
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (sgn(coefficients[i]) != 0) total += coefficients[i].get_d() * corr[i];
  return total;
}

LinearFunctional compile(const Scenario& sc, std::span<const Term> terms) {
  RationalVector coeffs(sc.size());
  const std::size_t n = sc.party_count();
  const std::size_t no = sc.outcome_tuples();
  std::vector<int> assignment(2 * n);
  for (const Term& t : terms) {
    BoundExpr event(t.event, sc);
    auto settings = consistent_settings(sc, t.fixed);
    Rational w = t.weight / Rational(static_cast<long>(settings.size()));
    for (std::size_t si : settings) {
      sc.decode_settings(si, std::span<int>(assignment).subspan(n, n));
      for (std::size_t oi = 0; oi < no; ++oi) {
        sc.decode_outcomes(oi, std::span<int>(assignment).subspan(0, n));
        if (event.holds(assignment)) coeffs[oi + no * si] += w;
      }
    }
  }
  return LinearFunctional(sc, std::move(coeffs));
}

InequalityRecord make_record(std::string name, std::vector<Term> terms, Rational bound, Variant variant) {
  Scenario sc = Scenario::four_party(variant);
  LinearFunctional lhs = compile(sc, terms);
  return InequalityRecord{std::move(name), std::move(terms), std::move(bound), variant, std::move(lhs)};
}

InequalityRecord InequalityRecord::on(const Scenario& scenario) const {
  if (scenario == lhs.scenario) return *this;
  if (terms.empty()) throw ScenarioError("inequality " + name + " has no terms to recompile");
  LinearFunctional f = compile(scenario, terms);
  return InequalityRecord{name, terms, bound, scenario.variant().value_or(variant), std::move(f)};
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& b : kBuiltins) v.emplace_back(b.name);
    return v;
  }();
  return names;
}

InequalityRecord builtin(std::string_view name, std::optional<Variant> variant) {
  for (const auto& b : kBuiltins) {
    if (name != b.name) continue;
    Variant v = variant.value_or(b.variant);
    const char* text = b.text;
    if (name == "chsh" && v == Variant::WithoutZ) text = kChshWithoutZ;
    return parse_inequality(text, b.name, v);
  }
  throw Error("unknown inequality '" + std::string(name) + "'");
}

InequalityRecord parse_inequality(std::string_view text, std::string name, Variant variant) {
  std::vector<Term> terms;
  std::optional<Rational> bound;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view body = line.substr(0, line.find('#'));
    std::string_view s = trim(body);
    if (s.empty()) continue;
    if (bound) throw ParseError("text after the bound line", line_no, column_of(line, s));
    if (s.starts_with("<=")) {
      std::string_view num = trim(s.substr(2));
      try {
        bound = parse_rational(num);
      } catch (const ParseError& e) {
        throw ParseError(e.message(), line_no, column_of(line, num));
      }
      continue;
    }
    terms.push_back(parse_term(body, line_no));
  }
  if (!bound) throw ParseError("missing '<= bound' line", line_no, 1);
  if (terms.empty()) throw ParseError("inequality has no terms", line_no, 1);
  try {
    return make_record(std::move(name), std::move(terms), std::move(*bound), variant);
  } catch (const ScenarioError& e) {
    throw ScenarioError(std::string(e.what()) + " (" + std::string(to_string(variant)) + ")");
  }
}

std::string to_dsl(const InequalityRecord& rec) {
  std::string out = "# " + rec.name + " (" + std::string(to_string(rec.variant)) + ")\n";
  for (std::size_t i = 0; i < rec.terms.size(); ++i) {
    const Term& t = rec.terms[i];
    if (i > 0) out += sgn(t.weight) < 0 ? "- " : "+ ";
    Term shown = t;
    if (i > 0 && sgn(t.weight) < 0) shown.weight = -t.weight;
    out += shown.to_string() + "\n";
  }
  return out + "<= " + to_string(rec.bound) + "\n";
}

Evaluation<Rational> evaluate(const InequalityRecord& rec, const ExactCorrelation& corr) {
  if (!(corr.scenario() == rec.lhs.scenario)) return evaluate(rec.on(corr.scenario()), corr);
  Rational value = rec.lhs(corr);
  return {value, value > rec.bound, value - rec.bound};
}

Evaluation<double> evaluate(const InequalityRecord& rec, const FloatCorrelation& corr) {
  if (corr.scenario() == rec.lhs.scenario) {
    double value = rec.lhs(corr);
    double b = rec.bound.get_d();
    return {value, value > b + kViolationTolerance, value - b};
  }
  return evaluate(rec.on(corr.scenario()), corr);
}

}  // namespace lcs
