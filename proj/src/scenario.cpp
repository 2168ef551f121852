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

#include "lcswitch/scenario.hpp"

#include <cctype>
#include <set>

#include "lcswitch/errors.hpp"

namespace lcs {

std::string_view to_string(Variant v) { return v == Variant::WithZ ? "with-z" : "without-z"; }

Variant parse_variant(std::string_view text) {
  if (text == "with-z") return Variant::WithZ;
  if (text == "without-z") return Variant::WithoutZ;
  throw ParseError("unknown scenario variant '" + std::string(text) +
                   "' (expected with-z or without-z)");
}

Scenario::Scenario(std::vector<Party> parties) : parties_(std::move(parties)) {
  if (parties_.empty()) throw ScenarioError("a scenario needs at least one party");
  std::set<std::string> names;
  for (const auto& p : parties_) {
    if (p.settings < 1 || p.outcomes < 1)
      throw ScenarioError("party " + p.name + " has a cardinality below one");
    if (p.outcome_var.empty() || (p.settings > 1 && p.setting_var.empty()))
      throw ScenarioError("party " + p.name + " lacks variable names");
    if (!names.insert(p.outcome_var).second)
      throw ScenarioError("duplicate variable name " + p.outcome_var);
    if (p.settings > 1 && !names.insert(p.setting_var).second)
      throw ScenarioError("duplicate variable name " + p.setting_var);
    outcome_tuples_ *= static_cast<std::size_t>(p.outcomes);
    setting_tuples_ *= static_cast<std::size_t>(p.settings);
  }
}

Scenario Scenario::four_party(Variant variant) {
  return Scenario({{"A1", "x1", "a1", 2, 2},
                   {"A2", "x2", "a2", 2, 2},
                   {"B", "y", "b", 2, 2},
                   {"C", "z", "c", variant == Variant::WithZ ? 2 : 1, 2}});
}

Scenario Scenario::alice_pair() { return Scenario({{"A1", "x1", "a1", 2, 2}, {"A2", "x2", "a2", 2, 2}}); }

Scenario Scenario::bob_charlie() { return Scenario({{"B", "y", "b", 2, 2}, {"C", "z", "c", 2, 2}}); }

Scenario Scenario::alice_bob() {
  return Scenario({{"A1", "x1", "a1", 2, 2}, {"A2", "x2", "a2", 2, 2}, {"B", "y", "b", 2, 2}});
}

std::size_t Scenario::outcome_index(std::span<const int> outcomes) const {
  std::size_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    idx += static_cast<std::size_t>(outcomes[i]) * stride;
    stride *= static_cast<std::size_t>(parties_[i].outcomes);
  }
  return idx;
}

std::size_t Scenario::setting_index(std::span<const int> settings) const {
  std::size_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    idx += static_cast<std::size_t>(settings[i]) * stride;
    stride *= static_cast<std::size_t>(parties_[i].settings);
  }
  return idx;
}

void Scenario::decode_outcomes(std::size_t idx, std::span<int> outcomes) const {
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    auto card = static_cast<std::size_t>(parties_[i].outcomes);
    outcomes[i] = static_cast<int>(idx % card);
    idx /= card;
  }
}

void Scenario::decode_settings(std::size_t idx, std::span<int> settings) const {
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    auto card = static_cast<std::size_t>(parties_[i].settings);
    settings[i] = static_cast<int>(idx % card);
    idx /= card;
  }
}

void Scenario::decode(std::size_t index, std::span<int> assignment) const {
  const std::size_t n = parties_.size();
  decode_outcomes(index % outcome_tuples_, assignment.subspan(0, n));
  decode_settings(index / outcome_tuples_, assignment.subspan(n, n));
}

std::optional<VarRef> Scenario::find(std::string_view name) const {
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    if (parties_[i].outcome_var == name) return VarRef{VarKind::Outcome, i, parties_.size()};
    if (parties_[i].settings > 1 && parties_[i].setting_var == name)
      return VarRef{VarKind::Setting, i, parties_.size()};
  }
  return std::nullopt;
}

VarRef Scenario::require(std::string_view name) const {
  if (auto ref = find(name)) return *ref;
  throw ScenarioError("variable '" + std::string(name) + "' is not part of scenario " + describe());
}

int Scenario::cardinality(const VarRef& ref) const {
  const Party& p = parties_[ref.party];
  return ref.kind == VarKind::Outcome ? p.outcomes : p.settings;
}

bool Scenario::charlie_has_setting() const { return variant() == Variant::WithZ; }

std::optional<Variant> Scenario::variant() const {
  if (*this == four_party(Variant::WithZ)) return Variant::WithZ;
  if (*this == four_party(Variant::WithoutZ)) return Variant::WithoutZ;
  return std::nullopt;
}

std::string Scenario::describe() const {
  std::string out;
  for (const auto& p : parties_) {
    if (!out.empty()) out += ' ';
    out += p.name + "(";
    if (p.settings > 1) out += p.setting_var + ":" + std::to_string(p.settings) + ",";
    out += p.outcome_var + ":" + std::to_string(p.outcomes) + ")";
  }
  return out;
}

Scenario Scenario::parse(std::string_view text) {
  std::vector<Party> parties;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(what, 1, static_cast<int>(pos) + 1);
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto ident = [&] {
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (start == pos) throw fail("expected a name");
    return std::string(text.substr(start, pos - start));
  };
  auto number = [&] {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw fail("expected a cardinality");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  auto expect = [&](char ch) {
    if (pos >= text.size() || text[pos] != ch) throw fail(std::string("expected '") + ch + "'");
    ++pos;
  };
  skip();
  while (pos < text.size()) {
    Party party;
    party.name = ident();
    expect('(');
    std::vector<std::pair<std::string, int>> vars;
    while (true) {
      skip();
      std::string var = ident();
      expect(':');
      vars.emplace_back(std::move(var), number());
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      expect(')');
      break;
    }
    if (vars.size() == 1) {
      party.settings = 1;
      party.outcome_var = vars[0].first;
      party.outcomes = vars[0].second;
    } else if (vars.size() == 2) {
      party.setting_var = vars[0].first;
      party.settings = vars[0].second;
      party.outcome_var = vars[1].first;
      party.outcomes = vars[1].second;
    } else {
      throw fail("a party lists a setting and an outcome variable");
    }
    // Keep the conventional name of Charlie's absent setting.
    if (party.settings == 1 && party.name == "C") party.setting_var = "z";
    parties.push_back(std::move(party));
    skip();
  }
  try {
    return Scenario(std::move(parties));
  } catch (const ScenarioError& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

}  // namespace lcs
