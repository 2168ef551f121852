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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lcs {

/// Whether Charlie has a binary setting z (the four-party scenario of the main
/// inequality) or no setting at all (the reduced scenario of the polytope
/// analysis).
enum class Variant { WithZ, WithoutZ };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

struct Party {
  std::string name;
  std::string setting_var;
  std::string outcome_var;
  int settings = 2;
  int outcomes = 2;

  /// The setting variable name only matters when there is a choice.
  friend bool operator==(const Party& a, const Party& b) {
    return a.name == b.name && a.outcome_var == b.outcome_var && a.settings == b.settings &&
           a.outcomes == b.outcomes && (a.settings == 1 || a.setting_var == b.setting_var);
  }
};

enum class VarKind { Outcome, Setting };

/// A resolved variable: which party, and whether it is the party's outcome or
/// setting. `slot()` is its position in an assignment vector, which holds all
/// outcomes first and then all settings, in party order.
struct VarRef {
  VarKind kind;
  std::size_t party;
  std::size_t party_count;

  std::size_t slot() const { return kind == VarKind::Outcome ? party : party_count + party; }
};

/// An ordered list of parties with their setting and outcome cardinalities.
///
/// Coordinates of a correlation table are flattened little-endian: the
/// outcome tuple index is sum(o_i * prod_{j<i} |O_j|), the setting tuple index
/// likewise, and the coordinate is outcome_index + |O| * setting_index. For the
/// four-party scenario this is a1 + 2a2 + 4b + 8c + 16(x1 + 2x2 + 4y + 8z).
/// A party with a single setting contributes no setting variable.
class Scenario {
 public:
  explicit Scenario(std::vector<Party> parties);

  /// Parties A1, A2, B, C with settings x1, x2, y, z and outcomes a1, a2, b, c.
  static Scenario four_party(Variant variant);
  /// p(a1 a2 | x1 x2), the bipartite causal scenario.
  static Scenario alice_pair();
  /// p(b c | y z), the bipartite Bell scenario between Bob and Charlie.
  static Scenario bob_charlie();
  /// p(a1 a2 b | x1 x2 y), the marginal with Charlie discarded.
  static Scenario alice_bob();

  const std::vector<Party>& parties() const { return parties_; }
  std::size_t party_count() const { return parties_.size(); }

  std::size_t outcome_tuples() const { return outcome_tuples_; }
  std::size_t setting_tuples() const { return setting_tuples_; }
  std::size_t size() const { return outcome_tuples_ * setting_tuples_; }

  std::size_t outcome_index(std::span<const int> outcomes) const;
  std::size_t setting_index(std::span<const int> settings) const;
  std::size_t index(std::span<const int> outcomes, std::span<const int> settings) const {
    return outcome_index(outcomes) + outcome_tuples_ * setting_index(settings);
  }
  void decode_outcomes(std::size_t outcome_index, std::span<int> outcomes) const;
  void decode_settings(std::size_t setting_index, std::span<int> settings) const;

  /// Fills an assignment vector (outcomes then settings) for coordinate `index`.
  void decode(std::size_t index, std::span<int> assignment) const;

  /// Resolves a variable name. Settings of single-setting parties are not
  /// variables of the scenario.
  std::optional<VarRef> find(std::string_view name) const;
  VarRef require(std::string_view name) const;
  int cardinality(const VarRef& ref) const;

  /// True for the four-party scenario with a binary z.
  bool charlie_has_setting() const;
  /// The four-party variant this scenario matches, if any.
  std::optional<Variant> variant() const;

  /// "A1(x1:2,a1:2) A2(x2:2,a2:2) B(y:2,b:2) C(c:2)"; parse() reads it back.
  std::string describe() const;
  static Scenario parse(std::string_view description);

  friend bool operator==(const Scenario& a, const Scenario& b) { return a.parties_ == b.parties_; }

 private:
  std::vector<Party> parties_;
  std::size_t outcome_tuples_ = 1;
  std::size_t setting_tuples_ = 1;
};

}  // namespace lcs
