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

#include <cstdint>
#include <string>
#include <vector>

#include "lcswitch/vertices.hpp"

namespace lcs {

struct ReproduceOptions {
  std::uint64_t seed = 0;
  /// Run the full LC vertex enumeration (hours) instead of the sampled check.
  bool full_enumeration = false;
  EnumerationOptions enumeration;
  std::size_t ns_samples = 1000;
  std::size_t angle_samples = 50;
  /// Half members, half non-members.
  std::size_t membership_points = 200;
};

enum class RowStatus { Pass, Fail, Skipped };

struct ReproduceRow {
  int criterion = 0;
  std::string quantity;
  std::string reference;
  std::string computed;
  RowStatus status = RowStatus::Pass;
};

struct ReproduceReport {
  std::vector<ReproduceRow> rows;

  /// A criterion passes when none of its rows failed.
  bool criterion_passed(int criterion) const;
  bool passed() const;
  /// Fixed-width table, one row per quantity, then a summary line. Contains
  /// no timing, so equal inputs give equal bytes.
  std::string table() const;
};

/// Recomputes every reference quantity: LC bounds and witnesses, the switch
/// violation and its ceiling, the relabelled (i) optimum, saturating
/// examples, the bipartite parity bound, appendix checks on random angles,
/// polytope dimensions, vertex statistics and face dimensions, and seeded
/// membership certificates.
ReproduceReport reproduce(const ReproduceOptions& options);

}  // namespace lcs
