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
#include <string>
#include <utility>
#include <vector>

#include "lcswitch/rational.hpp"

namespace lcs {

/// A sparse row: (column, coefficient) pairs with distinct columns.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Standard form: maximize objective . x subject to rows x = rhs, x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<SparseRow> rows;
  RationalVector rhs;

  std::size_t add_variable() { return num_vars++; }
  void add_row(SparseRow row, Rational value) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(value));
  }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LPStatus status);

/// Exact solution with proof object.
///
/// Optimal: `primal` is a feasible vertex, `dual` satisfies
/// dual . A_j >= c_j for every column and dual . rhs == optimum.
/// Infeasible: `dual` is a Farkas vector, dual . A_j >= 0 for every column
/// and dual . rhs < 0.
/// Unbounded: `primal` is feasible and `ray` is a nonnegative direction with
/// A ray = 0 and c . ray > 0.
struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational optimum;
  RationalVector primal;
  RationalVector dual;
  RationalVector ray;
  std::size_t pivots = 0;
};

/// Re-checks a result against the program in exact arithmetic. Returns an
/// empty string when every certificate condition holds, otherwise a
/// description of the first failure.
std::string verify_certificate(const LinearProgram& lp, const RationalVector& objective, const LPResult& result);

struct SimplexOptions {
  /// Consecutive degenerate pivots after which pricing switches from
  /// Dantzig's rule to Bland's rule, until the objective strictly improves.
  std::size_t degenerate_switch = 50;
  /// Abort after this many pivots (0 = unlimited).
  std::size_t max_pivots = 0;
};

/// Dense exact tableau simplex. Phase one runs once in the constructor, starting
/// from slack-like columns where the input has them and artificials elsewhere; each
/// maximize() call then starts from the current feasible basis, so repeated
/// objectives over one polytope are cheap.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp, SimplexOptions options = {});

  bool feasible() const { return feasible_; }
  /// Farkas certificate when infeasible.
  const LPResult& phase_one() const { return phase_one_result_; }

  LPResult maximize(const RationalVector& objective);
  LPResult minimize(const RationalVector& objective);

  std::size_t rows() const { return m_; }
  std::size_t columns() const { return n_; }

 private:
  void pivot(std::size_t row, std::size_t col);
  void reprice(const RationalVector& cost);
  bool iterate(std::size_t& pivots, std::size_t& unbounded_col);
  void drive_out_artificials();
  RationalVector primal_solution() const;

  std::size_t m_, n_;
  SimplexOptions options_;
  RationalVector scale_;                   // row i of the tableau is scale_[i] times input row i
  std::vector<RationalVector> tableau_;    // m rows of n + m entries
  RationalVector rhs_;
  RationalVector cost_row_;                // reduced costs, length n + m
  Rational objective_value_;
  std::vector<std::size_t> basis_;
  std::vector<char> is_basic_;
  RationalVector cost_;                    // full cost vector of the current phase, length n + m
  bool feasible_ = false;
  LPResult phase_one_result_;
  std::vector<std::size_t> nz_;            // scratch
};

/// One-shot solve. A double-precision simplex proposes the final basis; the
/// primal and dual are then recomputed exactly from that basis and checked
/// with verify_certificate. If the check fails the exact SimplexSolver runs
/// from scratch, so the result is always exact.
LPResult solve_lp(const LinearProgram& lp, const RationalVector& objective, SimplexOptions options = {});

}  // namespace lcs
