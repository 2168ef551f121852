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

#include "lcswitch/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lcswitch/errors.hpp"
#include "lcswitch/linalg.hpp"

namespace lcs {

namespace {

// Starting basis: slack-like columns (a single nonzero in the whole matrix,
// sign-compatible with the right-hand side) stand in for the row's
// artificial. Rows are scaled so that the starting column is +1, or by -1
// when the right-hand side is negative. column[i] == num_vars means the
// artificial starts.
struct Crash {
  RationalVector scale;
  std::vector<std::size_t> column;
};

Crash crash_basis(const LinearProgram& lp) {
  const std::size_t m = lp.rows.size(), n = lp.num_vars;
  if (lp.rhs.size() != m) throw PreconditionError("linear program has mismatched row and rhs counts");
  std::vector<std::size_t> count(n, 0), where(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [j, v] : lp.rows[i]) {
      if (j >= n) throw PreconditionError("linear program row references an undeclared variable");
      if (sgn(v) == 0) continue;
      ++count[j];
      where[j] = i;
    }
  Crash out{RationalVector(m, Rational(1)), std::vector<std::size_t>(m, n)};
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [j, v] : lp.rows[i]) {
      if (count[j] != 1 || where[j] != i || sgn(v) == 0) continue;
      if (sgn(lp.rhs[i]) != 0 && sgn(lp.rhs[i]) != sgn(v)) continue;
      out.column[i] = j;
      out.scale[i] = 1 / v;
      break;
    }
    if (out.column[i] == n && sgn(lp.rhs[i]) < 0) out.scale[i] = -1;
  }
  return out;
}

}  // namespace

std::string to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "?";
}

SimplexSolver::SimplexSolver(const LinearProgram& lp, SimplexOptions options)
    : m_(lp.rows.size()), n_(lp.num_vars), options_(options) {
  const std::size_t width = n_ + m_;

  Crash crash = crash_basis(lp);
  const std::vector<std::size_t>& start = crash.column;

  scale_ = std::move(crash.scale);
  tableau_.assign(m_, RationalVector(width));
  rhs_.resize(m_);
  basis_.resize(m_);
  is_basic_.assign(width, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    for (const auto& [j, v] : lp.rows[i]) tableau_[i][j] += scale_[i] * v;
    tableau_[i][n_ + i] = 1;
    rhs_[i] = scale_[i] * lp.rhs[i];
    basis_[i] = start[i] != n_ ? start[i] : n_ + i;
    is_basic_[basis_[i]] = 1;
  }

  cost_.assign(width, Rational(0));
  for (std::size_t i = 0; i < m_; ++i) cost_[n_ + i] = -1;
  reprice(cost_);
  std::size_t pivots = 0, unbounded_col = 0;
  iterate(pivots, unbounded_col);
  phase_one_result_.pivots = pivots;
  if (sgn(objective_value_) < 0) {
    feasible_ = false;
    phase_one_result_.status = LPStatus::Infeasible;
    phase_one_result_.optimum = objective_value_;
    phase_one_result_.dual.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) phase_one_result_.dual[i] = scale_[i] * (cost_row_[n_ + i] - 1);
    return;
  }
  feasible_ = true;
  phase_one_result_.status = LPStatus::Optimal;
  drive_out_artificials();
}

void SimplexSolver::reprice(const RationalVector& cost) {
  const std::size_t width = n_ + m_;
  cost_row_.assign(width, Rational(0));
  for (std::size_t j = 0; j < width; ++j) cost_row_[j] = -cost[j];
  objective_value_ = 0;
  Rational tmp;
  for (std::size_t i = 0; i < m_; ++i) {
    const Rational& cb = cost[basis_[i]];
    if (sgn(cb) == 0) continue;
    const RationalVector& row = tableau_[i];
    for (std::size_t j = 0; j < width; ++j) {
      if (sgn(row[j]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), cb.get_mpq_t(), row[j].get_mpq_t());
      mpq_add(cost_row_[j].get_mpq_t(), cost_row_[j].get_mpq_t(), tmp.get_mpq_t());
    }
    objective_value_ += cb * rhs_[i];
  }
}

void SimplexSolver::pivot(std::size_t r, std::size_t c) {
  const std::size_t width = n_ + m_;
  RationalVector& prow = tableau_[r];
  Rational inv = 1 / prow[c];
  nz_.clear();
  for (std::size_t j = 0; j < width; ++j) {
    if (sgn(prow[j]) == 0) continue;
    mpq_mul(prow[j].get_mpq_t(), prow[j].get_mpq_t(), inv.get_mpq_t());
    nz_.push_back(j);
  }
  rhs_[r] *= inv;

  Rational f, tmp;
  auto eliminate = [&](RationalVector& row, Rational* value) {
    f = row[c];
    for (std::size_t j : nz_) {
      mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), prow[j].get_mpq_t());
      mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
    }
    if (sgn(rhs_[r]) != 0) {
      mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), rhs_[r].get_mpq_t());
      mpq_sub(value->get_mpq_t(), value->get_mpq_t(), tmp.get_mpq_t());
    }
  };
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r || sgn(tableau_[i][c]) == 0) continue;
    eliminate(tableau_[i], &rhs_[i]);
  }
  if (sgn(cost_row_[c]) != 0) eliminate(cost_row_, &objective_value_);

  is_basic_[basis_[r]] = 0;
  basis_[r] = c;
  is_basic_[c] = 1;
}

bool SimplexSolver::iterate(std::size_t& pivots, std::size_t& unbounded_col) {
  std::size_t degenerate_run = 0;
  bool bland = false;
  Rational lhs, rhs;
  while (true) {
    // Pricing over structural columns only; artificial columns never re-enter.
    std::size_t enter = n_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_basic_[j] || sgn(cost_row_[j]) >= 0) continue;
      if (enter == n_ || (!bland && cost_row_[j] < cost_row_[enter])) {
        enter = j;
        if (bland) break;
      }
    }
    if (enter == n_) return true;

    // Ratio test; ties go to the smallest basic variable index.
    std::size_t leave = m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& a = tableau_[i][enter];
      if (sgn(a) <= 0) continue;
      if (leave == m_) {
        leave = i;
        continue;
      }
      // rhs_i / a_i  vs  rhs_l / a_l
      lhs = rhs_[i] * tableau_[leave][enter];
      rhs = rhs_[leave] * a;
      int order = ::cmp(lhs, rhs);
      if (order < 0 || (order == 0 && basis_[i] < basis_[leave])) leave = i;
    }
    if (leave == m_) {
      unbounded_col = enter;
      return false;
    }

    bool degenerate = sgn(rhs_[leave]) == 0;
    pivot(leave, enter);
    ++pivots;
    if (options_.max_pivots && pivots > options_.max_pivots)
      throw BudgetExceeded("simplex pivot budget of " + std::to_string(options_.max_pivots) + " exceeded");
    if (degenerate) {
      if (++degenerate_run >= options_.degenerate_switch) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

void SimplexSolver::drive_out_artificials() {
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] < n_) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!is_basic_[j] && sgn(tableau_[i][j]) != 0) {
        pivot(i, j);
        break;
      }
    }
    // Otherwise the row is redundant and its artificial stays basic at zero.
  }
}

RationalVector SimplexSolver::primal_solution() const {
  RationalVector x(n_);
  for (std::size_t i = 0; i < m_; ++i)
    if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
  return x;
}

LPResult SimplexSolver::maximize(const RationalVector& objective) {
  if (!feasible_) return phase_one_result_;
  if (objective.size() != n_) throw PreconditionError("objective length does not match the program");
  std::fill(cost_.begin(), cost_.end(), Rational(0));
  for (std::size_t j = 0; j < n_; ++j) cost_[j] = objective[j];
  reprice(cost_);
  LPResult result;
  std::size_t unbounded_col = 0;
  bool bounded = iterate(result.pivots, unbounded_col);
  result.primal = primal_solution();
  if (!bounded) {
    result.status = LPStatus::Unbounded;
    result.ray.assign(n_, Rational(0));
    result.ray[unbounded_col] = 1;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) result.ray[basis_[i]] = -tableau_[i][unbounded_col];
    return result;
  }
  result.status = LPStatus::Optimal;
  result.optimum = objective_value_;
  result.dual.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) result.dual[i] = scale_[i] * cost_row_[n_ + i];
  return result;
}

LPResult SimplexSolver::minimize(const RationalVector& objective) {
  RationalVector neg(objective.size());
  for (std::size_t j = 0; j < objective.size(); ++j) neg[j] = -objective[j];
  LPResult r = maximize(neg);
  if (r.status == LPStatus::Optimal) {
    r.optimum = -r.optimum;
    for (auto& y : r.dual) y = -y;
  }
  return r;
}

namespace {

// Double-precision tableau simplex with the same starting basis and pivot
// rules as SimplexSolver. Only the final basis is used; the exact solution and
// certificate are recomputed from it.
struct FloatBasis {
  bool ok = false;
  LPStatus status = LPStatus::Infeasible;
  std::vector<std::size_t> basis;  // column per row; n + i is row i's artificial
};

class FloatTableau {
 public:
  FloatTableau(const LinearProgram& lp, const Crash& crash)
      : m_(lp.rows.size()), n_(lp.num_vars), w_(n_ + m_), t_(m_ * w_, 0.0), rhs_(m_), cost_row_(w_),
        basis_(m_), is_basic_(w_, 0) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double sc = to_double(crash.scale[i]);
      for (const auto& [j, v] : lp.rows[i]) at(i, j) += sc * to_double(v);
      at(i, n_ + i) = 1;
      rhs_[i] = to_double(crash.scale[i] * lp.rhs[i]);
      basis_[i] = crash.column[i] != n_ ? crash.column[i] : n_ + i;
      is_basic_[basis_[i]] = 1;
    }
  }

  FloatBasis run(const RationalVector& objective, std::size_t max_pivots) {
    FloatBasis out;
    std::vector<double> cost(w_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = -1;
    reprice(cost);
    std::size_t pivots = 0;
    if (iterate(pivots, max_pivots) != Step::Optimal) return out;
    if (value_ < -kFeasible) {
      out.ok = true;
      out.status = LPStatus::Infeasible;
      out.basis = basis_;
      return out;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t best = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (!is_basic_[j] && std::abs(at(i, j)) > kDriveOut && (best == n_ || std::abs(at(i, j)) > std::abs(at(i, best))))
          best = j;
      if (best != n_) pivot(i, best);
    }
    std::fill(cost.begin(), cost.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = to_double(objective[j]);
    reprice(cost);
    Step step = iterate(pivots, max_pivots);
    if (step == Step::Stalled) return out;
    out.ok = true;
    out.status = step == Step::Optimal ? LPStatus::Optimal : LPStatus::Unbounded;
    out.basis = basis_;
    return out;
  }

 private:
  enum class Step { Optimal, Unbounded, Stalled };
  static constexpr double kZero = 1e-11;
  static constexpr double kPrice = 1e-9;
  static constexpr double kFeasible = 1e-7;
  static constexpr double kDriveOut = 1e-7;
  static constexpr double kPivot = 1e-7;

  double& at(std::size_t i, std::size_t j) { return t_[i * w_ + j]; }

  void reprice(const std::vector<double>& cost) {
    for (std::size_t j = 0; j < w_; ++j) cost_row_[j] = -cost[j];
    value_ = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0) continue;
      const double* row = &t_[i * w_];
      for (std::size_t j = 0; j < w_; ++j) cost_row_[j] += cb * row[j];
      value_ += cb * rhs_[i];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    double* prow = &t_[r * w_];
    const double inv = 1 / prow[c];
    nz_.clear();
    for (std::size_t j = 0; j < w_; ++j) {
      if (std::abs(prow[j]) < kZero) {
        prow[j] = 0;
        continue;
      }
      prow[j] *= inv;
      nz_.push_back(j);
    }
    prow[c] = 1;
    rhs_[r] *= inv;
    auto eliminate = [&](double* row, double& value) {
      const double f = row[c];
      for (std::size_t j : nz_) row[j] -= f * prow[j];
      row[c] = 0;
      value -= f * rhs_[r];
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[i * w_];
      if (std::abs(row[c]) < kZero) {
        row[c] = 0;
        continue;
      }
      eliminate(row, rhs_[i]);
      if (std::abs(rhs_[i]) < kZero) rhs_[i] = 0;
    }
    if (cost_row_[c] != 0) eliminate(cost_row_.data(), value_);
    is_basic_[basis_[r]] = 0;
    basis_[r] = c;
    is_basic_[c] = 1;
  }

  Step iterate(std::size_t& pivots, std::size_t max_pivots) {
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j] || cost_row_[j] >= -kPrice) continue;
        if (enter == n_ || (!bland && cost_row_[j] < cost_row_[enter])) {
          enter = j;
          if (bland) break;
        }
      }
      if (enter == n_) return Step::Optimal;
      // Harris two-pass ratio test: bound the step with relaxed ratios,
      // then take the largest pivot among rows within the bound.
      double bound = INFINITY;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a > kPivot) bound = std::min(bound, (std::max(rhs_[i], 0.0) + kFeasible) / a);
      }
      std::size_t leave = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivot || std::max(rhs_[i], 0.0) / a > bound) continue;
        if (leave == m_ || a > at(leave, enter) || (bland && a == at(leave, enter) && basis_[i] < basis_[leave]))
          leave = i;
      }
      if (leave == m_) return Step::Unbounded;
      const bool degenerate = rhs_[leave] <= kZero;
      pivot(leave, enter);
      if (++pivots > max_pivots) return Step::Stalled;
      if (degenerate) {
        if (++degenerate_run >= 50) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  std::size_t m_, n_, w_;
  std::vector<double> t_, rhs_, cost_row_;
  double value_ = 0;
  std::vector<std::size_t> basis_;
  std::vector<char> is_basic_;
  std::vector<std::size_t> nz_;
};

// Exact revised simplex started from a basis of the scaled system (columns
// n + i are the row artificials). Each step refactors the basis from scratch
// with sparse exact solves, so it is meant for the few pivots that float
// tolerances leave undone. Phase one keeps artificials as ordinary columns
// with cost -1; phase two holds them at zero. Returns nullopt when the basis
// is singular, the step budget runs out or a case outside these two
// situations appears.
std::optional<LPResult> exact_cleanup(const LinearProgram& lp, const Crash& crash, const FloatBasis& fb,
                                      const RationalVector& objective, std::size_t max_steps = 200) {
  const std::size_t m = lp.rows.size(), n = lp.num_vars, w = n + m;
  const bool phase_one = fb.status == LPStatus::Infeasible;
  std::vector<SparseRow> column(w);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [j, v] : lp.rows[i])
      if (sgn(v) != 0) column[j].emplace_back(i, crash.scale[i] * v);
    column[n + i].emplace_back(i, Rational(1));
  }
  RationalVector b(m), cost(w);
  for (std::size_t i = 0; i < m; ++i) b[i] = crash.scale[i] * lp.rhs[i];
  for (std::size_t j = 0; j < w; ++j)
    cost[j] = j >= n ? Rational(phase_one ? -1 : 0) : (phase_one ? Rational(0) : objective[j]);
  auto usable = [&](std::size_t j) { return j < n || phase_one; };

  std::vector<std::size_t> basis = fb.basis;
  std::vector<char> is_basic(w, 0);
  for (std::size_t j : basis) is_basic[j] = 1;
  std::size_t degenerate_run = 0;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    std::vector<SparseRow> rows(m), cols(m);
    for (std::size_t k = 0; k < m; ++k)
      for (const auto& [i, v] : column[basis[k]]) {
        rows[i].emplace_back(k, v);
        cols[k].emplace_back(i, v);
      }
    RationalVector cb(m);
    for (std::size_t k = 0; k < m; ++k) cb[k] = cost[basis[k]];
    auto xb = solve_square(rows, b);
    if (!xb) return std::nullopt;
    auto y = solve_square(cols, cb);
    if (!y) return std::nullopt;
    auto reduced = [&](std::size_t j) {
      Rational d = cost[j];
      for (const auto& [i, v] : column[j]) d -= v * (*y)[i];
      return d;
    };
    // Primal infeasibility: a negative basic value, or a positive
    // artificial in phase two.
    std::size_t leave = m;
    for (std::size_t k = 0; k < m && leave == m; ++k)
      if (sgn((*xb)[k]) < 0) leave = k;
    if (!phase_one)
      for (std::size_t k = 0; k < m; ++k)
        if (basis[k] >= n && sgn((*xb)[k]) > 0) return std::nullopt;
    // Dual infeasibility: a usable nonbasic column with positive reduced cost.
    std::size_t enter = w;
    Rational enter_d;
    for (std::size_t j = 0; j < w; ++j) {
      if (is_basic[j] || !usable(j)) continue;
      Rational d = reduced(j);
      if (sgn(d) > 0 && (enter == w || (degenerate_run < 20 && d > enter_d))) {
        enter = j;
        enter_d = d;
        if (degenerate_run >= 20) break;  // Bland's rule against cycling
      }
    }
    if (leave == m && enter == w) {
      LPResult out;
      out.status = fb.status;
      out.dual.resize(m);
      for (std::size_t i = 0; i < m; ++i) out.dual[i] = crash.scale[i] * (*y)[i];
      if (phase_one) {
        for (std::size_t i = 0; i < m; ++i) out.optimum += out.dual[i] * lp.rhs[i];
        if (sgn(out.optimum) >= 0) return std::nullopt;  // feasible after all
        return out;
      }
      out.primal.assign(n, Rational(0));
      for (std::size_t k = 0; k < m; ++k)
        if (basis[k] < n) out.primal[basis[k]] = (*xb)[k];
      for (std::size_t j = 0; j < n; ++j) out.optimum += objective[j] * out.primal[j];
      return out;
    }
    if (step == max_steps) return std::nullopt;
    if (leave != m) {
      if (enter != w) return std::nullopt;  // neither primal nor dual feasible
      // Dual simplex step on row `leave`.
      RationalVector e(m);
      e[leave] = 1;
      auto rho = solve_square(cols, e);
      if (!rho) return std::nullopt;
      std::size_t best = w;
      Rational best_ratio;
      for (std::size_t j = 0; j < w; ++j) {
        if (is_basic[j] || !usable(j)) continue;
        Rational alpha;
        for (const auto& [i, v] : column[j]) alpha += v * (*rho)[i];
        if (sgn(alpha) >= 0) continue;
        Rational ratio = reduced(j) / alpha;
        if (best == w || ratio < best_ratio) {
          best = j;
          best_ratio = ratio;
        }
      }
      if (best == w) return std::nullopt;
      is_basic[basis[leave]] = 0;
      basis[leave] = best;
      is_basic[best] = 1;
      degenerate_run = 0;
      continue;
    }
    // Primal simplex step with column `enter`.
    RationalVector a(m);
    for (const auto& [i, v] : column[enter]) a[i] = v;
    auto u = solve_square(rows, a);
    if (!u) return std::nullopt;
    std::size_t out_row = m;
    Rational best_ratio;
    for (std::size_t k = 0; k < m; ++k) {
      const int sg = sgn((*u)[k]);
      if (sg == 0) continue;
      Rational ratio;
      if (!phase_one && basis[k] >= n) {
        ratio = 0;  // artificials stay at zero
      } else {
        if (sg < 0) continue;
        ratio = (*xb)[k] / (*u)[k];
      }
      if (out_row == m || ratio < best_ratio || (ratio == best_ratio && basis[k] < basis[out_row])) {
        out_row = k;
        best_ratio = ratio;
      }
    }
    if (out_row == m) return std::nullopt;  // unbounded: leave it to the exact solver
    degenerate_run = sgn(best_ratio) == 0 ? degenerate_run + 1 : 0;
    is_basic[basis[out_row]] = 0;
    basis[out_row] = enter;
    is_basic[enter] = 1;
  }
  return std::nullopt;
}

}  // namespace

LPResult solve_lp(const LinearProgram& lp, const RationalVector& objective, SimplexOptions options) {
  if (objective.size() != lp.num_vars) throw PreconditionError("objective length does not match the program");
  Crash crash = crash_basis(lp);
  const std::size_t budget = options.max_pivots ? options.max_pivots : 50 * (lp.rows.size() + lp.num_vars) + 1000;
  FloatBasis fb = FloatTableau(lp, crash).run(objective, budget);
  if (fb.ok && fb.status != LPStatus::Unbounded) {
    if (auto r = exact_cleanup(lp, crash, fb, objective); r && verify_certificate(lp, objective, *r).empty()) return *r;
  }
  SimplexSolver solver(lp, options);
  return solver.feasible() ? solver.maximize(objective) : solver.phase_one();
}

namespace {

RationalVector row_products(const LinearProgram& lp, const RationalVector& x) {
  RationalVector out(lp.rows.size());
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    for (const auto& [j, v] : lp.rows[i]) out[i] += v * x[j];
  return out;
}

RationalVector column_products(const LinearProgram& lp, const RationalVector& y) {
  RationalVector out(lp.num_vars);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (sgn(y[i]) == 0) continue;
    for (const auto& [j, v] : lp.rows[i]) out[j] += v * y[i];
  }
  return out;
}

std::string check_primal(const LinearProgram& lp, const RationalVector& x) {
  if (x.size() != lp.num_vars) return "primal vector has the wrong length";
  for (std::size_t j = 0; j < x.size(); ++j)
    if (sgn(x[j]) < 0) return "primal variable " + std::to_string(j) + " is negative";
  RationalVector ax = row_products(lp, x);
  for (std::size_t i = 0; i < ax.size(); ++i)
    if (ax[i] != lp.rhs[i]) return "primal violates row " + std::to_string(i);
  return {};
}

Rational inner(const RationalVector& a, const RationalVector& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::string verify_certificate(const LinearProgram& lp, const RationalVector& objective, const LPResult& result) {
  switch (result.status) {
    case LPStatus::Optimal: {
      if (auto e = check_primal(lp, result.primal); !e.empty()) return e;
      if (inner(objective, result.primal) != result.optimum) return "primal objective differs from optimum";
      if (result.dual.size() != lp.rows.size()) return "dual vector has the wrong length";
      RationalVector aty = column_products(lp, result.dual);
      for (std::size_t j = 0; j < aty.size(); ++j)
        if (aty[j] < objective[j]) return "dual infeasible at column " + std::to_string(j);
      if (inner(result.dual, lp.rhs) != result.optimum) return "dual objective differs from optimum";
      return {};
    }
    case LPStatus::Infeasible: {
      if (result.dual.size() != lp.rows.size()) return "Farkas vector has the wrong length";
      RationalVector aty = column_products(lp, result.dual);
      for (std::size_t j = 0; j < aty.size(); ++j)
        if (sgn(aty[j]) < 0) return "Farkas vector negative at column " + std::to_string(j);
      if (sgn(inner(result.dual, lp.rhs)) >= 0) return "Farkas vector does not separate the right-hand side";
      return {};
    }
    case LPStatus::Unbounded: {
      if (auto e = check_primal(lp, result.primal); !e.empty()) return e;
      if (result.ray.size() != lp.num_vars) return "ray has the wrong length";
      for (const auto& r : result.ray)
        if (sgn(r) < 0) return "ray has a negative entry";
      RationalVector ar = row_products(lp, result.ray);
      for (const auto& v : ar)
        if (sgn(v) != 0) return "ray leaves the feasible set";
      if (sgn(inner(objective, result.ray)) <= 0) return "ray does not improve the objective";
      return {};
    }
  }
  return "unknown status";
}

}  // namespace lcs
