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

#include <functional>
#include <optional>
#include <vector>

#include "doctest.h"
#include "lcswitch/simplex.hpp"
#include "support/oracles.hpp"

using namespace lcs;

namespace {

struct Dense {
  std::vector<std::vector<Rational>> a;
  RationalVector b;
};

LinearProgram to_lp(const Dense& d) {
  LinearProgram lp;
  lp.num_vars = d.a[0].size();
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    SparseRow row;
    for (std::size_t j = 0; j < d.a[i].size(); ++j)
      if (d.a[i][j] != 0) row.emplace_back(j, d.a[i][j]);
    lp.add_row(row, d.b[i]);
  }
  return lp;
}

// Solves the square system on columns `cols` by Gauss-Jordan.
std::optional<RationalVector> basic_solution(const Dense& d, const std::vector<std::size_t>& cols) {
  const std::size_t m = d.a.size();
  std::vector<RationalVector> t(m, RationalVector(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) t[i][k] = d.a[i][cols[k]];
    t[i][m] = d.b[i];
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    while (p < m && t[p][c] == 0) ++p;
    if (p == m) return std::nullopt;
    std::swap(t[p], t[c]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == c || t[i][c] == 0) continue;
      const Rational f = t[i][c] / t[c][c];
      for (std::size_t k = c; k <= m; ++k) t[i][k] -= f * t[c][k];
    }
  }
  RationalVector x(d.a[0].size());
  for (std::size_t i = 0; i < m; ++i) x[cols[i]] = t[i][m] / t[i][i];
  return x;
}

// Best basic feasible solution by trying every basis.
std::optional<Rational> brute_force(const Dense& d, const RationalVector& c) {
  const std::size_t m = d.a.size(), n = d.a[0].size();
  std::optional<Rational> best;
  std::vector<std::size_t> cols;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cols.size() == m) {
      auto x = basic_solution(d, cols);
      if (!x) return;
      for (const auto& v : *x)
        if (v < 0) return;
      Rational val;
      for (std::size_t j = 0; j < n; ++j) val += c[j] * (*x)[j];
      if (!best || val > *best) best = val;
      return;
    }
    for (std::size_t j = start; j < n; ++j) {
      cols.push_back(j);
      rec(j + 1);
      cols.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("random bounded programs agree with basis enumeration") {
  oracle::Gen gen(31337);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = static_cast<std::size_t>(gen.uniform(2, 4)), n = static_cast<std::size_t>(gen.uniform(5, 8));
    Dense d;
    for (std::size_t i = 0; i < m; ++i) {
      RationalVector row(n + 1);
      for (std::size_t j = 0; j < n; ++j) row[j] = gen.uniform(-3, 3);
      d.a.push_back(row);
      d.b.push_back(gen.uniform(-2, 6));
    }
    // A bounding row with its own slack keeps every program bounded.
    RationalVector cap(n + 1, Rational(1));
    d.a.push_back(cap);
    d.b.push_back(10);
    if (oracle::rank(d.a) != d.a.size()) continue;
    RationalVector c(n + 1);
    for (std::size_t j = 0; j < n; ++j) c[j] = gen.uniform(-4, 4);

    const LinearProgram lp = to_lp(d);
    const auto want = brute_force(d, c);
    const LPResult fast = solve_lp(lp, c);
    SimplexSolver exact(lp);
    CHECK(verify_certificate(lp, c, fast) == "");
    if (want) {
      ++optimal;
      REQUIRE(fast.status == LPStatus::Optimal);
      CHECK(fast.optimum == *want);
      REQUIRE(exact.feasible());
      const LPResult slow = exact.maximize(c);
      CHECK(slow.optimum == *want);
      CHECK(verify_certificate(lp, c, slow) == "");
      RationalVector neg(c.size());
      for (std::size_t j = 0; j < c.size(); ++j) neg[j] = -c[j];
      const auto want_min = brute_force(d, neg);
      CHECK(exact.minimize(c).optimum == -*want_min);
    } else {
      ++infeasible;
      CHECK(fast.status == LPStatus::Infeasible);
      CHECK_FALSE(exact.feasible());
      CHECK(verify_certificate(lp, c, exact.phase_one()) == "");
    }
  }
  CHECK(optimal > 20);
  CHECK(infeasible > 5);
}

TEST_CASE("unbounded program carries a ray") {
  // max x0 s.t. x0 - x1 = 1.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.add_row({{0, Rational(1)}, {1, Rational(-1)}}, 1);
  const RationalVector c{1, 0};
  const LPResult r = solve_lp(lp, c);
  REQUIRE(r.status == LPStatus::Unbounded);
  CHECK(verify_certificate(lp, c, r) == "");
  CHECK(r.ray[0] > 0);
}

TEST_CASE("infeasible program yields a Farkas vector") {
  // x0 + x1 = -1 with x >= 0.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.add_row({{0, Rational(1)}, {1, Rational(1)}}, -1);
  const RationalVector c{0, 0};
  const LPResult r = solve_lp(lp, c);
  REQUIRE(r.status == LPStatus::Infeasible);
  CHECK(verify_certificate(lp, c, r) == "");
  CHECK(r.dual[0] * lp.rhs[0] < 0);
}

TEST_CASE("tampered certificates are rejected") {
  LinearProgram lp;
  lp.num_vars = 3;
  lp.add_row({{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}}, 1);
  const RationalVector c{1, 2, 3};
  LPResult r = solve_lp(lp, c);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.optimum == 3);
  CHECK(verify_certificate(lp, c, r) == "");
  LPResult wrong = r;
  wrong.optimum = 4;
  CHECK(verify_certificate(lp, c, wrong) != "");
  wrong = r;
  wrong.dual[0] = 2;
  CHECK(verify_certificate(lp, c, wrong) != "");
  wrong = r;
  wrong.primal = {Rational(1, 2), Rational(1, 2), 0};
  CHECK(verify_certificate(lp, c, wrong) != "");
  wrong = r;
  wrong.status = LPStatus::Infeasible;
  CHECK(verify_certificate(lp, c, wrong) != "");
}

TEST_CASE("degenerate program terminates") {
  // A classic cycling example for Dantzig's rule without anti-cycling.
  LinearProgram lp;
  lp.num_vars = 7;
  lp.add_row({{0, Rational(1, 4)}, {1, Rational(-8)}, {2, Rational(-1)}, {3, Rational(9)}, {4, Rational(1)}}, 0);
  lp.add_row({{0, Rational(1, 2)}, {1, Rational(-12)}, {2, Rational(-1, 2)}, {3, Rational(3)}, {5, Rational(1)}}, 0);
  lp.add_row({{2, Rational(1)}, {6, Rational(1)}}, 1);
  const RationalVector c{Rational(3, 4), -20, Rational(1, 2), -6, 0, 0, 0};
  SimplexSolver s(lp, SimplexOptions{1, 0});
  const LPResult r = s.maximize(c);
  CHECK(r.status == LPStatus::Optimal);
  CHECK(r.optimum == Rational(5, 4));
  CHECK(verify_certificate(lp, c, r) == "");
  CHECK(solve_lp(lp, c).optimum == Rational(5, 4));
}
