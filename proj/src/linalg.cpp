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

#include "lcswitch/linalg.hpp"

#include <algorithm>

#include "lcswitch/errors.hpp"

namespace lcs {

RationalVector RowBasis::reduce(std::span<const Rational> v) const {
  if (v.size() != dim_) throw PreconditionError("vector length does not match the basis dimension");
  RationalVector out(v.begin(), v.end());
  Rational tmp;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t pc = pivots_[r];
    if (sgn(out[pc]) == 0) continue;
    Rational f = out[pc];
    const RationalVector& row = rows_[r];
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(row[j]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), row[j].get_mpq_t());
      mpq_sub(out[j].get_mpq_t(), out[j].get_mpq_t(), tmp.get_mpq_t());
    }
  }
  return out;
}

bool RowBasis::insert(RationalVector v) {
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
  if (it == v.end()) return false;
  const std::size_t pc = static_cast<std::size_t>(it - v.begin());
  Rational inv = 1 / v[pc];
  for (auto& x : v)
    if (sgn(x) != 0) x *= inv;
  // Keep the basis fully reduced: clear the new pivot column elsewhere.
  Rational tmp;
  for (auto& row : rows_) {
    if (sgn(row[pc]) == 0) continue;
    Rational f = row[pc];
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(v[j]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), v[j].get_mpq_t());
      mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(pc);
  return true;
}

bool RowBasis::add(std::span<const Rational> v) { return insert(reduce(v)); }

bool RowBasis::add(const SparseRow& v) {
  RationalVector dense(dim_);
  for (const auto& [j, x] : v) {
    if (j >= dim_) throw PreconditionError("sparse row index out of range");
    dense[j] += x;
  }
  return add(dense);
}

bool RowBasis::contains(std::span<const Rational> v) const {
  RationalVector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::vector<RationalVector> RowBasis::nullspace() const {
  std::vector<char> is_pivot(dim_, 0);
  for (std::size_t pc : pivots_) is_pivot[pc] = 1;
  std::vector<RationalVector> out;
  for (std::size_t f = 0; f < dim_; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(dim_);
    v[f] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (sgn(rows_[r][f]) != 0) v[pivots_[r]] = -rows_[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

bool AffineHull::add(std::span<const Rational> point) {
  ++count_;
  if (origin_.empty()) {
    origin_.assign(point.begin(), point.end());
    return true;
  }
  RationalVector d(point.begin(), point.end());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] -= origin_[j];
  return directions_.add(d);
}

std::optional<RationalVector> solve_square(std::vector<SparseRow> rows, RationalVector rhs) {
  const std::size_t m = rows.size();
  if (rhs.size() != m) throw PreconditionError("solve_square: rhs length does not match the row count");
  std::vector<std::size_t> col_count(m, 0);
  std::vector<std::vector<std::size_t>> col_rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    SparseRow& row = rows[i];
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow merged;
    for (auto& [j, v] : row) {
      if (j >= m) throw PreconditionError("solve_square: column index out of range");
      if (!merged.empty() && merged.back().first == j)
        merged.back().second += v;
      else
        merged.emplace_back(j, std::move(v));
    }
    std::erase_if(merged, [](const auto& e) { return sgn(e.second) == 0; });
    row = std::move(merged);
    for (const auto& e : row) {
      ++col_count[e.first];
      col_rows[e.first].push_back(i);
    }
  }
  auto entry = [&](std::size_t i, std::size_t c) -> const Rational* {
    const SparseRow& row = rows[i];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
    return it != row.end() && it->first == c ? &it->second : nullptr;
  };

  std::vector<char> row_done(m, 0), col_done(m, 0);
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (row, column)
  order.reserve(m);
  SparseRow merged;
  Rational f, tmp;
  for (std::size_t step = 0; step < m; ++step) {
    // Markowitz-style choice: sparsest column, then sparsest row in it.
    std::size_t c = m;
    for (std::size_t j = 0; j < m; ++j)
      if (!col_done[j] && (c == m || col_count[j] < col_count[c])) c = j;
    if (col_count[c] == 0) return std::nullopt;
    std::vector<std::size_t> live;
    for (std::size_t i : col_rows[c])
      if (!row_done[i] && entry(i, c)) live.push_back(i);
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    col_rows[c].clear();
    std::size_t r = live.front();
    for (std::size_t i : live)
      if (rows[i].size() < rows[r].size()) r = i;
    row_done[r] = 1;
    col_done[c] = 1;
    order.emplace_back(r, c);
    const SparseRow& prow = rows[r];
    for (const auto& e : prow) --col_count[e.first];
    const Rational pivot = *entry(r, c);

    for (std::size_t i : live) {
      if (i == r) continue;
      f = *entry(i, c) / pivot;
      SparseRow& row = rows[i];
      merged.clear();
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < prow.size()) {
        if (b == prow.size() || (a < row.size() && row[a].first < prow[b].first)) {
          merged.push_back(std::move(row[a++]));
        } else if (a == row.size() || prow[b].first < row[a].first) {
          const std::size_t j = prow[b].first;
          mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), prow[b].second.get_mpq_t());
          merged.emplace_back(j, -tmp);
          ++col_count[j];
          col_rows[j].push_back(i);
          ++b;
        } else {
          const std::size_t j = row[a].first;
          mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), prow[b].second.get_mpq_t());
          mpq_sub(row[a].second.get_mpq_t(), row[a].second.get_mpq_t(), tmp.get_mpq_t());
          if (sgn(row[a].second) != 0)
            merged.push_back(std::move(row[a]));
          else
            --col_count[j];
          ++a;
          ++b;
        }
      }
      row.swap(merged);
      if (sgn(rhs[r]) != 0) rhs[i] -= f * rhs[r];
    }
  }

  RationalVector x(m);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto [r, c] = *it;
    Rational acc = rhs[r];
    const Rational* pivot = nullptr;
    for (const auto& [j, v] : rows[r]) {
      if (j == c) {
        pivot = &v;
        continue;
      }
      if (sgn(x[j]) != 0) acc -= v * x[j];
    }
    x[c] = acc / *pivot;
  }
  return x;
}

long affine_dimension(std::span<const RationalVector> points) {
  if (points.empty()) return -1;
  AffineHull hull(points.front().size());
  for (const auto& p : points) hull.add(p);
  return hull.dimension();
}

}  // namespace lcs
