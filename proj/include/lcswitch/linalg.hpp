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
#include <vector>

#include "lcswitch/rational.hpp"
#include "lcswitch/simplex.hpp"

namespace lcs {

/// Incrementally maintained reduced row echelon basis of a subspace of Q^n.
class RowBasis {
 public:
  explicit RowBasis(std::size_t dim) : dim_(dim) {}

  /// Adds the vector if it is independent of the current rows.
  bool add(std::span<const Rational> v);
  bool add(const SparseRow& v);
  bool contains(std::span<const Rational> v) const;
  /// v minus its projection along pivot columns; zero iff v is in the span.
  RationalVector reduce(std::span<const Rational> v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<RationalVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// A basis of {x : r . x = 0 for every row r}.
  std::vector<RationalVector> nullspace() const;

 private:
  bool insert(RationalVector v);
  std::size_t dim_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Solves the square system rows x = rhs exactly by sparse elimination.
/// Row entries index columns 0..rows.size()-1. Returns nullopt when the
/// matrix is singular.
std::optional<RationalVector> solve_square(std::vector<SparseRow> rows, RationalVector rhs);

/// Dimension of the affine hull of the points (-1 for no points).
long affine_dimension(std::span<const RationalVector> points);

/// Tracks the affine hull of a growing point set through the linear span of
/// differences to the first point.
class AffineHull {
 public:
  explicit AffineHull(std::size_t dim) : directions_(dim) {}
  /// Returns true when the point increased the dimension.
  bool add(std::span<const Rational> point);
  long dimension() const { return origin_.empty() ? -1 : static_cast<long>(directions_.rank()); }
  const RationalVector& origin() const { return origin_; }
  const RowBasis& directions() const { return directions_; }
  std::size_t points() const { return count_; }

 private:
  RationalVector origin_;
  RowBasis directions_;
  std::size_t count_ = 0;
};

}  // namespace lcs
