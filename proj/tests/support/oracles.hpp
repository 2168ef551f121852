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

// Seeded generators and brute-force reference computations shared by the
// tests. Nothing here calls the library's solvers: the point is to have a
// second, simpler route to the same numbers.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "lcswitch/correlation.hpp"
#include "lcswitch/quantum.hpp"
#include "lcswitch/rational.hpp"

namespace oracle {

using lcs::Rational;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  /// Positive integer weights normalised, as exact fractions.
  std::vector<Rational> simplex_point(std::size_t n, int max_weight = 9) {
    std::vector<int> w(n);
    int total = 0;
    for (auto& x : w) total += x = uniform(0, max_weight);
    if (total == 0) total = w[0] = 1;
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = lcs::ratio(w[i], total);
    return out;
  }

  /// A normalised table with independent random rows per setting tuple.
  lcs::ExactCorrelation random_table(const lcs::Scenario& sc) {
    std::vector<Rational> e(sc.size());
    for (std::size_t s = 0; s < sc.setting_tuples(); ++s) {
      auto row = simplex_point(sc.outcome_tuples());
      for (std::size_t o = 0; o < row.size(); ++o) e[o + sc.outcome_tuples() * s] = row[o];
    }
    return lcs::ExactCorrelation(sc, std::move(e));
  }

 private:
  std::mt19937_64 rng_;
};

/// Four-party assignment: a1 a2 b c x1 x2 y z. Variables the scenario lacks
/// read as zero.
struct Assignment {
  int a1, a2, b, c, x1, x2, y, z;
};

inline std::vector<Assignment> assignments(const lcs::Scenario& sc) {
  const char* names[8] = {"a1", "a2", "b", "c", "x1", "x2", "y", "z"};
  int slot[8];
  for (int k = 0; k < 8; ++k) {
    auto ref = sc.find(names[k]);
    slot[k] = ref ? static_cast<int>(ref->slot()) : -1;
  }
  std::vector<Assignment> out(sc.size());
  std::vector<int> v(2 * sc.party_count());
  for (std::size_t i = 0; i < sc.size(); ++i) {
    sc.decode(i, v);
    int a[8];
    for (int k = 0; k < 8; ++k) a[k] = slot[k] < 0 ? 0 : v[static_cast<std::size_t>(slot[k])];
    out[i] = {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]};
  }
  return out;
}

/// Builds a table from a probability rule over four-party assignments.
inline lcs::ExactCorrelation table(const lcs::Scenario& sc, const std::function<Rational(const Assignment&)>& p) {
  auto as = assignments(sc);
  std::vector<Rational> e(sc.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = p(as[i]);
  return lcs::ExactCorrelation(sc, std::move(e));
}

/// The three-term inequality, summed directly: settings not fixed by a term
/// are averaged uniformly.
template <class T>
T main_value(const lcs::Correlation<T>& p) {
  const auto as = assignments(p.scenario());
  const int nz = p.scenario().charlie_has_setting() ? 2 : 1;
  T first{}, second{}, game{};
  for (std::size_t i = 0; i < as.size(); ++i) {
    const Assignment& a = as[i];
    const T v = p[i];
    if (a.y == 0 && a.b == 0 && a.a2 == a.x1) first += v / T(4 * nz);
    if (a.y == 0 && a.b == 1 && a.a1 == a.x2) second += v / T(4 * nz);
    if (a.x1 == 0 && a.x2 == 0 && (a.b ^ a.c) == (a.y & a.z)) game += v / T(2 * nz);
  }
  return first + second + game;
}

/// p over the Bob-Charlie pair: value of the parity game and p(b = 0 | y = 0).
inline std::pair<Rational, Rational> parity_game(const lcs::ExactCorrelation& p) {
  Rational win, b0;
  for (int y = 0; y < 2; ++y)
    for (int z = 0; z < 2; ++z)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          const std::array<int, 2> o{b, c}, s{y, z};
          if ((b ^ c) == (y & z)) win += p.at(o, s) / 4;
          if (y == 0 && z == 0 && b == 0) b0 += p.at(o, s);
        }
  return {win, b0};
}

/// Born rule for the switch written from scratch: sum over the discarded
/// target of the squared amplitude of each outcome tuple. Alice k measures
/// in the computational basis and re-prepares |x_k>.
inline lcs::FloatCorrelation simulate(const lcs::SwitchSetup& s) {
  using C = std::complex<double>;
  const lcs::Scenario sc = lcs::Scenario::four_party(s.variant);
  const auto as = assignments(sc);
  std::vector<double> e(sc.size());
  auto basis = [](int k, int t) { return C(k == t ? 1.0 : 0.0); };
  for (std::size_t i = 0; i < as.size(); ++i) {
    const Assignment& a = as[i];
    const lcs::Direction& bob = s.bob[static_cast<std::size_t>(a.y)];
    const lcs::Direction& charlie = s.charlie[static_cast<std::size_t>(a.z)];
    // Relabel: Charlie's reported c is a1 when x2 = 1, else the measured bit.
    std::vector<int> measured;
    if (s.postprocess == lcs::CharliePostprocess::Relabel && a.x2 == 1) {
      if (a.c != a.a1) continue;
      measured = {0, 1};
    } else {
      measured = {a.c};
    }
    double prob = 0.0;
    for (int cm : measured) {
      const auto cket = charlie.ket(cm);
      const auto bket = bob.ket(a.b);
      for (int t = 0; t < 2; ++t) {
        C amp = 0.0;
        for (int ctrl = 0; ctrl < 2; ++ctrl)
          for (int bb = 0; bb < 2; ++bb) {
            // ctrl 0: A1 then A2, target ends in |x2>; ctrl 1: A2 then A1.
            C path = ctrl == 0 ? s.target[static_cast<std::size_t>(a.a1)] * basis(a.a2, a.x1) * basis(t, a.x2)
                               : s.target[static_cast<std::size_t>(a.a2)] * basis(a.a1, a.x2) * basis(t, a.x1);
            amp += std::conj(cket[static_cast<std::size_t>(ctrl)]) * std::conj(bket[static_cast<std::size_t>(bb)]) *
                   s.control_bob[static_cast<std::size_t>(2 * ctrl + bb)] * path;
          }
        prob += std::norm(amp);
      }
    }
    e[i] = prob;
  }
  return lcs::FloatCorrelation(sc, std::move(e));
}

/// Rank over the rationals by plain Gaussian elimination on dense rows.
inline std::size_t rank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

/// Affine dimension of a point set: rank of the differences to the first.
inline long affine_dimension(const std::vector<lcs::RationalVector>& pts) {
  if (pts.empty()) return -1;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    std::vector<Rational> d(pts[k].size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = pts[k][i] - pts[0][i];
    rows.push_back(std::move(d));
  }
  return static_cast<long>(rank(std::move(rows)));
}

/// Equality rows for "outcomes `kept` do not depend on settings `moved`":
/// for every coordinate-block pair of setting tuples that differ only in
/// `moved`, the marginal over the other outcomes agrees. Variables are
/// indices into the assignment tuple (0-3 outcomes, 4-7 settings).
inline std::vector<std::vector<Rational>> independence_rows(const lcs::Scenario& sc, std::vector<int> kept,
                                                            std::vector<int> moved) {
  const auto as = assignments(sc);
  auto get = [](const Assignment& a, int k) {
    const int v[8] = {a.a1, a.a2, a.b, a.c, a.x1, a.x2, a.y, a.z};
    return v[k];
  };
  std::vector<std::vector<Rational>> rows;
  // Key of an event: kept outcomes and unmoved settings.
  for (std::size_t i = 0; i < as.size(); ++i) {
    for (std::size_t j = 0; j < as.size(); ++j) {
      // Anchor rows at pairs (i, j) that are minimal representatives: all
      // outcomes outside `kept` zero, moved settings zero in i and varied in j.
      bool ok = true;
      for (int k = 0; k < 4 && ok; ++k) {
        const bool in_kept = std::find(kept.begin(), kept.end(), k) != kept.end();
        if (!in_kept) ok = get(as[i], k) == 0 && get(as[j], k) == 0;
        else ok = get(as[i], k) == get(as[j], k);
      }
      for (int k = 4; k < 8 && ok; ++k) {
        const bool is_moved = std::find(moved.begin(), moved.end(), k) != moved.end();
        if (is_moved) ok = get(as[i], k) == 0;
        else ok = get(as[i], k) == get(as[j], k);
      }
      if (!ok || i == j) continue;
      std::vector<Rational> row(sc.size());
      for (std::size_t t = 0; t < as.size(); ++t) {
        bool match_i = true, match_j = true;
        for (int k = 0; k < 8; ++k) {
          const bool summed = k < 4 && std::find(kept.begin(), kept.end(), k) == kept.end();
          if (summed) continue;
          match_i = match_i && get(as[t], k) == get(as[i], k);
          match_j = match_j && get(as[t], k) == get(as[j], k);
        }
        if (match_i) row[t] += 1;
        if (match_j) row[t] -= 1;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Normalisation rows: every setting tuple carries total probability one.
inline std::vector<std::vector<Rational>> normalisation_rows(const lcs::Scenario& sc) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t s = 0; s < sc.setting_tuples(); ++s) {
    std::vector<Rational> row(sc.size());
    for (std::size_t o = 0; o < sc.outcome_tuples(); ++o) row[o + sc.outcome_tuples() * s] = 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace oracle
