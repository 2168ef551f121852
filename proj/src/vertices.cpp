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

#include "lcswitch/vertices.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "lcswitch/errors.hpp"
#include "lcswitch/linalg.hpp"

namespace lcs {

std::uint64_t VertexSet::total() const {
  if (class_representatives.empty()) return vertices.size();
  std::uint64_t t = 0;
  for (auto s : class_sizes) t += s;
  return t;
}

namespace {

// ---------------------------------------------------------------------------
// Affine parametrization x_pivot = rhs - R x_free of the equality system.

struct AffineParam {
  std::size_t n = 0;
  std::vector<std::size_t> free;       // free coordinates
  std::vector<std::size_t> pivot;      // pivot coordinate of each equality row
  std::vector<RationalVector> coeff;   // coeff[k][j]: coefficient of free[j] in row k
  RationalVector rhs;
  std::vector<long> free_pos;          // coordinate -> position in `free`, or -1

  explicit AffineParam(const HPolytope& poly) : n(poly.coordinates()) {
    RowBasis basis(n + 1);
    auto add = [&](const SparseRow& row, const Rational& value) {
      RationalVector v(n + 1);
      for (const auto& [j, x] : row) v[j] += x;
      v[n] = value;
      basis.add(v);
    };
    add(poly.mass_row, Rational(1));
    for (const auto& r : poly.cone_rows) add(r, Rational(0));
    std::vector<char> is_pivot(n, 0);
    for (std::size_t pc : basis.pivots()) {
      if (pc >= n) throw PreconditionError("polytope equalities are inconsistent");
      is_pivot[pc] = 1;
    }
    free_pos.assign(n, -1);
    for (std::size_t j = 0; j < n; ++j)
      if (!is_pivot[j]) {
        free_pos[j] = static_cast<long>(free.size());
        free.push_back(j);
      }
    for (std::size_t k = 0; k < basis.rank(); ++k) {
      const RationalVector& row = basis.rows()[k];
      pivot.push_back(basis.pivots()[k]);
      RationalVector c(free.size());
      for (std::size_t j = 0; j < free.size(); ++j) c[j] = row[free[j]];
      coeff.push_back(std::move(c));
      rhs.push_back(row[n]);
    }
  }

  std::size_t dim() const { return free.size(); }

  // Full coordinates from values of the free coordinates.
  RationalVector expand(const RationalVector& t) const {
    RationalVector x(n);
    for (std::size_t j = 0; j < free.size(); ++j) x[free[j]] = t[j];
    for (std::size_t k = 0; k < pivot.size(); ++k) {
      Rational v = rhs[k];
      for (std::size_t j = 0; j < free.size(); ++j)
        if (sgn(coeff[k][j]) != 0) v -= coeff[k][j] * t[j];
      x[pivot[k]] = v;
    }
    return x;
  }

  // Direction in full coordinates from a direction of the free coordinates.
  RationalVector expand_direction(const RationalVector& dt) const {
    RationalVector dx(n);
    for (std::size_t j = 0; j < free.size(); ++j) dx[free[j]] = dt[j];
    for (std::size_t k = 0; k < pivot.size(); ++k) {
      Rational v;
      for (std::size_t j = 0; j < free.size(); ++j)
        if (sgn(coeff[k][j]) != 0) v -= coeff[k][j] * dt[j];
      dx[pivot[k]] = v;
    }
    return dx;
  }

  // Row of "x_i >= 0" as a linear form in the free-coordinate direction.
  RationalVector direction_row(std::size_t i) const {
    RationalVector a(free.size());
    if (free_pos[i] >= 0) {
      a[static_cast<std::size_t>(free_pos[i])] = 1;
      return a;
    }
    for (std::size_t k = 0; k < pivot.size(); ++k)
      if (pivot[k] == i) {
        for (std::size_t j = 0; j < free.size(); ++j) a[j] = -coeff[k][j];
        return a;
      }
    throw Error("coordinate is neither free nor pivot");
  }

  Rational row_constant(std::size_t i) const {
    if (free_pos[i] >= 0) return 0;
    for (std::size_t k = 0; k < pivot.size(); ++k)
      if (pivot[k] == i) return rhs[k];
    throw Error("coordinate is neither free nor pivot");
  }
};

std::vector<Integer> integer_row(const RationalVector& row) {
  Integer l = 1;
  for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = row[j].get_num() * (l / row[j].get_den());
  return out;
}

void make_primitive(std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0 || g == 1) return;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// ---------------------------------------------------------------------------
// Double description for a pointed cone {r : a_i . r >= 0}.

using Bits = std::vector<std::uint64_t>;

struct Ray {
  std::vector<Integer> v;
  Bits zero;
};

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t(1) << (i % 64); }

bool subset_of(const Bits& a, const Bits& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] & ~b[k]) return false;
  return true;
}

std::vector<Ray> cone_rays(const std::vector<std::vector<Integer>>& rows, std::size_t d, std::size_t budget) {
  const std::size_t m = rows.size();
  const std::size_t words = (m + 63) / 64;
  // Initial simplicial cone from greedily chosen independent rows.
  RowBasis basis(d);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < m && chosen.size() < d; ++i) {
    RationalVector r(rows[i].begin(), rows[i].end());
    if (basis.add(r)) chosen.push_back(i);
  }
  if (chosen.size() < d) throw PreconditionError("cone is not pointed");
  std::vector<Ray> rays;
  std::vector<SparseRow> bmat;
  for (std::size_t k = 0; k < d; ++k) {
    SparseRow sr;
    for (std::size_t j = 0; j < d; ++j)
      if (sgn(rows[chosen[k]][j]) != 0) sr.emplace_back(j, Rational(rows[chosen[k]][j]));
    bmat.push_back(std::move(sr));
  }
  for (std::size_t k = 0; k < d; ++k) {
    RationalVector e(d);
    e[k] = 1;
    auto sol = solve_square(bmat, e);
    if (!sol) throw Error("initial cone basis is singular");
    Ray ray{integer_row(*sol), Bits(words, 0)};
    make_primitive(ray.v);
    for (std::size_t q = 0; q < d; ++q)
      if (q != k) set_bit(ray.zero, chosen[q]);
    rays.push_back(std::move(ray));
  }
  std::vector<char> done(m, 0);
  for (std::size_t i : chosen) done[i] = 1;

  Integer s, t;
  for (std::size_t i = 0; i < m; ++i) {
    if (done[i]) continue;
    done[i] = 1;
    const auto& a = rows[i];
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      Integer& acc = val[r];
      acc = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (sgn(a[j]) != 0 && sgn(rays[r].v[j]) != 0) mpz_addmul(acc.get_mpz_t(), a[j].get_mpz_t(), rays[r].v[j].get_mpz_t());
      int sg = sgn(acc);
      if (sg > 0) pos.push_back(r);
      else if (sg < 0) neg.push_back(r);
      else set_bit(rays[r].zero, i);
    }
    if (neg.empty()) continue;

    std::vector<Ray> fresh;
    // Rays vanishing on each processed constraint, for the adjacency test.
    std::vector<std::vector<std::uint32_t>> on(m);
    for (std::size_t r = 0; r < rays.size(); ++r)
      for (std::size_t k = 0; k < words; ++k)
        for (std::uint64_t bits = rays[r].zero[k]; bits; bits &= bits - 1)
          on[k * 64 + static_cast<std::size_t>(std::countr_zero(bits))].push_back(static_cast<std::uint32_t>(r));
    Bits common(words);
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        std::size_t cnt = 0;
        for (std::size_t k = 0; k < words; ++k) {
          common[k] = rays[p].zero[k] & rays[q].zero[k];
          cnt += static_cast<std::size_t>(std::popcount(common[k]));
        }
        if (cnt + 2 < d) continue;
        // p and q are adjacent unless a third ray vanishes on all of the
        // common constraints; scan the shortest list among them.
        const std::vector<std::uint32_t>* shortest = nullptr;
        for (std::size_t k = 0; k < words; ++k)
          for (std::uint64_t bits = common[k]; bits; bits &= bits - 1) {
            const auto& list = on[k * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
            if (!shortest || list.size() < shortest->size()) shortest = &list;
          }
        bool adjacent = true;
        for (std::uint32_t r : *shortest) {
          if (r == p || r == q) continue;
          if (subset_of(common, rays[r].zero)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Ray nr{std::vector<Integer>(d), common};
        for (std::size_t j = 0; j < d; ++j) {
          // val[p] > 0 > val[q]: val[p] * q - val[q] * p
          mpz_mul(s.get_mpz_t(), val[p].get_mpz_t(), rays[q].v[j].get_mpz_t());
          mpz_mul(t.get_mpz_t(), val[q].get_mpz_t(), rays[p].v[j].get_mpz_t());
          mpz_sub(nr.v[j].get_mpz_t(), s.get_mpz_t(), t.get_mpz_t());
        }
        make_primitive(nr.v);
        set_bit(nr.zero, i);
        fresh.push_back(std::move(nr));
        if (budget && fresh.size() + rays.size() > budget)
          throw BudgetExceeded("double description exceeded " + std::to_string(budget) + " rays");
      }
    std::vector<Ray> next;
    next.reserve(rays.size() - neg.size() + fresh.size());
    std::vector<char> drop(rays.size(), 0);
    for (std::size_t q : neg) drop[q] = 1;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (!drop[r]) next.push_back(std::move(rays[r]));
    for (auto& f : fresh) next.push_back(std::move(f));
    rays = std::move(next);
  }
  return rays;
}

RationalVector to_rational(const std::vector<Integer>& v) { return RationalVector(v.begin(), v.end()); }

bool half_integral_vector(std::span<const Rational> v) {
  for (const auto& x : v)
    if (x.get_den() != 1 && x.get_den() != 2) return false;
  return true;
}

}  // namespace

bool is_vertex(const HPolytope& poly, std::span<const Rational> v) {
  const std::size_t n = poly.coordinates();
  if (v.size() != n) throw ScenarioError("vertex length does not match the polytope");
  for (const auto& x : v)
    if (sgn(x) < 0) return false;
  Rational mass;
  for (const auto& [j, c] : poly.mass_row) mass += c * v[j];
  if (mass != 1) return false;
  for (const auto& row : poly.cone_rows) {
    Rational acc;
    for (const auto& [j, c] : row) acc += c * v[j];
    if (sgn(acc) != 0) return false;
  }
  RowBasis basis(n);
  basis.add(poly.mass_row);
  for (const auto& row : poly.cone_rows) basis.add(row);
  for (std::size_t i = 0; i < n && basis.rank() < n; ++i)
    if (sgn(v[i]) == 0) basis.add(SparseRow{{i, Rational(1)}});
  return basis.rank() == n;
}

VertexSet double_description(const HPolytope& poly, const EnumerationOptions& options) {
  AffineParam param(poly);
  const std::size_t k = param.dim(), n = param.n;
  // Homogenized: (lambda, t) with lambda >= 0 and lambda * row_constant + row . t >= 0.
  std::vector<std::vector<Integer>> rows;
  std::vector<Integer> lam(k + 1);
  lam[0] = 1;
  rows.push_back(lam);
  std::vector<std::size_t> order;
  for (std::size_t j : param.free) order.push_back(j);
  for (std::size_t p : param.pivot) order.push_back(p);
  for (std::size_t i : order) {
    RationalVector r(k + 1);
    r[0] = param.row_constant(i);
    RationalVector a = param.direction_row(i);
    for (std::size_t j = 0; j < k; ++j) r[j + 1] = a[j];
    rows.push_back(integer_row(r));
  }
  auto rays = cone_rays(rows, k + 1, options.ray_budget);
  VertexSet out{poly.scenario, {}, {}, {}, true, {}};
  for (const auto& ray : rays) {
    if (sgn(ray.v[0]) <= 0) throw Error("polytope " + poly.name + " is unbounded");
    RationalVector t(k);
    for (std::size_t j = 0; j < k; ++j) t[j] = Rational(ray.v[j + 1], ray.v[0]);
    for (auto& x : t) x.canonicalize();
    out.vertices.push_back(param.expand(t));
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  (void)n;
  return out;
}

// ---------------------------------------------------------------------------
// Adjacency decomposition

namespace {

void check_invariant(const HPolytope& poly, const SymmetryGroup& group) {
  if (!(group.scenario() == poly.scenario)) throw ScenarioError("group and polytope scenarios differ");
  const std::size_t n = poly.coordinates();
  RowBasis basis(n);
  basis.add(poly.mass_row);
  for (const auto& r : poly.cone_rows) basis.add(r);
  for (const auto& g : group.permutations()) {
    auto image = [&](const SparseRow& row) {
      RationalVector v(n);
      for (const auto& [j, c] : row) v[g[j]] += c;
      return v;
    };
    bool ok = basis.contains(image(poly.mass_row));
    for (const auto& r : poly.cone_rows) ok = ok && basis.contains(image(r));
    if (!ok) throw PreconditionError("a group generator does not map " + poly.name + " onto itself");
  }
}

// Neighbouring vertices of v along the extreme rays of its vertex cone.
std::vector<RationalVector> neighbours(const HPolytope& poly, const AffineParam& param, const RationalVector& v,
                                       std::size_t ray_budget) {
  const std::size_t n = param.n, k = param.dim();
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(v[i]) == 0) rows.push_back(integer_row(param.direction_row(i)));
  auto rays = cone_rays(rows, k, ray_budget);
  std::vector<RationalVector> out;
  for (const auto& ray : rays) {
    RationalVector dx = param.expand_direction(to_rational(ray.v));
    std::optional<Rational> step;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(dx[i]) >= 0) continue;
      Rational s = v[i] / -dx[i];
      if (!step || s < *step) step = s;
    }
    if (!step) throw Error("polytope " + poly.name + " is unbounded");
    RationalVector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = v[i] + *step * dx[i];
    out.push_back(std::move(w));
  }
  return out;
}

std::string vector_line(std::span<const Rational> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += to_string(v[i]);
  }
  return s;
}

RationalVector parse_line(const std::string& line, std::size_t expected, int line_no) {
  std::istringstream in(line);
  RationalVector out;
  std::string tok;
  int column = 1;
  std::size_t offset = 0;
  while (in >> tok) {
    offset = line.find(tok, offset);
    column = static_cast<int>(offset) + 1;
    try {
      out.push_back(parse_rational(tok));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, column);
    }
    offset += tok.size();
  }
  if (expected && out.size() != expected)
    throw ParseError("expected " + std::to_string(expected) + " values, found " + std::to_string(out.size()), line_no,
                     1);
  return out;
}

struct Frontier {
  std::vector<RationalVector> reps;
  std::vector<char> done;
};

void save_checkpoint(const std::string& path, const Frontier& f) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << "# lcswitch adjacency frontier\n";
    for (std::size_t i = 0; i < f.reps.size(); ++i) out << (f.done[i] ? "done " : "todo ") << vector_line(f.reps[i]) << '\n';
    if (!out) throw Error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

bool load_checkpoint(const std::string& path, std::size_t n, Frontier& f) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("done ", 0) != 0 && line.rfind("todo ", 0) != 0)
      throw ParseError("expected 'done' or 'todo'", line_no, 1);
    f.done.push_back(line[0] == 'd');
    f.reps.push_back(parse_line(line.substr(5), n, line_no));
  }
  return true;
}

}  // namespace

VertexSet enumerate_vertices(const HPolytope& poly, const SymmetryGroup* group, const EnumerationOptions& options) {
  if (!group) return double_description(poly, options);
  check_invariant(poly, *group);
  AffineParam param(poly);

  Frontier f;
  std::set<RationalVector> known;
  if (options.checkpoint.empty() || !load_checkpoint(options.checkpoint, param.n, f)) {
    // Start from an LP optimum, which is a vertex.
    RationalVector c(param.n);
    for (std::size_t i = 0; i < param.n; ++i) c[i] = Rational(static_cast<long>(i % 7) - 3);
    LPResult r = lp_maximize(poly, LinearFunctional(poly.scenario, c));
    f.reps.push_back(group->canonical_form(r.primal));
    f.done.push_back(0);
  }
  for (const auto& r : f.reps) known.insert(r);

  VertexSet out{poly.scenario, {}, {}, {}, true, {}};
  std::size_t processed = static_cast<std::size_t>(std::count(f.done.begin(), f.done.end(), 1));
  const unsigned threads = std::max(1u, options.threads);
  while (true) {
    std::vector<std::size_t> batch;
    for (std::size_t i = 0; i < f.reps.size() && batch.size() < threads; ++i)
      if (!f.done[i]) batch.push_back(i);
    if (batch.empty()) break;
    if (options.budget && processed + batch.size() > options.budget) {
      batch.resize(options.budget > processed ? options.budget - processed : 0);
      if (batch.empty()) {
        out.exhaustive = false;
        out.note = "class budget of " + std::to_string(options.budget) + " reached with " +
                   std::to_string(f.reps.size() - processed) + " classes unexplored";
        break;
      }
    }
    std::vector<std::vector<RationalVector>> results(batch.size());
    std::vector<std::string> errors(batch.size());
    std::vector<char> budget_hit(batch.size(), 0);
    auto work = [&](std::size_t b) {
      try {
        auto nb = neighbours(poly, param, f.reps[batch[b]], options.ray_budget);
        for (auto& w : nb) results[b].push_back(group->canonical_form(w));
      } catch (const BudgetExceeded& e) {
        budget_hit[b] = 1;
        errors[b] = e.what();
      } catch (const std::exception& e) {
        errors[b] = e.what();
      }
    };
    if (batch.size() == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t b = 0; b < batch.size(); ++b) pool.emplace_back(work, b);
      for (auto& t : pool) t.join();
    }
    bool stop = false;
    for (std::size_t b = 0; b < batch.size(); ++b) {
      if (budget_hit[b]) {
        out.exhaustive = false;
        out.note = "neighbour computation stopped: " + errors[b];
        stop = true;
        continue;
      }
      if (!errors[b].empty()) throw Error(errors[b]);
      f.done[batch[b]] = 1;
      ++processed;
      for (auto& w : results[b])
        if (known.insert(w).second) {
          f.reps.push_back(std::move(w));
          f.done.push_back(0);
        }
    }
    if (!options.checkpoint.empty()) save_checkpoint(options.checkpoint, f);
    if (stop) break;
  }
  if (out.exhaustive && std::count(f.done.begin(), f.done.end(), 0) > 0) out.exhaustive = false;
  out.class_representatives = f.reps;
  std::sort(out.class_representatives.begin(), out.class_representatives.end());
  for (const auto& r : out.class_representatives) out.class_sizes.push_back(group->orbit_size(r));
  return out;
}

std::vector<RationalVector> deterministic_vertices(const HPolytope& poly) {
  const Scenario& sc = poly.scenario;
  const std::size_t cols = sc.setting_tuples(), outs = sc.outcome_tuples(), np = sc.party_count();
  // For deterministic tables a relation forces equal marginal outcomes on
  // every pair of columns that differ only in the varied settings.
  struct Link {
    std::size_t other;
    std::vector<std::size_t> parties;
  };
  std::vector<std::vector<Link>> links(cols);
  std::vector<int> s(np), t(np);
  for (const auto& rel : poly.relations) {
    std::vector<char> varied(np, 0);
    std::vector<std::size_t> parties;
    for (const auto& name : rel.settings) varied[sc.require(name).party] = 1;
    for (const auto& name : rel.outcomes) parties.push_back(sc.require(name).party);
    for (std::size_t a = 0; a < cols; ++a)
      for (std::size_t b = 0; b < a; ++b) {
        sc.decode_settings(a, s);
        sc.decode_settings(b, t);
        bool ok = true;
        for (std::size_t p = 0; p < np && ok; ++p)
          if (!varied[p] && s[p] != t[p]) ok = false;
        if (ok) links[a].push_back({b, parties});
      }
  }
  std::vector<std::size_t> choice(cols, 0);
  std::vector<RationalVector> out;
  std::vector<int> oa(np), ob(np);
  auto consistent = [&](std::size_t col) {
    sc.decode_outcomes(choice[col], oa);
    for (const auto& link : links[col]) {
      sc.decode_outcomes(choice[link.other], ob);
      for (std::size_t p : link.parties)
        if (oa[p] != ob[p]) return false;
    }
    return true;
  };
  // Iterative backtracking over columns.
  std::size_t col = 0;
  choice[0] = 0;
  while (true) {
    if (choice[col] < outs && consistent(col)) {
      if (col + 1 == cols) {
        RationalVector v(sc.size());
        for (std::size_t c = 0; c < cols; ++c) v[choice[c] + outs * c] = 1;
        out.push_back(std::move(v));
        ++choice[col];
        continue;
      }
      ++col;
      choice[col] = 0;
      continue;
    }
    if (choice[col] < outs) {
      ++choice[col];
      continue;
    }
    if (col == 0) break;
    --col;
    ++choice[col];
  }
  std::sort(out.begin(), out.end());
  return out;
}

long face_dimension(const VertexSet& vs, const InequalityRecord& rec, const SymmetryGroup* group) {
  if (!vs.exhaustive) throw PreconditionError("face dimension needs an exhaustive vertex set");
  InequalityRecord r = rec.lhs.scenario == vs.scenario ? rec : rec.on(vs.scenario);
  AffineHull hull(vs.scenario.size());
  auto visit = [&](std::span<const Rational> v) {
    Rational value = r.lhs.dot(v) + r.lhs.offset;
    if (value > r.bound) throw PreconditionError("inequality " + rec.name + " is violated by a vertex");
    if (value == r.bound) hull.add(v);
  };
  if (vs.class_representatives.empty()) {
    for (const auto& v : vs.vertices) visit(v);
  } else {
    if (!group) throw PreconditionError("orbit representatives need the group to expand them");
    for (const auto& rep : vs.class_representatives)
      for (const auto& v : group->orbit(rep)) visit(v);
  }
  return hull.dimension();
}

// ---------------------------------------------------------------------------
// Face dimension by LP queries

HullDimension hull_dimension(const std::vector<const HPolytope*>& pieces, const LinearFunctional* face,
                             const Rational& level) {
  if (pieces.empty()) throw PreconditionError("hull_dimension needs at least one polytope");
  const Scenario& sc = pieces.front()->scenario;
  const std::size_t n = sc.size();
  std::vector<LinearProgram> programs;
  for (const HPolytope* p : pieces) {
    if (!(p->scenario == sc)) throw ScenarioError("hull pieces have different scenarios");
    LinearProgram lp = p->program();
    if (face) {
      SparseRow row;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(face->coefficients[j]) != 0) row.emplace_back(j, face->coefficients[j]);
      lp.add_row(std::move(row), level - face->offset);
    }
    programs.push_back(std::move(lp));
  }
  HullDimension out;
  auto solve = [&](std::size_t piece, const RationalVector& c) {
    ++out.lp_solves;
    LPResult r = solve_lp(programs[piece], c);
    if (auto e = verify_certificate(programs[piece], c, r); !e.empty())
      throw Error("face LP certificate failed: " + e);
    return r;
  };
  // Pieces that meet the face.
  std::vector<std::size_t> live;
  AffineHull hull(n);
  RationalVector zero(n);
  for (std::size_t p = 0; p < programs.size(); ++p) {
    LPResult r = solve(p, zero);
    if (r.status == LPStatus::Optimal) {
      live.push_back(p);
      if (hull.add(r.primal)) out.points.push_back(r.primal);
    }
  }
  if (live.empty()) return out;

  RowBasis constant(n);
  while (true) {
    // A functional orthogonal to the current hull directions and not yet
    // known to be constant on the face.
    std::vector<RationalVector> perp = hull.directions().nullspace();
    const RationalVector* w = nullptr;
    for (const auto& v : perp)
      if (!constant.contains(v)) {
        w = &v;
        break;
      }
    if (!w) break;
    const Rational base = [&] {
      Rational s;
      for (std::size_t j = 0; j < n; ++j) s += (*w)[j] * hull.origin()[j];
      return s;
    }();
    bool grew = false;
    RationalVector neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -(*w)[j];
    for (std::size_t p : live) {
      for (const RationalVector* c : std::array<const RationalVector*, 2>{w, &neg}) {
        LPResult r = solve(p, *c);
        if (r.status != LPStatus::Optimal) throw Error("face LP is not bounded");
        Rational value;
        for (std::size_t j = 0; j < n; ++j) value += (*w)[j] * r.primal[j];
        if (value != base) {
          hull.add(r.primal);
          out.points.push_back(r.primal);
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
    if (!grew) {
      constant.add(*w);
      out.constant.push_back(*w);
    }
  }
  out.dimension = hull.dimension();
  return out;
}

HullDimension face_dimension_lp(const InequalityRecord& rec) {
  auto [lc1, lc2] = build_lc_pair(rec.variant);
  return hull_dimension({&lc1, &lc2}, &rec.lhs, rec.bound);
}

// ---------------------------------------------------------------------------
// LC vertex statistics

LCVertexReport lc_vertex_report(const LCReportOptions& options) {
  LCVertexReport rep;
  const SymmetryGroup& full = lc_symmetry_group();
  auto gens = lc_generators();
  gens.pop_back();  // the A1/A2 exchange swaps LC1 and LC2
  const Scenario sc = Scenario::four_party(Variant::WithoutZ);
  auto [lc1, lc2] = build_lc_pair(Variant::WithoutZ);
  HPolytope ns = build("NS", Variant::WithoutZ);
  rep.ns_dimension = static_cast<long>(ns.coordinates() - ns.equality_rank());

  // Deterministic vertices of LC1 and LC2 and their classes under the full group.
  std::set<RationalVector> det;
  for (const auto& v : deterministic_vertices(lc1)) det.insert(v);
  for (const auto& v : deterministic_vertices(lc2)) det.insert(v);
  rep.deterministic_vertices = det.size();
  std::set<RationalVector> det_classes;
  for (const auto& v : det) det_classes.insert(full.canonical_form(v));
  rep.deterministic_classes = det_classes.size();

  AffineHull hull(sc.size());
  for (const auto& v : det) hull.add(v);
  std::set<RationalVector> lc_classes = det_classes;

  if (!options.full) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> coef(-10, 10);
    for (std::size_t k = 0; k < options.samples; ++k) {
      const HPolytope& poly = k % 2 ? lc2 : lc1;
      RationalVector c(sc.size());
      for (auto& x : c) x = coef(rng);
      LPResult r = lp_maximize(poly, LinearFunctional(sc, c));
      if (!is_vertex(poly, r.primal)) throw Error("LP optimum is not a vertex");
      if (!half_integral_vector(r.primal)) rep.half_integral = false;
      hull.add(r.primal);
      lc_classes.insert(full.canonical_form(r.primal));
      ++rep.sampled_vertices;
    }
    rep.exhaustive = false;
    rep.note = "sampled run: " + std::to_string(rep.sampled_vertices) + " LP vertices, no enumeration";
    rep.lc_classes = lc_classes.size();
    rep.lc_representatives.assign(lc_classes.begin(), lc_classes.end());
    rep.sample_dimension = hull.dimension();
    return rep;
  }

  const SymmetryGroup fixing(sc, gens);
  VertexSet vs = enumerate_vertices(lc1, &fixing, options.enumeration);
  rep.exhaustive = vs.exhaustive;
  rep.note = vs.note;
  rep.lc1_classes = vs.class_representatives.size();
  rep.lc1_vertices = vs.total();

  const Permutation& swap = full.permutations().back();
  std::uint64_t shared = 0;
  std::set<RationalVector> rep_set(vs.class_representatives.begin(), vs.class_representatives.end());
  for (std::size_t k = 0; k < vs.class_representatives.size(); ++k) {
    const RationalVector& v = vs.class_representatives[k];
    if (!half_integral_vector(v)) rep.half_integral = false;
    hull.add(v);
    RationalVector sv = lcs::apply(swap, v);
    hull.add(sv);
    lc_classes.insert(full.canonical_form(v));
    // v is also a vertex of LC2 exactly when its exchange image is a vertex of LC1.
    if (rep_set.count(fixing.canonical_form(sv))) shared += vs.class_sizes[k];
  }
  rep.lc_classes = lc_classes.size();
  rep.lc_representatives.assign(lc_classes.begin(), lc_classes.end());
  rep.lc_vertices = 2 * rep.lc1_vertices - shared;
  rep.sample_dimension = hull.dimension();
  return rep;
}

// ---------------------------------------------------------------------------
// Vertex files

void write_vertex_file(std::ostream& out, const VertexSet& vs) {
  const bool reps = !vs.class_representatives.empty();
  const auto& rows = reps ? vs.class_representatives : vs.vertices;
  out << "# lcswitch vertex set\n";
  out << "# scenario " << vs.scenario.describe() << '\n';
  out << "# flattening outcomes then settings, little-endian, coordinate = outcome_index + |O| * setting_index\n";
  out << "# exhaustive " << (vs.exhaustive ? "true" : "false") << '\n';
  if (!vs.note.empty()) out << "# note " << vs.note << '\n';
  if (reps) {
    out << "# orbit-sizes";
    for (auto s : vs.class_sizes) out << ' ' << s;
    out << '\n';
  }
  out << "V-representation\nbegin\n";
  out << rows.size() << ' ' << vs.scenario.size() + 1 << " rational\n";
  for (const auto& v : rows) out << "1 " << vector_line(v) << '\n';
  out << "end\n";
}

VertexSet read_vertex_file(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::optional<Scenario> sc;
  VertexSet vs{Scenario::four_party(Variant::WithoutZ), {}, {}, {}, true, {}};
  std::vector<std::uint64_t> sizes;
  bool reps = false;
  enum { Header, Begin, Size, Rows, End } state = Header;
  std::size_t expected_rows = 0, width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      while (!body.empty() && body[0] == ' ') body.erase(0, 1);
      if (body.rfind("scenario ", 0) == 0) {
        try {
          sc = Scenario::parse(body.substr(9));
        } catch (const ParseError& e) {
          throw ParseError(e.message(), line_no, 11 + std::max(0, e.column() - 1));
        }
      } else if (body.rfind("exhaustive ", 0) == 0) {
        vs.exhaustive = body.substr(11) == "true";
      } else if (body.rfind("note ", 0) == 0) {
        vs.note = body.substr(5);
      } else if (body.rfind("orbit-sizes", 0) == 0) {
        reps = true;
        std::istringstream s(body.substr(11));
        std::uint64_t k;
        while (s >> k) sizes.push_back(k);
      }
      continue;
    }
    switch (state) {
      case Header:
        if (line != "V-representation") throw ParseError("expected 'V-representation'", line_no, 1);
        state = Begin;
        break;
      case Begin:
        if (line != "begin") throw ParseError("expected 'begin'", line_no, 1);
        state = Size;
        break;
      case Size: {
        std::istringstream s(line);
        std::string kind;
        if (!(s >> expected_rows >> width >> kind) || kind != "rational")
          throw ParseError("expected '<rows> <columns> rational'", line_no, 1);
        if (!sc) throw ParseError("missing '# scenario' header line", line_no, 1);
        if (width != sc->size() + 1) throw ParseError("column count does not match the scenario", line_no, 1);
        state = Rows;
        break;
      }
      case Rows: {
        if (line == "end") {
          state = End;
          break;
        }
        RationalVector v = parse_line(line, width, line_no);
        if (v[0] != 1) throw ParseError("vertex rows start with 1", line_no, 1);
        v.erase(v.begin());
        (reps ? vs.class_representatives : vs.vertices).push_back(std::move(v));
        break;
      }
      case End:
        throw ParseError("text after 'end'", line_no, 1);
    }
  }
  if (state != End) throw ParseError("missing 'end' line", line_no + 1, 1);
  const std::size_t got = reps ? vs.class_representatives.size() : vs.vertices.size();
  if (got != expected_rows)
    throw ParseError("expected " + std::to_string(expected_rows) + " rows, found " + std::to_string(got), line_no, 1);
  if (reps && sizes.size() != got) throw ParseError("orbit-sizes count does not match the rows", line_no, 1);
  vs.scenario = *sc;
  vs.class_sizes = std::move(sizes);
  return vs;
}

}  // namespace lcs
