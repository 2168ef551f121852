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

#include "lcswitch/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "lcswitch/errors.hpp"

namespace lcs {

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint32_t>(i);
  return out;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Relabelling text form

Relabelling::Relabelling(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::set<std::string> seen;
  for (const auto& r : rules_)
    if (!seen.insert(r.variable).second) throw ParseError("variable '" + r.variable + "' is relabelled twice");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits at separators outside parentheses, keeping the offsets of the pieces.
std::vector<std::pair<std::size_t, std::string_view>> split_top(std::string_view s, std::string_view seps) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size()) {
      char ch = s[i];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth != 0 || seps.find(ch) == std::string_view::npos) continue;
    }
    out.emplace_back(start, s.substr(start, i - start));
    start = i + 1;
  }
  return out;
}

bool is_tuple(std::string_view s) {
  s = trim(s);
  return s.size() >= 2 && s.front() == '(' && s.back() == ')' && split_top(s.substr(1, s.size() - 2), ",").size() > 1;
}

std::vector<std::string_view> tuple_items(std::string_view s) {
  s = trim(s);
  std::vector<std::string_view> out;
  for (auto [off, item] : split_top(s.substr(1, s.size() - 2), ",")) out.push_back(trim(item));
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Relabelling Relabelling::parse(std::string_view text) {
  std::vector<Rule> rules;
  // Rules are separated by ';' or by top-level ','.
  for (auto [offset, piece] : split_top(text, ",;")) {
    if (trim(piece).empty()) continue;
    const int column = static_cast<int>(offset) + 1;
    std::size_t arrow = piece.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected 'variable -> expression'", 1, column);
    std::string_view lhs = trim(piece.substr(0, arrow));
    std::string_view rhs = trim(piece.substr(arrow + 2));
    try {
      if (is_tuple(lhs)) {
        auto names = tuple_items(lhs);
        if (!is_tuple(rhs)) throw ParseError("a tuple of variables needs a tuple of images");
        auto values = tuple_items(rhs);
        if (values.size() != names.size()) throw ParseError("tuple lengths differ");
        for (std::size_t k = 0; k < names.size(); ++k) {
          if (!is_identifier(names[k])) throw ParseError("'" + std::string(names[k]) + "' is not a variable name");
          rules.push_back({std::string(names[k]), Expr::parse_value(values[k])});
        }
      } else {
        if (!is_identifier(lhs)) throw ParseError("'" + std::string(lhs) + "' is not a variable name");
        rules.push_back({std::string(lhs), Expr::parse_value(rhs)});
      }
    } catch (const ParseError& e) {
      throw ParseError(e.message(), 1, column + (e.column() > 0 ? static_cast<int>(arrow) + 1 + e.column() : 0));
    }
  }
  if (rules.empty()) throw ParseError("empty relabelling", 1, 1);
  return Relabelling(std::move(rules));
}

std::string Relabelling::to_string() const {
  bool permutation = rules_.size() > 1;
  for (const auto& r : rules_)
    if (!r.value.as_variable()) permutation = false;
  std::string out;
  if (permutation) {
    std::string lhs, rhs;
    for (std::size_t k = 0; k < rules_.size(); ++k) {
      if (k) {
        lhs += ", ";
        rhs += ", ";
      }
      lhs += rules_[k].variable;
      rhs += rules_[k].value.to_string();
    }
    return "(" + lhs + ") -> (" + rhs + ")";
  }
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    if (k) out += ", ";
    out += rules_[k].variable + " -> " + rules_[k].value.to_string();
  }
  return out;
}

Permutation Relabelling::permutation(const Scenario& sc) const {
  const std::size_t n = sc.party_count();
  struct Bound {
    std::size_t slot;
    int card;
    VarKind kind;
    BoundExpr expr;
  };
  std::vector<Bound> bound;
  for (const auto& r : rules_) {
    VarRef ref = sc.require(r.variable);
    if (ref.kind == VarKind::Setting)
      for (const auto& v : r.value.variables())
        if (sc.require(v).kind == VarKind::Outcome)
          throw ScenarioError("setting '" + r.variable + "' cannot depend on outcome '" + v + "'");
    bound.push_back({ref.slot(), sc.cardinality(ref), ref.kind, BoundExpr(r.value, sc)});
  }
  const std::size_t size = sc.size();
  Permutation perm(size);
  std::vector<char> hit(size, 0);
  std::vector<int> a(2 * n), b(2 * n);
  for (std::size_t i = 0; i < size; ++i) {
    sc.decode(i, a);
    b = a;
    for (const auto& r : bound) {
      int v = r.expr.eval(a);
      if (v < 0 || v >= r.card) throw ScenarioError("relabelling '" + to_string() + "' leaves the value range");
      b[r.slot] = v;
    }
    std::size_t j = sc.index(std::span<const int>(b.data(), n), std::span<const int>(b.data() + n, n));
    if (hit[j]) throw ScenarioError("relabelling '" + to_string() + "' is not a bijection");
    hit[j] = 1;
    perm[i] = static_cast<std::uint32_t>(j);
  }
  return perm;
}

// ---------------------------------------------------------------------------
// Actions

template <typename T>
Correlation<T> apply(const Permutation& g, const Correlation<T>& corr) {
  if (g.size() != corr.scenario().size()) throw ScenarioError("permutation and correlation sizes differ");
  std::vector<T> e(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) e[g[i]] = corr[i];
  return Correlation<T>(corr.scenario(), std::move(e));
}

template ExactCorrelation apply(const Permutation&, const ExactCorrelation&);
template FloatCorrelation apply(const Permutation&, const FloatCorrelation&);

LinearFunctional apply(const Permutation& g, const LinearFunctional& f) {
  if (g.size() != f.coefficients.size()) throw ScenarioError("permutation and functional sizes differ");
  RationalVector c(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) c[g[i]] = f.coefficients[i];
  return LinearFunctional(f.scenario, std::move(c), f.offset);
}

RationalVector apply(const Permutation& g, std::span<const Rational> v) {
  if (g.size() != v.size()) throw ScenarioError("permutation and vector sizes differ");
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[g[i]] = v[i];
  return out;
}

// ---------------------------------------------------------------------------
// Stabilizer chain (incremental Schreier-Sims with base 0, 1, ..., n-1)

struct SymmetryGroup::Chain {
  std::size_t n;
  std::vector<std::vector<Permutation>> gens;
  std::vector<std::vector<std::optional<Permutation>>> trans;  // trans[k][j] maps k to j

  explicit Chain(std::size_t size) : n(size), gens(size), trans(size, std::vector<std::optional<Permutation>>(size)) {
    for (std::size_t k = 0; k < n; ++k) trans[k][k] = identity_permutation(n);
  }

  void sift_and_add(std::size_t k, Permutation h) {
    for (; k < n; ++k) {
      const std::size_t j = h[k];
      if (!trans[k][j]) {
        add(k, std::move(h));
        return;
      }
      h = compose(inverse(*trans[k][j]), h);
    }
  }

  // gens[m] fixes 0..m-1, so it belongs to every stabilizer G_l with l <= m
  // and has to close the orbits of all those levels.
  void add(std::size_t m, Permutation g) {
    gens[m].push_back(g);
    for (std::size_t l = m + 1; l-- > 0;) {
      std::vector<std::size_t> orbit;
      for (std::size_t j = 0; j < n; ++j)
        if (trans[l][j]) orbit.push_back(j);
      for (std::size_t j : orbit) update(l, compose(g, *trans[l][j]));
    }
  }

  void update(std::size_t l, Permutation t) {
    std::vector<Permutation> stack{std::move(t)};
    while (!stack.empty()) {
      Permutation cur = std::move(stack.back());
      stack.pop_back();
      const std::size_t j = cur[l];
      if (trans[l][j]) {
        Permutation h = compose(inverse(*trans[l][j]), cur);
        if (!is_identity(h)) sift_and_add(l + 1, std::move(h));
        continue;
      }
      trans[l][j] = cur;
      for (std::size_t m = l; m < n; ++m)
        for (const auto& g : gens[m]) stack.push_back(compose(g, cur));
    }
  }

  bool contains(Permutation h) const {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = h[k];
      if (!trans[k][j]) return false;
      h = compose(inverse(*trans[k][j]), h);
    }
    return true;
  }

  Integer order() const {
    Integer o = 1;
    for (std::size_t k = 0; k < n; ++k) {
      long count = 0;
      for (const auto& t : trans[k]) count += t.has_value();
      o *= count;
    }
    return o;
  }
};

// ---------------------------------------------------------------------------
// Canonical forms

struct SymmetryGroup::Canonizer {
  // Flip blocks of the normal subgroup: swapping the c = 0 and c = 1 entries
  // of every coordinate in the block. positions[b] is sorted; partner[i] is
  // the coordinate i is swapped with.
  std::vector<std::vector<std::uint32_t>> positions;
  std::vector<std::uint32_t> partner;
  std::vector<Permutation> transversal;
};

namespace {

std::uint64_t hash_vector(const std::vector<std::int64_t>& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t x : v) {
    h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return h;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const { return static_cast<std::size_t>(hash_vector(v)); }
};

// Common-denominator integer form; nullopt when an entry does not fit.
std::optional<std::pair<std::vector<std::int64_t>, Integer>> integer_form(std::span<const Rational> v) {
  Integer d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Integer num = v[i].get_num() * (d / v[i].get_den());
    if (!num.fits_slong_p()) return std::nullopt;
    out[i] = num.get_si();
  }
  return std::make_pair(std::move(out), std::move(d));
}

RationalVector from_integer_form(const std::vector<std::int64_t>& v, const Integer& d) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = Rational(Integer(static_cast<long>(v[i])), d);
    out[i].canonicalize();
  }
  return out;
}

template <typename T>
void block_minimize(std::vector<T>& w, const std::vector<std::vector<std::uint32_t>>& blocks,
                    const std::vector<std::uint32_t>& partner) {
  for (const auto& pos : blocks) {
    for (std::uint32_t i : pos) {
      const T& a = w[i];
      const T& b = w[partner[i]];
      if (a == b) continue;
      if (b < a)
        for (std::uint32_t k : pos)
          if (k < partner[k]) std::swap(w[k], w[partner[k]]);
      break;
    }
  }
}

template <typename T>
std::vector<T> canonical_impl(const std::vector<T>& v,
                              const std::vector<std::vector<std::uint32_t>>& blocks,
                              const std::vector<std::uint32_t>& partner, const std::vector<Permutation>& transversal) {
  std::vector<T> best, w(v.size());
  for (const auto& t : transversal) {
    for (std::size_t i = 0; i < v.size(); ++i) w[t[i]] = v[i];
    block_minimize(w, blocks, partner);
    if (best.empty() || w < best) best = w;
  }
  return best;
}

}  // namespace

SymmetryGroup::SymmetryGroup(Scenario scenario, std::vector<Relabelling> generators)
    : scenario_(std::move(scenario)), generators_(std::move(generators)) {
  const std::size_t n = scenario_.size();
  auto chain = std::make_shared<Chain>(n);
  for (const auto& r : generators_) {
    perms_.push_back(r.permutation(scenario_));
    if (!chain->contains(perms_.back())) chain->sift_and_add(0, perms_.back());
  }
  chain_ = chain;

  // Normal subgroup of conditional c flips, one block per assignment of the
  // remaining Alice variables, when the scenario and group provide it.
  auto canon = std::make_shared<Canonizer>();
  canon->partner = identity_permutation(n);
  std::vector<char> in_block(n, 0);
  auto c_ref = scenario_.find("c");
  std::vector<std::optional<VarRef>> cond = {scenario_.find("a1"), scenario_.find("a2"), scenario_.find("x1"),
                                             scenario_.find("x2")};
  bool have = c_ref && c_ref->kind == VarKind::Outcome && scenario_.cardinality(*c_ref) == 2;
  for (const auto& c : cond) have = have && c && scenario_.cardinality(*c) == 2;
  if (have) {
    std::vector<int> a(2 * scenario_.party_count());
    for (int cell = 0; cell < 16; ++cell) {
      Permutation flip = identity_permutation(n);
      std::vector<std::uint32_t> pos;
      for (std::size_t i = 0; i < n; ++i) {
        scenario_.decode(i, a);
        bool match = true;
        for (int k = 0; k < 4; ++k) match = match && a[cond[k]->slot()] == ((cell >> k) & 1);
        if (!match) continue;
        a[c_ref->slot()] ^= 1;
        const std::size_t np = scenario_.party_count();
        flip[i] = static_cast<std::uint32_t>(
            scenario_.index(std::span<const int>(a.data(), np), std::span<const int>(a.data() + np, np)));
        pos.push_back(static_cast<std::uint32_t>(i));
      }
      if (!chain_->contains(flip)) continue;
      for (std::uint32_t i : pos) {
        canon->partner[i] = flip[i];
        in_block[i] = 1;
      }
      canon->positions.push_back(std::move(pos));
    }
    // Normality: each conjugate of a block flip is again a product of block flips.
    for (const auto& g : perms_) {
      const Permutation gi = inverse(g);
      for (const auto& pos : canon->positions) {
        Permutation flip = identity_permutation(n);
        for (std::uint32_t i : pos) flip[i] = canon->partner[i];
        Permutation conj = compose(g, compose(flip, gi));
        for (std::size_t i = 0; i < n; ++i)
          if (conj[i] != i && (!in_block[i] || conj[i] != canon->partner[i]))
            throw Error("conditional c flips do not form a normal subgroup of the group ");
      }
    }
  }

  // Left coset representatives of the flip subgroup by breadth-first search
  // over coset keys (each block coordinate only known up to its partner).
  auto key = [&](const Permutation& p) {
    std::vector<std::int64_t> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = in_block[i] ? std::min(p[i], p[canon->partner[i]]) : p[i];
    return k;
  };
  Integer expected = chain_->order();
  for (std::size_t b = 0; b < canon->positions.size(); ++b) expected /= 2;
  if (expected > Integer(static_cast<unsigned long>(element_budget))) {
    canonizer_ = canon;  // canonical_form will refuse
    return;
  }
  std::unordered_set<std::vector<std::int64_t>, VecHash> seen;
  canon->transversal.push_back(identity_permutation(n));
  seen.insert(key(canon->transversal.front()));
  for (std::size_t head = 0; head < canon->transversal.size(); ++head)
    for (const auto& g : perms_) {
      Permutation p = compose(g, canon->transversal[head]);
      if (seen.insert(key(p)).second) canon->transversal.push_back(std::move(p));
    }
  if (Integer(static_cast<unsigned long>(canon->transversal.size())) != expected)
    throw Error("coset enumeration does not match the group order");
  canonizer_ = canon;
}

Integer SymmetryGroup::order() const { return chain_->order(); }

bool SymmetryGroup::contains(const Permutation& p) const {
  if (p.size() != scenario_.size()) return false;
  return chain_->contains(p);
}

std::size_t SymmetryGroup::transversal_size() const { return canonizer_->transversal.size(); }
std::size_t SymmetryGroup::flip_blocks() const { return canonizer_->positions.size(); }

RationalVector SymmetryGroup::canonical_form(std::span<const Rational> v) const {
  if (v.size() != scenario_.size()) throw ScenarioError("vector does not match the group's scenario");
  if (canonizer_->transversal.empty())
    throw BudgetExceeded("group too large for canonical forms; compare orbits instead");
  const auto& c = *canonizer_;
  if (auto form = integer_form(v)) {
    auto best = canonical_impl(form->first, c.positions, c.partner, c.transversal);
    return from_integer_form(best, form->second);
  }
  return canonical_impl(RationalVector(v.begin(), v.end()), c.positions, c.partner, c.transversal);
}

namespace {

template <typename Visit>
void orbit_walk(const std::vector<Permutation>& gens, std::span<const Rational> v, std::size_t limit, Visit visit) {
  std::vector<std::int64_t> start;
  Integer den;
  if (auto form = integer_form(v)) {
    start = std::move(form->first);
    den = std::move(form->second);
  } else {
    throw PreconditionError("orbit: entries too large for the integer orbit representation");
  }
  std::unordered_set<std::vector<std::int64_t>, VecHash> seen{start};
  std::deque<std::vector<std::int64_t>> queue{start};
  visit(start, den);
  std::vector<std::int64_t> w(start.size());
  while (!queue.empty()) {
    std::vector<std::int64_t> cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      for (std::size_t i = 0; i < cur.size(); ++i) w[g[i]] = cur[i];
      if (seen.count(w)) continue;
      if (seen.size() >= limit) throw BudgetExceeded("orbit exceeds " + std::to_string(limit) + " points");
      seen.insert(w);
      visit(w, den);
      queue.push_back(w);
    }
  }
}

}  // namespace

std::vector<RationalVector> SymmetryGroup::orbit(std::span<const Rational> v, std::size_t limit) const {
  if (v.size() != scenario_.size()) throw ScenarioError("vector does not match the group's scenario");
  std::vector<RationalVector> out;
  orbit_walk(perms_, v, limit,
             [&](const std::vector<std::int64_t>& w, const Integer& d) { out.push_back(from_integer_form(w, d)); });
  return out;
}

std::size_t SymmetryGroup::orbit_size(std::span<const Rational> v, std::size_t limit) const {
  if (v.size() != scenario_.size()) throw ScenarioError("vector does not match the group's scenario");
  const auto& c = *canonizer_;
  auto form = integer_form(v);
  if (c.transversal.empty() || !form) {
    std::size_t count = 0;
    orbit_walk(perms_, v, limit, [&](const std::vector<std::int64_t>&, const Integer&) { ++count; });
    return count;
  }
  // The orbit splits into flip-subgroup orbits of equal size, one per
  // distinct block-minimized transversal image.
  const auto& x = form->first;
  std::unordered_set<std::vector<std::int64_t>, VecHash> images;
  std::vector<std::int64_t> w(x.size());
  for (const auto& t : c.transversal) {
    for (std::size_t i = 0; i < x.size(); ++i) w[t[i]] = x[i];
    block_minimize(w, c.positions, c.partner);
    images.insert(w);
  }
  std::size_t moved = 0;
  for (const auto& pos : c.positions)
    if (std::any_of(pos.begin(), pos.end(), [&](std::uint32_t i) { return x[i] != x[c.partner[i]]; })) ++moved;
  return images.size() << moved;
}

std::vector<Relabelling> lc_generators() {
  std::vector<Relabelling> out;
  for (const char* text : {"x1 -> x1 ^ 1", "a1 -> a1 ^ x1", "x2 -> x2 ^ 1", "a2 -> a2 ^ x2", "c -> c ^ a1&a2&x1&x2",
                           "y -> y ^ 1", "b -> b ^ y", "(a1, a2, x1, x2) -> (a2, a1, x2, x1)"})
    out.push_back(Relabelling::parse(text));
  return out;
}

const SymmetryGroup& lc_symmetry_group() {
  static const SymmetryGroup group(Scenario::four_party(Variant::WithoutZ), lc_generators());
  return group;
}

}  // namespace lcs
