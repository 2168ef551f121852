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

#include "lcswitch/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>

#include "lcswitch/causal.hpp"
#include "lcswitch/errors.hpp"
#include "lcswitch/quantum.hpp"

namespace lcs {

bool ReproduceReport::criterion_passed(int criterion) const {
  for (const auto& r : rows)
    if (r.criterion == criterion && r.status == RowStatus::Fail) return false;
  return true;
}

bool ReproduceReport::passed() const {
  for (const auto& r : rows)
    if (r.status == RowStatus::Fail) return false;
  return true;
}

std::string ReproduceReport::table() const {
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  std::string out = pad("#", 4) + pad("quantity", 48) + pad("reference", 22) + pad("computed", 22) + "status\n";
  int max_criterion = 0;
  for (const auto& r : rows) {
    const char* st = r.status == RowStatus::Pass ? "ok" : r.status == RowStatus::Fail ? "FAIL" : "skipped";
    out += pad(std::to_string(r.criterion), 4) + pad(r.quantity, 48) + pad(r.reference, 22) + pad(r.computed, 22) +
           st + "\n";
    max_criterion = std::max(max_criterion, r.criterion);
  }
  int passed_count = 0;
  for (int c = 1; c <= max_criterion; ++c) passed_count += criterion_passed(c);
  out += "criteria passed: " + std::to_string(passed_count) + "/" + std::to_string(max_criterion) + "\n";
  return out;
}

namespace {

std::string fixed(double x, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

class Rows {
 public:
  explicit Rows(ReproduceReport& rep) : rep_(rep) {}

  void add(int c, std::string quantity, std::string reference, std::string computed, bool pass) {
    rep_.rows.push_back({c, std::move(quantity), std::move(reference), std::move(computed),
                         pass ? RowStatus::Pass : RowStatus::Fail});
  }
  void skip(int c, std::string quantity, std::string reference, std::string why) {
    rep_.rows.push_back({c, std::move(quantity), std::move(reference), std::move(why), RowStatus::Skipped});
  }

 private:
  ReproduceReport& rep_;
};

// Every step of a criterion may throw; the criterion then fails with the
// message instead of aborting the run.
template <class F>
void guarded(Rows& rows, int c, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rows.add(c, "error", "-", e.what(), false);
  }
}

ExactCorrelation table_from(const Scenario& sc, const std::function<Rational(std::span<const int>)>& f) {
  std::vector<Rational> e(sc.size());
  std::vector<int> assign(2 * sc.party_count());
  for (std::size_t i = 0; i < sc.size(); ++i) {
    sc.decode(i, assign);
    e[i] = f(assign);
  }
  return ExactCorrelation(sc, std::move(e));
}

// Assignment layout: a1 a2 b c x1 x2 y z.
ExactCorrelation deterministic_saturating() {
  return table_from(Scenario::four_party(Variant::WithZ), [](std::span<const int> v) {
    return Rational(v[0] == 0 && v[1] == v[4] && v[2] == 0 && v[3] == 0 ? 1 : 0);
  });
}

ExactCorrelation pr_saturating() {
  return table_from(Scenario::four_party(Variant::WithZ), [](std::span<const int> v) {
    if (v[0] != 0 || v[1] != v[4]) return Rational(0);
    return ((v[2] ^ v[3]) == (v[6] & v[7])) ? Rational(1, 2) : Rational(0);
  });
}

RationalVector random_objective(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-10, 10);
  RationalVector c(n);
  for (auto& x : c) x = d(rng);
  return c;
}

RationalVector lp_vertex(const HPolytope& poly, std::mt19937_64& rng) {
  return lp_maximize(poly, LinearFunctional(poly.scenario, random_objective(rng, poly.coordinates()))).primal;
}

// Convex combination of 2 to 4 LP vertices drawn from both branches.
RationalVector random_lc_point(const HPolytope& lc1, const HPolytope& lc2, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(2, 4), weight(1, 9);
  const int k = count(rng);
  std::vector<int> w(static_cast<std::size_t>(k));
  for (auto& x : w) x = weight(rng);
  const int total = std::accumulate(w.begin(), w.end(), 0);
  RationalVector out(lc1.coordinates());
  for (int j = 0; j < k; ++j) {
    RationalVector v = lp_vertex(j % 2 == 0 ? lc1 : lc2, rng);
    const Rational t = ratio(w[static_cast<std::size_t>(j)], total);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t * v[i];
  }
  return out;
}

void criterion_1(Rows& rows) {
  const InequalityRecord rec = builtin("main", Variant::WithZ);
  ValidTight vt = check_valid_tight(rec);
  rows.add(1, "max main over LC1 (with z)", "7/4", to_string(vt.max_branch1), vt.max_branch1 == Rational(7, 4));
  rows.add(1, "max main over LC2 (with z)", "7/4", to_string(vt.max_branch2), vt.max_branch2 == Rational(7, 4));
  bool model_ok = false;
  if (vt.witness) {
    MembershipResult m = membership(*vt.witness);
    model_ok = m.member && m.model && verify_model(*vt.witness, *m.model).ok() &&
               evaluate(rec, *vt.witness).value == rec.bound;
  }
  rows.add(1, "tight witness with verified model", "true", yes_no(model_ok), model_ok);
}

void criterion_2(Rows& rows) {
  const SwitchSetup setup = SwitchSetup::defaults();
  const double value = inequality_value(setup, builtin("main"));
  const double ref = 1.5 + std::numbers::sqrt2 / 4;
  rows.add(2, "main at the default switch setup", fixed(ref), fixed(value), std::abs(value - ref) <= 1e-9);
  MembershipResult m = membership(correlation(setup), MembershipOptions{1e-9});
  const bool separated = !m.member && m.violation && m.certified && m.violation->margin > 0;
  rows.add(2, "non-member with separating functional", "true", yes_no(separated), separated);
}

void criterion_3(Rows& rows) {
  const double ceiling = 1.5 + std::numbers::sqrt2 / 4;
  OptimizeResult r = optimize_angles(builtin("main"), SwitchSetup::defaults());
  rows.add(3, "grid maximum of main (step pi/60)", "<= " + fixed(ceiling + 1e-6), fixed(r.grid_value),
           r.grid_value <= ceiling + 1e-6);
  rows.add(3, "refined maximum of main", "<= " + fixed(ceiling + 1e-6), fixed(r.value), r.value <= ceiling + 1e-6);
}

void criterion_4(Rows& rows) {
  SwitchSetup start;
  start.postprocess = CharliePostprocess::Relabel;
  OptimizeResult r = optimize_angles(builtin("i"), start);
  rows.add(4, "optimum of (i) with Charlie relabel", "1.8274 +- 0.001", fixed(r.value, 6),
           std::abs(r.value - 1.8274) <= 1e-3);
}

void criterion_5(Rows& rows) {
  const InequalityRecord rec = builtin("main", Variant::WithZ);
  for (const auto& [label, p] : {std::pair{"deterministic example", deterministic_saturating()},
                                 std::pair{"PR-box example", pr_saturating()}}) {
    const Rational v = evaluate(rec, p).value;
    rows.add(5, std::string("main on the ") + label, "7/4", to_string(v), v == Rational(7, 4));
    const MembershipResult m = membership(p);
    rows.add(5, std::string(label) + " in LC", "true", yes_no(m.member && m.certified), m.member && m.certified);
  }
}

// p(b xor c = y z) averaged over y z, and p(b = 0 | y = 0), on p(bc|yz).
std::pair<Rational, Rational> parity_terms(const ExactCorrelation& p) {
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

void criterion_6(Rows& rows, std::uint64_t seed, std::size_t samples) {
  std::mt19937_64 rng(seed ^ 0x6c656d6d61ULL);
  const auto& verts = bipartite_ns_vertices();
  std::uniform_int_distribution<int> weight(0, 12), support(1, static_cast<int>(verts.size()));
  std::size_t bound_ok = 0, round_trip = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<int> w(verts.size(), 0);
    const int k = support(rng);
    for (int j = 0; j < k; ++j) w[rng() % verts.size()] += weight(rng) + 1;
    const int total = std::accumulate(w.begin(), w.end(), 0);
    std::vector<Rational> e(verts[0].size());
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (w[v])
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += ratio(w[v], total) * verts[v][i];
    const ExactCorrelation p(verts[0].scenario(), std::move(e));
    auto [win, b0] = parity_terms(p);
    if (win <= Rational(5, 4) - b0 / 2) ++bound_ok;
    NSDecomposition d = ns_decompose(p);
    std::vector<Rational> back(p.size());
    Rational sum;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      sum += d.weights[v];
      for (std::size_t i = 0; i < back.size(); ++i) back[i] += d.weights[v] * verts[v][i];
    }
    bool ok = sum == 1 && back == std::vector<Rational>(p.entries().begin(), p.entries().end());
    for (const auto& w : d.weights) ok = ok && w >= 0;
    round_trip += ok;
  }
  const std::string n = std::to_string(samples);
  rows.add(6, "parity bound on random NS mixtures", n + "/" + n, std::to_string(bound_ok) + "/" + n,
           bound_ok == samples);
  rows.add(6, "24-vertex decomposition round trips", n + "/" + n, std::to_string(round_trip) + "/" + n,
           round_trip == samples);
}

void criterion_7(Rows& rows, std::uint64_t seed, std::size_t samples) {
  std::mt19937_64 rng(seed ^ 0x617070656e64ULL);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  const std::array<std::string, 4> names{"iv", "v", "vi", "vii"};
  std::vector<InequalityRecord> recs;
  for (const auto& n : names) recs.push_back(builtin(n));
  std::size_t causal = 0;
  std::array<std::size_t, 4> respected{};
  std::array<double, 4> worst{-1e300, -1e300, -1e300, -1e300};
  for (std::size_t s = 0; s < samples; ++s) {
    SwitchSetup setup;
    for (auto& d : setup.bob) d.theta = angle(rng);
    for (auto& d : setup.charlie) d.theta = angle(rng);
    MarginalCausalResult mc = marginal_causal_check(correlation(setup), MembershipOptions{1e-9});
    causal += mc.marginal_ok && mc.alice_marginal_causal;
    for (std::size_t k = 0; k < recs.size(); ++k) {
      const double v = inequality_value(setup, recs[k]);
      const double excess = v - to_double(recs[k].bound);
      worst[k] = std::max(worst[k], excess);
      respected[k] += excess <= kViolationTolerance;
    }
  }
  const std::string n = std::to_string(samples);
  rows.add(7, "Alice marginal causal", n + "/" + n, std::to_string(causal) + "/" + n, causal == samples);
  for (std::size_t k = 0; k < recs.size(); ++k)
    rows.add(7, "(" + names[k] + ") not violated, max excess " + fixed(worst[k], 6), n + "/" + n,
             std::to_string(respected[k]) + "/" + n, respected[k] == samples);
}

// Orbit label (smallest member) of every coordinate under the generators.
std::vector<std::size_t> coordinate_orbits(const SymmetryGroup& g) {
  std::vector<std::size_t> parent(g.scenario().size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& p : g.permutations())
    for (std::size_t i = 0; i < parent.size(); ++i) {
      const std::size_t a = find(i), b = find(p[i]);
      parent[std::max(a, b)] = std::min(a, b);
    }
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = find(i);
  return parent;
}

void criterion_8(Rows& rows) {
  auto [lc1, lc2] = build_lc_pair(Variant::WithoutZ);
  const long d1 = hull_dimension({&lc1}).dimension;
  rows.add(8, "dim LC1 (without z)", "80", std::to_string(d1), d1 == 80);

  // x_i >= 0 is a facet when its face has dimension d1 - 1. Symmetries of LC1
  // permute these faces, so one coordinate per orbit suffices.
  auto gens = lc_generators();
  gens.pop_back();
  const SymmetryGroup fixing(lc1.scenario, gens);
  const std::vector<std::size_t> orbit = coordinate_orbits(fixing);
  std::size_t facets = 0;
  for (std::size_t r = 0; r < orbit.size(); ++r) {
    if (orbit[r] != r) continue;
    RationalVector e(lc1.coordinates());
    e[r] = 1;
    const LinearFunctional f(lc1.scenario, e);
    if (hull_dimension({&lc1}, &f, 0).dimension == d1 - 1)
      facets += static_cast<std::size_t>(std::count(orbit.begin(), orbit.end(), r));
  }
  rows.add(8, "nonnegativity facets of LC1", "128", std::to_string(facets), facets == 128);
  const long d = hull_dimension({&lc1, &lc2}).dimension;
  rows.add(8, "dim LC (without z)", "86", std::to_string(d), d == 86);
}

const std::array<std::pair<const char*, long>, 7> kTableColumn{
    {{"i", 67}, {"ii", 73}, {"iii", 85}, {"iv", 83}, {"v", 85}, {"vi", 83}, {"vii", 85}}};

void criterion_9(Rows& rows, const ReproduceOptions& options) {
  LCReportOptions ro;
  ro.full = options.full_enumeration;
  ro.enumeration = options.enumeration;
  ro.seed = options.seed;
  LCVertexReport rep = lc_vertex_report(ro);
  rows.add(9, "deterministic vertex classes", "3", std::to_string(rep.deterministic_classes),
           rep.deterministic_classes == 3);
  rows.add(9, "vertex entries multiples of 1/2", "true", yes_no(rep.half_integral), rep.half_integral);
  if (rep.exhaustive) {
    rows.add(9, "vertices of LC (without z)", "9165312", std::to_string(rep.lc_vertices), rep.lc_vertices == 9165312);
    rows.add(9, "orbit classes of LC", "219", std::to_string(rep.lc_classes), rep.lc_classes == 219);
  } else {
    const char* why = options.full_enumeration ? "budget reached" : "not run (opt-in)";
    rows.skip(9, "vertices of LC (without z)", "9165312", why);
    rows.skip(9, "orbit classes of LC", "219", why);
    rows.add(9, "dimension spanned by sampled vertices", "86", std::to_string(rep.sample_dimension),
             rep.sample_dimension == 86);
    rows.add(9, "dim NS (upper bound for LC)", "86", std::to_string(rep.ns_dimension), rep.ns_dimension == 86);
  }
  for (const auto& [name, dim] : kTableColumn) {
    const InequalityRecord rec = builtin(name);
    long got;
    std::string label = std::string("face dimension of (") + name + ")";
    if (rep.exhaustive) {
      VertexSet vs{rec.lhs.scenario, {}, rep.lc_representatives, {}, true, ""};
      got = face_dimension(vs, rec, &lc_symmetry_group());
      label += " from vertices";
    } else {
      got = face_dimension_lp(rec).dimension;
      label += " by LP";
    }
    rows.add(9, label, std::to_string(dim), std::to_string(got), got == dim);
  }
}

void criterion_10(Rows& rows, std::uint64_t seed, std::size_t points) {
  std::mt19937_64 rng(seed ^ 0x6d656d62ULL);
  auto [lc1, lc2] = build_lc_pair(Variant::WithZ);
  const HPolytope ns = build("NS", Variant::WithZ);
  const InequalityRecord rec = builtin("main", Variant::WithZ);
  const Scenario sc = lc1.scenario;
  const std::size_t members = points / 2, outsiders = points - members;

  std::size_t accepted = 0;
  for (std::size_t k = 0; k < members; ++k) {
    const ExactCorrelation p(sc, random_lc_point(lc1, lc2, rng));
    MembershipResult m = membership(p);
    accepted += m.member && m.certified && m.model && verify_model(p, *m.model).ok();
  }

  std::size_t rejected = 0, farkas = 0;
  std::uniform_int_distribution<int> step(1, 16);
  for (std::size_t k = 0; k < outsiders; ++k) {
    // An NS vertex above the bound, mixed with an LC point so the value
    // stays above 7/4.
    RationalVector v;
    Rational fv;
    do {
      RationalVector c = random_objective(rng, sc.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + 64 * rec.lhs.coefficients[i];
      v = lp_maximize(ns, LinearFunctional(sc, c)).primal;
      fv = rec.lhs.dot(v);
    } while (!(fv > rec.bound));
    const RationalVector m = random_lc_point(lc1, lc2, rng);
    const Rational fm = rec.lhs.dot(m);
    const Rational t_min = fm >= rec.bound ? Rational(0) : Rational((rec.bound - fm) / (fv - fm));
    const Rational t = t_min + (1 - t_min) * ratio(step(rng), 16);
    RationalVector q(v.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = t * v[i] + (1 - t) * m[i];
    const ExactCorrelation p(sc, q);
    if (!(evaluate(rec, p).value > rec.bound)) continue;
    MembershipResult r = membership(p);
    bool ok = !r.member && r.certified && r.violation && r.violation->margin > 0 &&
              r.violation->functional(p) == r.violation->margin;
    if (ok) {
      ok = !(lp_maximize(lc1, r.violation->functional).optimum > 0) &&
           !(lp_maximize(lc2, r.violation->functional).optimum > 0);
      farkas += r.violation->farkas;
    }
    rejected += ok;
  }
  rows.add(10, "random LC mixtures accepted with models", std::to_string(members), std::to_string(accepted),
           accepted == members);
  rows.add(10, "NS points above 7/4 rejected (" + std::to_string(farkas) + " Farkas)", std::to_string(outsiders),
           std::to_string(rejected), rejected == outsiders);
}

}  // namespace

ReproduceReport reproduce(const ReproduceOptions& options) {
  ReproduceReport rep;
  Rows rows(rep);
  guarded(rows, 1, [&] { criterion_1(rows); });
  guarded(rows, 2, [&] { criterion_2(rows); });
  guarded(rows, 3, [&] { criterion_3(rows); });
  guarded(rows, 4, [&] { criterion_4(rows); });
  guarded(rows, 5, [&] { criterion_5(rows); });
  guarded(rows, 6, [&] { criterion_6(rows, options.seed, options.ns_samples); });
  guarded(rows, 7, [&] { criterion_7(rows, options.seed, options.angle_samples); });
  guarded(rows, 8, [&] { criterion_8(rows); });
  guarded(rows, 9, [&] { criterion_9(rows, options); });
  guarded(rows, 10, [&] { criterion_10(rows, options.seed, options.membership_points); });
  return rep;
}

}  // namespace lcs
