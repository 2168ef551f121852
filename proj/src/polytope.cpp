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

#include "lcswitch/polytope.hpp"

#include <map>

#include "lcswitch/errors.hpp"
#include "lcswitch/linalg.hpp"

namespace lcs {

namespace {

// Equalities of one independence relation, in the homogeneous form
// marginal(o | s) - marginal(o | s with the varied settings zeroed) = 0.
std::vector<SparseRow> relation_rows(const Scenario& sc, const IndependenceRelation& rel) {
  const std::size_t n = sc.party_count();
  std::vector<std::size_t> out_parties;
  for (const auto& name : rel.outcomes) {
    VarRef r = sc.require(name);
    if (r.kind != VarKind::Outcome) throw ScenarioError("'" + name + "' is not an outcome variable");
    out_parties.push_back(r.party);
  }
  std::vector<char> varied(n, 0);
  for (const auto& name : rel.settings) {
    VarRef r = sc.require(name);
    if (r.kind != VarKind::Setting) throw ScenarioError("'" + name + "' is not a setting variable");
    varied[r.party] = 1;
  }
  std::size_t marg = 1;
  for (std::size_t p : out_parties) marg *= static_cast<std::size_t>(sc.parties()[p].outcomes);
  const std::size_t no = sc.outcome_tuples();
  std::vector<std::size_t> key(no);
  std::vector<int> o(n), s(n);
  for (std::size_t oi = 0; oi < no; ++oi) {
    sc.decode_outcomes(oi, o);
    std::size_t k = 0, stride = 1;
    for (std::size_t p : out_parties) {
      k += static_cast<std::size_t>(o[p]) * stride;
      stride *= static_cast<std::size_t>(sc.parties()[p].outcomes);
    }
    key[oi] = k;
  }
  std::vector<SparseRow> rows;
  for (std::size_t si = 0; si < sc.setting_tuples(); ++si) {
    sc.decode_settings(si, s);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i)
      if (varied[i] && s[i] != 0) {
        any = true;
        s[i] = 0;
      }
    if (!any) continue;
    std::size_t ref = sc.setting_index(s);
    for (std::size_t k = 0; k < marg; ++k) {
      SparseRow row;
      for (std::size_t oi = 0; oi < no; ++oi)
        if (key[oi] == k) row.emplace_back(oi + no * si, Rational(1));
      for (std::size_t oi = 0; oi < no; ++oi)
        if (key[oi] == k) row.emplace_back(oi + no * ref, Rational(-1));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

SparseRow column_sum(const Scenario& sc, std::size_t si, const Rational& coeff) {
  SparseRow row;
  const std::size_t no = sc.outcome_tuples();
  for (std::size_t oi = 0; oi < no; ++oi) row.emplace_back(oi + no * si, coeff);
  return row;
}

}  // namespace

HPolytope polytope_from_relations(std::string name, Scenario sc, std::vector<IndependenceRelation> relations) {
  std::vector<SparseRow> candidates;
  for (const auto& rel : relations) {
    auto rows = relation_rows(sc, rel);
    for (auto& r : rows) candidates.push_back(std::move(r));
  }
  SparseRow base = column_sum(sc, 0, Rational(1));
  for (std::size_t si = 1; si < sc.setting_tuples(); ++si) {
    SparseRow row = column_sum(sc, si, Rational(1));
    for (const auto& [j, v] : base) row.emplace_back(j, Rational(-v));
    candidates.push_back(std::move(row));
  }
  RowBasis basis(sc.size());
  // The mass row goes first so that no cone row duplicates it.
  basis.add(base);
  std::vector<SparseRow> independent;
  for (auto& row : candidates)
    if (basis.add(row)) independent.push_back(std::move(row));
  return HPolytope{std::move(name), std::move(sc), std::move(relations), std::move(independent), std::move(base)};
}

LinearProgram HPolytope::program() const {
  LinearProgram lp;
  lp.num_vars = coordinates();
  for (const auto& r : cone_rows) lp.add_row(r, Rational(0));
  lp.add_row(mass_row, Rational(1));
  return lp;
}

bool HPolytope::contains(const ExactCorrelation& corr) const {
  if (!(corr.scenario() == scenario)) throw ScenarioError("polytope and correlation scenarios differ");
  if (!validate(corr).ok()) return false;
  for (const auto& rel : relations)
    if (!check_independence(corr, rel)) return false;
  return true;
}

std::vector<IndependenceRelation> defining_relations(std::string_view name, Variant variant) {
  const bool z = variant == Variant::WithZ;
  std::vector<IndependenceRelation> ns = {{{"a1", "a2", "c"}, {"y"}},
                                          z ? IndependenceRelation{{"b"}, {"x1", "x2", "z"}}
                                            : IndependenceRelation{{"b"}, {"x1", "x2"}}};
  if (name == "NS") return ns;
  if (name == "LC1" || name == "LC2") {
    auto rels = ns;
    rels.push_back(name == "LC1" ? IndependenceRelation{{"a1", "b"}, {"x2"}} : IndependenceRelation{{"a2", "b"}, {"x1"}});
    if (z) rels.push_back({{"a1", "a2", "b"}, {"z"}});
    return rels;
  }
  if (name == "C1") return {{{"a1"}, {"x2"}}};
  if (name == "C2") return {{{"a2"}, {"x1"}}};
  throw Error("unknown polytope '" + std::string(name) + "' (expected NS, LC1, LC2, C1 or C2)");
}

HPolytope build(std::string_view name, Variant variant) {
  auto rels = defining_relations(name, variant);
  Scenario sc = (name == "C1" || name == "C2") ? Scenario::alice_pair() : Scenario::four_party(variant);
  std::string full = std::string(name);
  if (sc.variant()) full += " (" + std::string(to_string(variant)) + ")";
  return polytope_from_relations(std::move(full), std::move(sc), std::move(rels));
}

std::pair<HPolytope, HPolytope> build_lc_pair(Variant variant) {
  return {build("LC1", variant), build("LC2", variant)};
}

std::pair<HPolytope, HPolytope> build_causal_pair() { return {build("C1", Variant::WithZ), build("C2", Variant::WithZ)}; }

LPResult lp_maximize(const HPolytope& poly, const LinearFunctional& f) {
  if (!(f.scenario == poly.scenario)) throw ScenarioError("functional and polytope scenarios differ");
  LinearProgram lp = poly.program();
  LPResult r = solve_lp(lp, f.coefficients);
  if (r.status == LPStatus::Infeasible) throw Error("polytope " + poly.name + " is empty");
  if (r.status != LPStatus::Optimal) throw Error("unexpected " + to_string(r.status) + " LP over " + poly.name);
  if (auto e = verify_certificate(lp, f.coefficients, r); !e.empty())
    throw Error("LP certificate over " + poly.name + " failed: " + e);
  r.optimum += f.offset;
  return r;
}

ValidTight check_valid_tight(const InequalityRecord& rec) {
  auto [lc1, lc2] = build_lc_pair(rec.variant);
  LPResult r1 = lp_maximize(lc1, rec.lhs);
  LPResult r2 = lp_maximize(lc2, rec.lhs);
  ValidTight out;
  out.max_branch1 = r1.optimum;
  out.max_branch2 = r2.optimum;
  out.valid = r1.optimum <= rec.bound && r2.optimum <= rec.bound;
  if (out.valid) {
    if (r1.optimum == rec.bound) {
      out.tight = true;
      out.witness = ExactCorrelation(lc1.scenario, r1.primal);
    } else if (r2.optimum == rec.bound) {
      out.tight = true;
      out.witness = ExactCorrelation(lc2.scenario, r2.primal);
    }
  }
  return out;
}

namespace {

Rational mass(const HPolytope& poly, const RationalVector& q, std::size_t offset) {
  Rational m;
  for (const auto& [j, v] : poly.mass_row) m += v * q[offset + j];
  return m;
}

ExactCorrelation normalized_branch(const HPolytope& poly, const RationalVector& x, std::size_t offset,
                                   const Rational& weight) {
  const std::size_t n = poly.coordinates();
  if (sgn(weight) == 0) return ExactCorrelation::uniform(poly.scenario);
  RationalVector e(n);
  for (std::size_t k = 0; k < n; ++k) e[k] = x[offset + k] / weight;
  return ExactCorrelation(poly.scenario, std::move(e));
}

// Variables: q1 (branch-1 table), w (branch-2 table), s (white-noise weight)
// and, with a tolerance, e+ / e- (l1 ball around the point) and a slack.
// q2 = p + s u - q1 (+ e+ - e-) is substituted into the branch-2 equalities,
// so w is a slack column of the coupling rows and phase one only has to
// repair the equality rows.
MembershipResult solve_union(const HPolytope& p1, const HPolytope& p2, const RationalVector& point,
                             std::optional<Rational> delta) {
  const Scenario& sc = p1.scenario;
  const std::size_t n = sc.size();
  const Rational u = Rational(1) / Rational(static_cast<long>(sc.outcome_tuples()));
  const std::size_t w_col = n, s_col = 2 * n;
  const std::size_t ep = 2 * n + 1, em = 3 * n + 1, slack = 4 * n + 1;
  LinearProgram lp;
  lp.num_vars = delta ? 4 * n + 2 : 2 * n + 1;
  for (std::size_t k = 0; k < n; ++k) {
    SparseRow row = {{k, Rational(1)}, {w_col + k, Rational(1)}, {s_col, Rational(-u)}};
    if (delta) {
      row.emplace_back(ep + k, Rational(-1));
      row.emplace_back(em + k, Rational(1));
    }
    lp.add_row(std::move(row), point[k]);
  }
  for (const auto& r : p1.cone_rows) lp.add_row(r, Rational(0));
  const std::size_t r2_begin = lp.rows.size();
  for (const auto& r : p2.cone_rows) {
    SparseRow row;
    Rational ru, rp;
    for (const auto& [j, v] : r) {
      row.emplace_back(j, Rational(-v));
      ru += v * u;
      rp += v * point[j];
    }
    if (sgn(ru) != 0) row.emplace_back(s_col, ru);
    if (delta)
      for (const auto& [j, v] : r) {
        row.emplace_back(ep + j, v);
        row.emplace_back(em + j, Rational(-v));
      }
    lp.add_row(std::move(row), Rational(-rp));
  }
  if (delta) {
    SparseRow ball;
    for (std::size_t k = 0; k < 2 * n; ++k) ball.emplace_back(ep + k, Rational(1));
    ball.emplace_back(slack, Rational(1));
    lp.add_row(std::move(ball), *delta);
  }
  RationalVector objective(lp.num_vars);
  objective[s_col] = -1;

  MembershipResult out;
  LPResult res = solve_lp(lp, objective);
  out.certified = verify_certificate(lp, objective, res).empty();
  if (!out.certified) throw Error("membership LP certificate failed to verify");

  // The right-hand side is M p + const; the separating functional is -M^T y.
  RationalVector coeffs(n);
  for (std::size_t k = 0; k < n; ++k) coeffs[k] = -res.dual[k];
  for (std::size_t i = 0; i < p2.cone_rows.size(); ++i) {
    const Rational& g = res.dual[r2_begin + i];
    if (sgn(g) == 0) continue;
    for (const auto& [j, v] : p2.cone_rows[i]) coeffs[j] += g * v;
  }
  Rational margin;
  for (std::size_t i = 0; i < lp.rhs.size(); ++i) margin -= res.dual[i] * lp.rhs[i];

  if (res.status == LPStatus::Infeasible) {
    out.violation = Separation{LinearFunctional(sc, std::move(coeffs)), std::move(margin), true};
    return out;
  }
  out.robustness = -res.optimum;
  if (sgn(out.robustness) > 0) {
    out.violation = Separation{LinearFunctional(sc, std::move(coeffs)), std::move(margin), false};
    return out;
  }
  out.member = true;
  Rational lambda1 = mass(p1, res.primal, 0);
  Rational lambda2 = mass(p2, res.primal, w_col);
  Rational total = lambda1 + lambda2;
  Rational mu = sgn(total) == 0 ? Rational(1) : Rational(lambda1 / total);
  out.model = HiddenVariableModel{mu, normalized_branch(p1, res.primal, 0, lambda1),
                                  normalized_branch(p2, res.primal, w_col, lambda2)};
  return out;
}

MembershipResult single_branch(const HPolytope& p1, const HPolytope& p2, const ExactCorrelation& corr, bool first) {
  MembershipResult out;
  out.member = true;
  out.certified = true;
  out.single_branch = true;
  ExactCorrelation other = ExactCorrelation::uniform((first ? p2 : p1).scenario);
  out.model = first ? HiddenVariableModel{Rational(1), corr, other} : HiddenVariableModel{Rational(0), other, corr};
  return out;
}

}  // namespace

MembershipResult union_membership(const HPolytope& p1, const HPolytope& p2, const ExactCorrelation& corr) {
  if (!(corr.scenario() == p1.scenario) || !(corr.scenario() == p2.scenario))
    throw ScenarioError("membership: correlation and polytope scenarios differ");
  if (p1.contains(corr)) return single_branch(p1, p2, corr, true);
  if (p2.contains(corr)) return single_branch(p1, p2, corr, false);
  RationalVector point(corr.entries().begin(), corr.entries().end());
  return solve_union(p1, p2, point, std::nullopt);
}

MembershipResult union_membership(const HPolytope& p1, const HPolytope& p2, const FloatCorrelation& corr,
                                  const MembershipOptions& options) {
  if (!options.tolerance) throw PreconditionError("membership of a floating correlation needs a tolerance");
  if (!(*options.tolerance >= 0)) throw PreconditionError("membership tolerance must be nonnegative");
  if (!(corr.scenario() == p1.scenario) || !(corr.scenario() == p2.scenario))
    throw ScenarioError("membership: correlation and polytope scenarios differ");
  ExactCorrelation rounded = to_exact(corr, options.max_denominator);
  RationalVector point(rounded.entries().begin(), rounded.entries().end());
  return solve_union(p1, p2, point, approximate(*options.tolerance, options.max_denominator));
}

MembershipResult membership(const ExactCorrelation& corr) {
  auto v = corr.scenario().variant();
  if (!v) throw ScenarioError("LC membership needs a four-party correlation");
  auto [lc1, lc2] = build_lc_pair(*v);
  return union_membership(lc1, lc2, corr);
}

MembershipResult membership(const FloatCorrelation& corr, const MembershipOptions& options) {
  auto v = corr.scenario().variant();
  if (!v) throw ScenarioError("LC membership needs a four-party correlation");
  auto [lc1, lc2] = build_lc_pair(*v);
  return union_membership(lc1, lc2, corr, options);
}

const std::vector<ExactCorrelation>& bipartite_ns_vertices() {
  static const std::vector<ExactCorrelation> vertices = [] {
    Scenario sc = Scenario::bob_charlie();
    std::vector<ExactCorrelation> out;
    // Deterministic: b = f(y), c = g(z) with f, g among the four maps on a bit.
    for (int f = 0; f < 4; ++f)
      for (int g = 0; g < 4; ++g)
        out.push_back(ExactCorrelation::deterministic(sc, [f, g](std::span<const int> s, std::span<int> o) {
          o[0] = (f >> s[0]) & 1;
          o[1] = (g >> s[1]) & 1;
        }));
    // PR boxes: b ^ c = yz ^ alpha y ^ beta z ^ gamma, uniform marginals.
    for (int code = 0; code < 8; ++code) {
      int alpha = code & 1, beta = (code >> 1) & 1, gamma = (code >> 2) & 1;
      RationalVector e(sc.size());
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
          for (int b = 0; b < 2; ++b) {
            int c = b ^ (y & z) ^ (alpha & y) ^ (beta & z) ^ gamma;
            int o[2] = {b, c}, st[2] = {y, z};
            e[sc.index(o, st)] = Rational(1, 2);
          }
      out.emplace_back(sc, std::move(e));
    }
    return out;
  }();
  return vertices;
}

NSDecomposition ns_decompose(const ExactCorrelation& corr) {
  const Scenario sc = Scenario::bob_charlie();
  if (!(corr.scenario() == sc)) throw ScenarioError("ns_decompose expects a correlation p(bc|yz)");
  if (!validate(corr).ok()) throw PreconditionError("ns_decompose: invalid correlation");
  for (const IndependenceRelation& rel : {IndependenceRelation{{"b"}, {"z"}}, IndependenceRelation{{"c"}, {"y"}}}) {
    auto chk = check_independence_detailed(corr, rel);
    if (!chk.holds) throw PreconditionError("ns_decompose: correlation signals, " + chk.witness);
  }
  const auto& verts = bipartite_ns_vertices();
  LinearProgram lp;
  lp.num_vars = verts.size();
  for (std::size_t k = 0; k < sc.size(); ++k) {
    SparseRow row;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (sgn(verts[v][k]) != 0) row.emplace_back(v, verts[v][k]);
    lp.add_row(std::move(row), corr[k]);
  }
  RationalVector objective(verts.size());
  for (std::size_t v = 0; v < 16; ++v) objective[v] = 1;
  LPResult r = solve_lp(lp, objective);
  if (r.status != LPStatus::Optimal) throw PreconditionError("ns_decompose: correlation is not nonsignalling");
  if (auto e = verify_certificate(lp, objective, r); !e.empty()) throw Error("ns_decompose certificate: " + e);
  return {r.primal, r.optimum};
}

}  // namespace lcs
