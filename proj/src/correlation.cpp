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

#include "lcswitch/correlation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lcs {

namespace {

std::string tuple_string(const Scenario& sc, std::span<const int> values, bool settings) {
  std::string out = "(";
  bool first = true;
  for (std::size_t i = 0; i < sc.party_count(); ++i) {
    const Party& p = sc.parties()[i];
    if (settings && p.settings == 1) continue;
    if (!first) out += ",";
    first = false;
    out += (settings ? p.setting_var : p.outcome_var) + "=" + std::to_string(values[i]);
  }
  return out + ")";
}

std::string setting_string(const Scenario& sc, std::size_t s) {
  std::vector<int> v(sc.party_count());
  sc.decode_settings(s, v);
  return tuple_string(sc, v, true);
}

}  // namespace

template <class T>
Correlation<T> Correlation<T>::from_records(const Scenario& scenario, std::span<const Record> records) {
  const std::size_t n = scenario.party_count();
  std::vector<T> entries(scenario.size(), T(0));
  std::vector<char> seen(scenario.size(), 0);
  for (const Record& r : records) {
    if (r.outcomes.size() != n || r.settings.size() != n)
      throw ScenarioError("record has the wrong number of outcomes or settings");
    for (std::size_t i = 0; i < n; ++i) {
      const Party& p = scenario.parties()[i];
      if (r.outcomes[i] < 0 || r.outcomes[i] >= p.outcomes || r.settings[i] < 0 || r.settings[i] >= p.settings)
        throw ScenarioError("record value out of range for party " + p.name);
    }
    std::size_t idx = scenario.index(r.outcomes, r.settings);
    if (seen[idx])
      throw ScenarioError("duplicate entry for outcomes " + tuple_string(scenario, r.outcomes, false) +
                          " at settings " + tuple_string(scenario, r.settings, true));
    seen[idx] = 1;
    entries[idx] = r.value;
  }
  for (std::size_t idx = 0; idx < seen.size(); ++idx) {
    if (seen[idx]) continue;
    std::vector<int> o(n), s(n);
    scenario.decode_outcomes(idx % scenario.outcome_tuples(), o);
    scenario.decode_settings(idx / scenario.outcome_tuples(), s);
    throw MissingEntryError("missing entry for outcomes " + tuple_string(scenario, o, false) + " at settings " +
                            tuple_string(scenario, s, true));
  }
  return Correlation(scenario, std::move(entries));
}

template <class T>
Correlation<T> Correlation<T>::uniform(const Scenario& scenario) {
  T v = T(1) / T(static_cast<long>(scenario.outcome_tuples()));
  return Correlation(scenario, std::vector<T>(scenario.size(), v));
}

template <class T>
Correlation<T> Correlation<T>::deterministic(const Scenario& scenario,
                                             const std::function<void(std::span<const int>, std::span<int>)>& rule) {
  const std::size_t n = scenario.party_count();
  std::vector<T> entries(scenario.size(), T(0));
  std::vector<int> s(n), o(n);
  for (std::size_t si = 0; si < scenario.setting_tuples(); ++si) {
    scenario.decode_settings(si, s);
    std::fill(o.begin(), o.end(), 0);
    rule(s, o);
    for (std::size_t i = 0; i < n; ++i)
      if (o[i] < 0 || o[i] >= scenario.parties()[i].outcomes)
        throw ScenarioError("deterministic rule produced an out-of-range outcome");
    entries[scenario.index(o, s)] = T(1);
  }
  return Correlation(scenario, std::move(entries));
}

template <class T>
Correlation<T> Correlation<T>::mixture(const T& weight, const Correlation& a, const Correlation& b) {
  if (!(a.scenario() == b.scenario())) throw ScenarioError("mixture of correlations over different scenarios");
  std::vector<T> entries(a.size());
  T rest = T(1) - weight;
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = weight * a[i] + rest * b[i];
  return Correlation(a.scenario(), std::move(entries));
}

FloatCorrelation to_float(const ExactCorrelation& corr) {
  std::vector<double> e(corr.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = corr[i].get_d();
  return FloatCorrelation(corr.scenario(), std::move(e));
}

ExactCorrelation to_exact(const FloatCorrelation& corr, const Integer& max_denominator) {
  std::vector<Rational> e(corr.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = approximate(corr[i], max_denominator);
  return ExactCorrelation(corr.scenario(), std::move(e));
}

template <class T>
ValidationReport validate(const Correlation<T>& corr, double tolerance) {
  ValidationReport report;
  const Scenario& sc = corr.scenario();
  const std::size_t no = sc.outcome_tuples();
  for (std::size_t s = 0; s < sc.setting_tuples(); ++s) {
    T sum = T(0);
    for (std::size_t o = 0; o < no; ++o) {
      const T& v = corr[o + no * s];
      bool in_range;
      if constexpr (Numeric<T>::exact) {
        in_range = v >= 0 && v <= 1;
      } else {
        in_range = v >= -tolerance && v <= 1 + tolerance;
      }
      if (!in_range) {
        std::ostringstream msg;
        msg << "entry " << (o + no * s) << " out of [0,1]: " << v;
        report.issues.push_back({ValidationIssue::Kind::Range, s, msg.str()});
      }
      sum += v;
    }
    if (!Numeric<T>::equal(sum, T(1), tolerance)) {
      std::ostringstream msg;
      msg << "column at settings " << setting_string(sc, s) << " sums to ";
      if constexpr (Numeric<T>::exact) {
        msg << to_string(sum);
      } else {
        msg << sum;
      }
      report.issues.push_back({ValidationIssue::Kind::Normalization, s, msg.str()});
    }
  }
  return report;
}

std::string IndependenceRelation::describe() const {
  std::string out;
  for (const auto& o : outcomes) out += o;
  out += " indep of ";
  for (const auto& s : settings) out += s;
  return out;
}

template <class T>
IndependenceCheck check_independence_detailed(const Correlation<T>& corr, const IndependenceRelation& rel,
                                              double tolerance) {
  const Scenario& sc = corr.scenario();
  const std::size_t n = sc.party_count();
  std::vector<std::size_t> out_parties, set_parties;
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

  // Marginal over the outcome subset: key = packed values of the subset.
  auto marginal_key = [&](std::span<const int> o) {
    std::size_t key = 0, stride = 1;
    for (std::size_t p : out_parties) {
      key += static_cast<std::size_t>(o[p]) * stride;
      stride *= static_cast<std::size_t>(sc.parties()[p].outcomes);
    }
    return key;
  };
  std::size_t marg_size = 1;
  for (std::size_t p : out_parties) marg_size *= static_cast<std::size_t>(sc.parties()[p].outcomes);

  const std::size_t no = sc.outcome_tuples();
  std::vector<std::size_t> keys(no);
  std::vector<int> o(n), s(n);
  for (std::size_t oi = 0; oi < no; ++oi) {
    sc.decode_outcomes(oi, o);
    keys[oi] = marginal_key(o);
  }

  // Group settings by the values of the non-varied settings; the first member
  // of each group is the reference column.
  std::map<std::vector<int>, std::pair<std::size_t, std::vector<T>>> ref;
  IndependenceCheck result;
  for (std::size_t si = 0; si < sc.setting_tuples(); ++si) {
    sc.decode_settings(si, s);
    std::vector<int> rest(n);
    for (std::size_t i = 0; i < n; ++i) rest[i] = varied[i] ? -1 : s[i];
    std::vector<T> m(marg_size, T(0));
    for (std::size_t oi = 0; oi < no; ++oi) m[keys[oi]] += corr[oi + no * si];
    auto it = ref.find(rest);
    if (it == ref.end()) {
      ref.emplace(std::move(rest), std::make_pair(si, std::move(m)));
      continue;
    }
    const auto& [ref_si, ref_m] = it->second;
    for (std::size_t k = 0; k < marg_size; ++k) {
      double dev = std::abs(Numeric<T>::as_double(m[k]) - Numeric<T>::as_double(ref_m[k]));
      result.max_deviation = std::max(result.max_deviation, dev);
      if (!Numeric<T>::equal(m[k], ref_m[k], tolerance) && result.holds) {
        result.holds = false;
        result.witness = rel.describe() + " fails between settings " + setting_string(sc, ref_si) + " and " +
                         setting_string(sc, si);
      }
    }
  }
  return result;
}

std::vector<std::size_t> consistent_settings(const Scenario& sc, std::span<const FixedSetting> fixed) {
  const std::size_t n = sc.party_count();
  std::vector<int> want(n, -1);
  for (const auto& f : fixed) {
    VarRef r = sc.require(f.variable);
    if (r.kind != VarKind::Setting) throw ScenarioError("'" + f.variable + "' is not a setting variable");
    if (f.value < 0 || f.value >= sc.cardinality(r))
      throw ScenarioError("value " + std::to_string(f.value) + " out of range for " + f.variable);
    if (want[r.party] != -1 && want[r.party] != f.value)
      throw ScenarioError("conflicting values fixed for " + f.variable);
    want[r.party] = f.value;
  }
  std::vector<std::size_t> out;
  std::vector<int> s(n);
  for (std::size_t si = 0; si < sc.setting_tuples(); ++si) {
    sc.decode_settings(si, s);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = want[i] < 0 || want[i] == s[i];
    if (ok) out.push_back(si);
  }
  return out;
}

template <class T>
T shorthand_probability(const Correlation<T>& corr, const Expr& event, std::span<const FixedSetting> fixed) {
  const Scenario& sc = corr.scenario();
  BoundExpr bound(event, sc);
  auto settings = consistent_settings(sc, fixed);
  const std::size_t n = sc.party_count();
  const std::size_t no = sc.outcome_tuples();
  std::vector<int> assignment(2 * n);
  T total = T(0);
  for (std::size_t si : settings) {
    sc.decode_settings(si, std::span<int>(assignment).subspan(n, n));
    for (std::size_t oi = 0; oi < no; ++oi) {
      sc.decode_outcomes(oi, std::span<int>(assignment).subspan(0, n));
      if (bound.holds(assignment)) total += corr[oi + no * si];
    }
  }
  return total / T(static_cast<long>(settings.size()));
}

template <class T>
Correlation<T> marginal(const Correlation<T>& corr, std::span<const std::size_t> kept_parties, double tolerance) {
  const Scenario& sc = corr.scenario();
  const std::size_t n = sc.party_count();
  std::vector<char> kept(n, 0);
  std::vector<Party> parties;
  for (std::size_t p : kept_parties) {
    if (p >= n || kept[p]) throw ScenarioError("invalid party list for marginal");
    kept[p] = 1;
    parties.push_back(sc.parties()[p]);
  }
  IndependenceRelation rel;
  for (std::size_t p : kept_parties) rel.outcomes.push_back(sc.parties()[p].outcome_var);
  for (std::size_t p = 0; p < n; ++p)
    if (!kept[p] && sc.parties()[p].settings > 1) rel.settings.push_back(sc.parties()[p].setting_var);
  if (!rel.settings.empty()) {
    auto check = check_independence_detailed(corr, rel, tolerance);
    if (!check.holds) throw PreconditionError("marginal is not well defined: " + check.witness);
  }

  Scenario out(parties);
  std::vector<T> entries(out.size(), T(0));
  std::vector<int> o(n), s(n), ko(parties.size()), ks(parties.size());
  const std::size_t no = sc.outcome_tuples();
  for (std::size_t si = 0; si < sc.setting_tuples(); ++si) {
    sc.decode_settings(si, s);
    bool reference = true;
    for (std::size_t p = 0; p < n; ++p)
      if (!kept[p] && s[p] != 0) reference = false;
    if (!reference) continue;
    for (std::size_t k = 0; k < parties.size(); ++k) ks[k] = s[kept_parties[k]];
    for (std::size_t oi = 0; oi < no; ++oi) {
      sc.decode_outcomes(oi, o);
      for (std::size_t k = 0; k < parties.size(); ++k) ko[k] = o[kept_parties[k]];
      entries[out.index(ko, ks)] += corr[oi + no * si];
    }
  }
  return Correlation<T>(out, std::move(entries));
}

#define LCS_INSTANTIATE(T)                                                                                      \
  template class Correlation<T>;                                                                              \
  template ValidationReport validate<T>(const Correlation<T>&, double);                                       \
  template IndependenceCheck check_independence_detailed<T>(const Correlation<T>&, const IndependenceRelation&, \
                                                            double);                                          \
  template T shorthand_probability<T>(const Correlation<T>&, const Expr&, std::span<const FixedSetting>);     \
  template Correlation<T> marginal<T>(const Correlation<T>&, std::span<const std::size_t>, double);

LCS_INSTANTIATE(Rational)
LCS_INSTANTIATE(double)

#undef LCS_INSTANTIATE

}  // namespace lcs
