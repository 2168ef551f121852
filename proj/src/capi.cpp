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

#include "lcswitch/lcswitch.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcswitch/causal.hpp"
#include "lcswitch/errors.hpp"
#include "lcswitch/io.hpp"
#include "lcswitch/reproduce.hpp"

struct lcs_correlation {
  lcs::AnyCorrelation value;
};

struct lcs_inequality {
  lcs::InequalityRecord record;
};

struct lcs_setup {
  lcs::SwitchSetup value;
};

struct lcs_report {
  std::vector<std::pair<std::string, std::string>> fields;
  std::map<std::string, std::string> attachments;
  std::string summary;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void finish() {
    summary.clear();
    for (const auto& [k, v] : fields) summary += (summary.empty() ? "" : " ") + k + "=" + v;
  }
};

namespace {

thread_local std::string g_error;
thread_local int g_line = 0;
thread_local int g_column = 0;

lcs_status fail(lcs_status s, std::string message, int line = 0, int column = 0) {
  g_error = std::move(message);
  g_line = line;
  g_column = column;
  return s;
}

// Runs `body`, translating library exceptions into status codes.
template <class F>
lcs_status guarded(F&& body) {
  try {
    g_error.clear();
    g_line = g_column = 0;
    return body();
  } catch (const lcs::ParseError& e) {
    return fail(LCS_ERR_PARSE, e.what(), e.line(), e.column());
  } catch (const lcs::ScenarioError& e) {
    return fail(LCS_ERR_SCENARIO, e.what());
  } catch (const lcs::MissingEntryError& e) {
    return fail(LCS_ERR_MISSING_ENTRY, e.what());
  } catch (const lcs::PreconditionError& e) {
    return fail(LCS_ERR_PRECONDITION, e.what());
  } catch (const lcs::BudgetExceeded& e) {
    return fail(LCS_ERR_BUDGET, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LCS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LCS_ERR_INTERNAL, e.what());
  }
}

char* owned(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string format(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::optional<lcs::Variant> variant_of(lcs_variant v) {
  switch (v) {
    case LCS_VARIANT_WITH_Z: return lcs::Variant::WithZ;
    case LCS_VARIANT_WITHOUT_Z: return lcs::Variant::WithoutZ;
    default: return std::nullopt;
  }
}

bool known_builtin(const char* name) {
  const auto& names = lcs::builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

lcs_report* finish(std::unique_ptr<lcs_report> r) {
  r->finish();
  return r.release();
}

#define LCS_REQUIRE(cond, what) \
  if (!(cond)) return fail(LCS_ERR_ARGUMENT, what)

}  // namespace

extern "C" {

const char* lcs_version(void) { return "0.1.0"; }

const char* lcs_status_string(lcs_status status) {
  switch (status) {
    case LCS_OK: return "ok";
    case LCS_ERR_ARGUMENT: return "invalid argument";
    case LCS_ERR_PARSE: return "parse error";
    case LCS_ERR_SCENARIO: return "scenario mismatch";
    case LCS_ERR_MISSING_ENTRY: return "missing entry";
    case LCS_ERR_PRECONDITION: return "precondition violated";
    case LCS_ERR_BUDGET: return "budget exceeded";
    case LCS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* lcs_last_error(void) { return g_error.c_str(); }
int lcs_last_error_line(void) { return g_line; }
int lcs_last_error_column(void) { return g_column; }
void lcs_string_free(char* s) { std::free(s); }

// ---- reports ---------------------------------------------------------------

size_t lcs_report_field_count(const lcs_report* r) { return r ? r->fields.size() : 0; }

const char* lcs_report_field_key(const lcs_report* r, size_t i) {
  return r && i < r->fields.size() ? r->fields[i].first.c_str() : nullptr;
}

const char* lcs_report_field_value(const lcs_report* r, size_t i) {
  return r && i < r->fields.size() ? r->fields[i].second.c_str() : nullptr;
}

const char* lcs_report_get(const lcs_report* r, const char* key) {
  if (!r || !key) return nullptr;
  for (const auto& [k, v] : r->fields)
    if (k == key) return v.c_str();
  return nullptr;
}

const char* lcs_report_summary(const lcs_report* r) { return r ? r->summary.c_str() : nullptr; }

const char* lcs_report_attachment(const lcs_report* r, const char* name) {
  if (!r || !name) return nullptr;
  auto it = r->attachments.find(name);
  return it == r->attachments.end() ? nullptr : it->second.c_str();
}

void lcs_report_free(lcs_report* r) { delete r; }

// ---- correlations ----------------------------------------------------------

lcs_status lcs_correlation_parse(const char* json, lcs_correlation** out) {
  LCS_REQUIRE(json && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lcs_correlation{lcs::read_correlation(json)};
    return LCS_OK;
  });
}

lcs_status lcs_correlation_to_json(const lcs_correlation* c, char** out) {
  LCS_REQUIRE(c && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = owned(std::visit([](const auto& t) { return lcs::write_correlation(t); }, c->value));
    return LCS_OK;
  });
}

int lcs_correlation_is_exact(const lcs_correlation* c) {
  return c && std::holds_alternative<lcs::ExactCorrelation>(c->value);
}

size_t lcs_correlation_size(const lcs_correlation* c) {
  return c ? std::visit([](const auto& t) { return t.size(); }, c->value) : 0;
}

lcs_status lcs_correlation_entry(const lcs_correlation* c, size_t index, double* out) {
  LCS_REQUIRE(c && out, "null argument");
  LCS_REQUIRE(index < lcs_correlation_size(c), "entry index out of range");
  *out = std::visit([&](const auto& t) { return lcs::Numeric<std::decay_t<decltype(t[0])>>::as_double(t[index]); },
                    c->value);
  return LCS_OK;
}

lcs_status lcs_correlation_convert(const lcs_correlation* c, int exact, lcs_correlation** out) {
  LCS_REQUIRE(c && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    if (const auto* e = std::get_if<lcs::ExactCorrelation>(&c->value))
      *out = exact ? new lcs_correlation{*e} : new lcs_correlation{lcs::to_float(*e)};
    else {
      const auto& f = std::get<lcs::FloatCorrelation>(c->value);
      *out = exact ? new lcs_correlation{lcs::to_exact(f, lcs::Integer("1000000000000"))} : new lcs_correlation{f};
    }
    return LCS_OK;
  });
}

void lcs_correlation_free(lcs_correlation* c) { delete c; }

// ---- inequalities ----------------------------------------------------------

size_t lcs_builtin_count(void) { return lcs::builtin_names().size(); }

const char* lcs_builtin_name(size_t index) {
  const auto& names = lcs::builtin_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

lcs_status lcs_inequality_builtin(const char* name, lcs_variant variant, lcs_inequality** out) {
  LCS_REQUIRE(name && out, "null argument");
  *out = nullptr;
  if (!known_builtin(name)) return fail(LCS_ERR_ARGUMENT, std::string("unknown inequality '") + name + "'");
  return guarded([&] {
    *out = new lcs_inequality{lcs::builtin(name, variant_of(variant))};
    return LCS_OK;
  });
}

lcs_status lcs_inequality_parse(const char* text, const char* name, lcs_variant variant, lcs_inequality** out) {
  LCS_REQUIRE(text && name && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lcs_inequality{lcs::parse_inequality(text, name, variant_of(variant).value_or(lcs::Variant::WithZ))};
    return LCS_OK;
  });
}

lcs_status lcs_inequality_to_text(const lcs_inequality* q, char** out) {
  LCS_REQUIRE(q && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = owned(lcs::to_dsl(q->record));
    return LCS_OK;
  });
}

const char* lcs_inequality_name(const lcs_inequality* q) { return q ? q->record.name.c_str() : nullptr; }

void lcs_inequality_free(lcs_inequality* q) { delete q; }

lcs_status lcs_evaluate(const lcs_inequality* q, const lcs_correlation* c, double tolerance, lcs_report** out) {
  LCS_REQUIRE(q && c && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto r = std::make_unique<lcs_report>();
    r->add("inequality", q->record.name);
    if (const auto* e = std::get_if<lcs::ExactCorrelation>(&c->value)) {
      auto ev = lcs::evaluate(q->record, *e);
      r->add("mode", "exact");
      r->add("value", lcs::to_string(ev.value));
      r->add("bound", lcs::to_string(q->record.bound));
      r->add("margin", lcs::to_string(ev.margin));
      r->add("violated", ev.violated);
    } else {
      auto ev = lcs::evaluate(q->record, std::get<lcs::FloatCorrelation>(c->value));
      const double tol = tolerance > 0 ? tolerance : lcs::kViolationTolerance;
      r->add("mode", "float");
      r->add("value", format(ev.value));
      r->add("bound", lcs::to_string(q->record.bound));
      r->add("margin", format(ev.margin));
      r->add("violated", ev.margin > tol);
    }
    *out = finish(std::move(r));
    return LCS_OK;
  });
}

lcs_status lcs_certify(const lcs_inequality* q, lcs_report** out) {
  LCS_REQUIRE(q && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    lcs::ValidTight vt = lcs::check_valid_tight(q->record);
    auto r = std::make_unique<lcs_report>();
    r->add("valid", vt.valid);
    r->add("tight", vt.tight);
    r->add("max", lcs::to_string(std::max(vt.max_branch1, vt.max_branch2)));
    r->add("max_lc1", lcs::to_string(vt.max_branch1));
    r->add("max_lc2", lcs::to_string(vt.max_branch2));
    r->add("bound", lcs::to_string(q->record.bound));
    if (vt.witness) {
      r->attachments["witness"] = lcs::write_correlation(*vt.witness);
      lcs::MembershipResult m = lcs::membership(*vt.witness);
      if (m.model) {
        r->add("witness_model_ok", lcs::verify_model(*vt.witness, *m.model).ok());
        r->attachments["witness_model"] = lcs::write_model(*m.model);
      }
    }
    *out = finish(std::move(r));
    return LCS_OK;
  });
}

lcs_status lcs_membership(const lcs_correlation* c, double tolerance, lcs_report** out) {
  LCS_REQUIRE(c && out, "null argument");
  *out = nullptr;
  const bool exact = lcs_correlation_is_exact(c);
  LCS_REQUIRE(exact || tolerance > 0, "floating membership needs a positive tolerance");
  return guarded([&] {
    lcs::MembershipResult m = exact ? lcs::membership(std::get<lcs::ExactCorrelation>(c->value))
                                    : lcs::membership(std::get<lcs::FloatCorrelation>(c->value),
                                                      lcs::MembershipOptions{tolerance});
    auto r = std::make_unique<lcs_report>();
    r->add("member", m.member);
    r->add("certified", m.certified);
    r->add("mode", exact ? "exact" : "float");
    // Floating input is rationalised with large denominators; decimals read better.
    auto number = [&](const lcs::Rational& x) { return exact ? lcs::to_string(x) : format(lcs::to_double(x)); };
    // White-noise robustness is undefined when the point leaves the affine hull.
    if (!(m.violation && m.violation->farkas)) r->add("robustness", number(m.robustness));
    if (m.member) r->add("single_branch", m.single_branch);
    if (m.violation) {
      r->add("margin", number(m.violation->margin));
      r->add("farkas", m.violation->farkas);
      r->attachments["separating_functional"] = lcs::write_functional(m.violation->functional);
    }
    if (m.model) r->attachments["model"] = lcs::write_model(*m.model);
    *out = finish(std::move(r));
    return LCS_OK;
  });
}

// ---- causal ----------------------------------------------------------------

lcs_status lcs_marginal_causal(const lcs_correlation* c, double tolerance, lcs_report** out) {
  LCS_REQUIRE(c && out, "null argument");
  *out = nullptr;
  const bool exact = lcs_correlation_is_exact(c);
  LCS_REQUIRE(exact || tolerance > 0, "floating input needs a positive tolerance");
  return guarded([&] {
    lcs::MarginalCausalResult m =
        exact ? lcs::marginal_causal_check(std::get<lcs::ExactCorrelation>(c->value))
              : lcs::marginal_causal_check(std::get<lcs::FloatCorrelation>(c->value), lcs::MembershipOptions{tolerance});
    auto r = std::make_unique<lcs_report>();
    r->add("marginal_ok", m.marginal_ok);
    r->add("causal", m.alice_marginal_causal);
    if (!m.issue.empty()) r->add("issue", "\"" + m.issue + "\"");
    if (m.marginal) r->attachments["marginal"] = lcs::write_correlation(*m.marginal);
    *out = finish(std::move(r));
    return LCS_OK;
  });
}

lcs_status lcs_verify_model(const lcs_correlation* target, const char* model_json, int strict, lcs_report** out) {
  LCS_REQUIRE(target && model_json && out, "null argument");
  LCS_REQUIRE(lcs_correlation_is_exact(target), "model verification needs an exact target");
  *out = nullptr;
  return guarded([&] {
    lcs::HiddenVariableModel model = lcs::read_model(model_json);
    lcs::ModelReport rep = lcs::verify_model(std::get<lcs::ExactCorrelation>(target->value), model,
                                             strict ? lcs::ModelCheckMode::Strict : lcs::ModelCheckMode::Lenient);
    auto r = std::make_unique<lcs_report>();
    r->add("ok", rep.ok());
    r->add("mixture", rep.weight_ok && rep.branches_valid && rep.mixture_ok);
    r->add("locality", rep.locality_ok());
    r->add("order", rep.order_ok());
    r->add("violations", std::to_string(rep.violations().size()));
    std::string lines;
    for (const auto& v : rep.violations()) lines += v + "\n";
    r->attachments["violations"] = lines;
    *out = finish(std::move(r));
    return LCS_OK;
  });
}

// ---- quantum switch --------------------------------------------------------

lcs_status lcs_setup_preset(const char* name, lcs_setup** out) {
  LCS_REQUIRE(name && out, "null argument");
  *out = nullptr;
  if (std::string(name) != "fig3-default") return fail(LCS_ERR_ARGUMENT, std::string("unknown setup preset '") + name + "'");
  *out = new lcs_setup{lcs::SwitchSetup::defaults()};
  return LCS_OK;
}

lcs_status lcs_setup_parse(const char* json, lcs_setup** out) {
  LCS_REQUIRE(json && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lcs_setup{lcs::read_setup(json)};
    return LCS_OK;
  });
}

lcs_status lcs_setup_to_json(const lcs_setup* s, char** out) {
  LCS_REQUIRE(s && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = owned(lcs::write_setup(s->value));
    return LCS_OK;
  });
}

lcs_status lcs_setup_set_postprocess(lcs_setup* s, const char* postprocess) {
  LCS_REQUIRE(s && postprocess, "null argument");
  LCS_REQUIRE(std::string_view(postprocess) == "none" || std::string_view(postprocess) == "relabel",
              "unknown post-processing '" + std::string(postprocess) + "' (expected none or relabel)");
  return guarded([&] {
    s->value.postprocess = lcs::parse_postprocess(postprocess);
    return LCS_OK;
  });
}

lcs_status lcs_setup_set_variant(lcs_setup* s, lcs_variant variant) {
  LCS_REQUIRE(s, "null argument");
  auto v = variant_of(variant);
  LCS_REQUIRE(v, "setup variant must be with-z or without-z");
  s->value.variant = *v;
  return LCS_OK;
}

void lcs_setup_free(lcs_setup* s) { delete s; }

lcs_status lcs_simulate(const lcs_setup* s, lcs_correlation** out) {
  LCS_REQUIRE(s && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lcs_correlation{lcs::correlation(s->value)};
    return LCS_OK;
  });
}

lcs_status lcs_optimize(const lcs_inequality* q, const lcs_setup* start, const lcs_optimize_options* options,
                        lcs_report** out) {
  LCS_REQUIRE(q && start && out, "null argument");
  *out = nullptr;
  lcs::OptimizeOptions opt;
  lcs::FreeAngles free;
  if (options) {
    if (options->grid_step > 0) opt.grid_step = options->grid_step;
    if (options->step_tolerance > 0) opt.step_tolerance = options->step_tolerance;
    if (options->max_iterations > 0) opt.max_iterations = options->max_iterations;
    if (options->free_mask) {
      const unsigned m = options->free_mask;
      free = {bool(m & LCS_FREE_BOB0), bool(m & LCS_FREE_BOB1), bool(m & LCS_FREE_CHARLIE0),
              bool(m & LCS_FREE_CHARLIE1), bool(m & LCS_FREE_BLOCH)};
    }
  }
  return guarded([&] {
    lcs::OptimizeResult res = lcs::optimize_angles(q->record, start->value, free, opt);
    auto r = std::make_unique<lcs_report>();
    r->add("inequality", q->record.name);
    r->add("value", format(res.value));
    r->add("grid_value", format(res.grid_value));
    r->add("grid_points", std::to_string(res.grid_points));
    r->add("iterations", std::to_string(res.iterations));
    r->add("bound", lcs::to_string(q->record.bound));
    r->add("violated", res.value > lcs::to_double(q->record.bound) + lcs::kViolationTolerance);
    r->attachments["setup"] = lcs::write_setup(res.setup);
    *out = finish(std::move(r));
    return LCS_OK;
  });
}

// ---- vertices --------------------------------------------------------------

lcs_status lcs_vertices(const char* polytope, const lcs_vertex_options* options, lcs_report** out) {
  LCS_REQUIRE(polytope && out, "null argument");
  *out = nullptr;
  lcs_vertex_options o{LCS_VARIANT_DEFAULT, 0, 0, 0, 1, nullptr, 0, 0};
  if (options) o = *options;
  const std::string name = polytope;
  lcs::EnumerationOptions eo;
  eo.budget = o.budget;
  eo.ray_budget = o.ray_budget;
  eo.threads = o.threads ? o.threads : 1;
  if (o.checkpoint) eo.checkpoint = o.checkpoint;
  const lcs::Variant variant = variant_of(o.variant).value_or(lcs::Variant::WithoutZ);

  if (name == "LC") {
    LCS_REQUIRE(variant == lcs::Variant::WithoutZ, "the LC vertex report is defined without z");
    return guarded([&] {
      lcs::LCReportOptions ro;
      ro.full = o.full != 0;
      ro.enumeration = eo;
      ro.seed = o.seed;
      lcs::LCVertexReport rep = lcs::lc_vertex_report(ro);
      auto r = std::make_unique<lcs_report>();
      r->add("polytope", "LC");
      r->add("exhaustive", rep.exhaustive);
      if (rep.exhaustive) {
        r->add("lc1_vertices", std::to_string(rep.lc1_vertices));
        r->add("lc1_classes", std::to_string(rep.lc1_classes));
        r->add("vertices", std::to_string(rep.lc_vertices));
        r->add("classes", std::to_string(rep.lc_classes));
      } else {
        r->add("classes_seen", std::to_string(rep.lc_classes));
        r->add("sampled_vertices", std::to_string(rep.sampled_vertices));
        r->add("sample_dimension", std::to_string(rep.sample_dimension));
      }
      r->add("deterministic_vertices", std::to_string(rep.deterministic_vertices));
      r->add("deterministic_classes", std::to_string(rep.deterministic_classes));
      r->add("half_integral", rep.half_integral);
      r->add("ns_dimension", std::to_string(rep.ns_dimension));
      lcs::VertexSet vs{lcs::Scenario::four_party(lcs::Variant::WithoutZ), {}, rep.lc_representatives, {}, rep.exhaustive,
                        rep.note};
      const auto& g = lcs::lc_symmetry_group();
      for (const auto& v : vs.class_representatives) vs.class_sizes.push_back(g.orbit_size(v));
      std::ostringstream file;
      lcs::write_vertex_file(file, vs);
      r->attachments["vertex_file"] = file.str();
      r->attachments["note"] = rep.note;
      *out = finish(std::move(r));
      return LCS_OK;
    });
  }

  static const char* const kNames[] = {"NS", "LC1", "LC2", "C1", "C2"};
  LCS_REQUIRE(std::find(std::begin(kNames), std::end(kNames), name) != std::end(kNames),
              "unknown polytope '" + name + "' (expected NS, LC1, LC2, LC, C1 or C2)");
  const bool alice = name == "C1" || name == "C2";
  LCS_REQUIRE(!o.use_group || (!alice && variant == lcs::Variant::WithoutZ),
              "symmetry reduction is available for NS, LC1 and LC2 without z");
  return guarded([&] {
    const lcs::HPolytope poly = lcs::build(name, variant);
    std::optional<lcs::SymmetryGroup> group;
    if (o.use_group) {
      auto gens = lcs::lc_generators();
      if (name != "NS") gens.pop_back();  // the A1/A2 exchange swaps LC1 and LC2
      group.emplace(poly.scenario, gens);
    }
    lcs::VertexSet vs = lcs::enumerate_vertices(poly, group ? &*group : nullptr, eo);
    auto r = std::make_unique<lcs_report>();
    r->add("polytope", name);
    r->add("variant", std::string(alice ? "alice-pair" : lcs::to_string(variant)));
    r->add("vertices", std::to_string(vs.total()));
    if (group) r->add("classes", std::to_string(vs.class_representatives.size()));
    r->add("exhaustive", vs.exhaustive);
    std::ostringstream file;
    lcs::write_vertex_file(file, vs);
    r->attachments["vertex_file"] = file.str();
    if (!vs.note.empty()) r->attachments["note"] = vs.note;
    *out = finish(std::move(r));
    return LCS_OK;
  });
}

lcs_status lcs_face_dimension(const lcs_inequality* q, const char* vertex_file, const char* group, lcs_report** out) {
  LCS_REQUIRE(q && out, "null argument");
  *out = nullptr;
  const std::string g = group ? group : "none";
  LCS_REQUIRE(g == "none" || g == "lc" || g == "lc1", "group must be none, lc or lc1");
  return guarded([&] {
    auto r = std::make_unique<lcs_report>();
    r->add("inequality", q->record.name);
    if (!vertex_file) {
      lcs::HullDimension h = lcs::face_dimension_lp(q->record);
      r->add("dimension", std::to_string(h.dimension));
      r->add("method", "lp");
      r->add("lp_solves", std::to_string(h.lp_solves));
    } else {
      std::istringstream in(vertex_file);
      lcs::VertexSet vs = lcs::read_vertex_file(in);
      std::optional<lcs::SymmetryGroup> sg;
      if (g != "none") {
        auto gens = lcs::lc_generators();
        if (g == "lc1") gens.pop_back();
        sg.emplace(vs.scenario, gens);
      }
      LCS_REQUIRE(vs.class_representatives.empty() || sg, "representative vertex files need a group");
      const long d = lcs::face_dimension(vs, q->record.on(vs.scenario), sg ? &*sg : nullptr);
      r->add("dimension", std::to_string(d));
      r->add("method", "vertices");
      r->add("exhaustive", vs.exhaustive);
    }
    *out = finish(std::move(r));
    return LCS_OK;
  });
}

// ---- acceptance ------------------------------------------------------------

lcs_status lcs_reproduce(const lcs_reproduce_options* options, char** table, int* passed) {
  LCS_REQUIRE(table && passed, "null argument");
  *table = nullptr;
  return guarded([&] {
    lcs::ReproduceOptions ro;
    if (options) {
      ro.seed = options->seed;
      ro.full_enumeration = options->full_enumeration != 0;
      ro.enumeration.budget = options->budget;
    }
    lcs::ReproduceReport rep = lcs::reproduce(ro);
    *table = owned(rep.table());
    *passed = rep.passed() ? 1 : 0;
    return LCS_OK;
  });
}

}  // extern "C"
