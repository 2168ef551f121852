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

// Command-line front end over the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcswitch/lcswitch.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitExpectation = 2;

struct Failure {
  std::string message;
};

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Correlation = std::unique_ptr<lcs_correlation, Deleter<lcs_correlation, lcs_correlation_free>>;
using Inequality = std::unique_ptr<lcs_inequality, Deleter<lcs_inequality, lcs_inequality_free>>;
using Setup = std::unique_ptr<lcs_setup, Deleter<lcs_setup, lcs_setup_free>>;
using Report = std::unique_ptr<lcs_report, Deleter<lcs_report, lcs_report_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  lcs_string_free(s);
  return out;
}

// Throws Failure with the library's message; `source` names the input for
// parse diagnostics.
void check(lcs_status s, const std::string& source = "") {
  if (s == LCS_OK) return;
  std::string msg = lcs_last_error();
  if (s == LCS_ERR_PARSE && !source.empty()) {
    // "path:line:column: message" keeps editors and grep happy.
    const int line = lcs_last_error_line(), col = lcs_last_error_column();
    std::string what = msg;
    if (line > 0) {
      if (auto k = what.find(": "); k != std::string::npos && what.rfind("line ", 0) == 0) what = what.substr(k + 2);
      msg = source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what;
    } else {
      msg = source + ": " + what;
    }
  }
  throw Failure{msg};
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{"cannot write " + path};
}

struct Global {
  bool exact = false;
  bool floating = false;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::string variant;

  lcs_variant variant_code() const {
    if (variant == "with-z") return LCS_VARIANT_WITH_Z;
    if (variant == "without-z") return LCS_VARIANT_WITHOUT_Z;
    return LCS_VARIANT_DEFAULT;
  }
};

Inequality load_inequality(const std::string& name, const Global& g) {
  lcs_inequality* q = nullptr;
  for (size_t i = 0; i < lcs_builtin_count(); ++i)
    if (name == lcs_builtin_name(i)) {
      check(lcs_inequality_builtin(name.c_str(), g.variant_code(), &q));
      return Inequality(q);
    }
  if (!std::filesystem::exists(name)) throw Failure{"unknown inequality '" + name + "' (not a built-in name or a file)"};
  const std::string text = read_input(name);
  const std::string stem = std::filesystem::path(name).stem().string();
  check(lcs_inequality_parse(text.c_str(), stem.c_str(), g.variant_code(), &q), name);
  return Inequality(q);
}

Setup load_setup(const std::string& source) {
  lcs_setup* s = nullptr;
  if (source == "fig3-default" && !std::filesystem::exists(source)) {
    check(lcs_setup_preset(source.c_str(), &s));
  } else {
    const std::string text = read_input(source);
    check(lcs_setup_parse(text.c_str(), &s), source == "-" ? "<stdin>" : source);
  }
  return Setup(s);
}

// A correlation file, "-", or "fig3-correlation" for the simulated default
// setup; converted to the requested arithmetic.
Correlation load_correlation(const std::string& source, const Global& g) {
  lcs_correlation* c = nullptr;
  if (source == "fig3-correlation" && !std::filesystem::exists(source)) {
    Setup s = load_setup("fig3-default");
    if (g.variant_code() != LCS_VARIANT_DEFAULT) check(lcs_setup_set_variant(s.get(), g.variant_code()));
    check(lcs_simulate(s.get(), &c));
  } else {
    const std::string text = read_input(source);
    check(lcs_correlation_parse(text.c_str(), &c), source == "-" ? "<stdin>" : source);
  }
  Correlation out(c);
  if ((g.exact && !lcs_correlation_is_exact(c)) || (g.floating && lcs_correlation_is_exact(c))) {
    lcs_correlation* converted = nullptr;
    check(lcs_correlation_convert(c, g.exact ? 1 : 0, &converted));
    out.reset(converted);
  }
  return out;
}

std::string field(const lcs_report* r, const char* key) {
  const char* v = lcs_report_get(r, key);
  return v ? v : "";
}

void save_attachment(const lcs_report* r, const char* name, const std::string& path) {
  if (path.empty()) return;
  const char* text = lcs_report_attachment(r, name);
  if (!text) throw Failure{std::string("no ") + name + " to write"};
  write_output(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-causal polytope and quantum switch toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  auto* exact_flag = app.add_flag("--exact", g.exact, "Use exact rational arithmetic (rationalises float input)");
  app.add_flag("--float", g.floating, "Use floating-point arithmetic")->excludes(exact_flag);
  app.add_option("--tolerance", g.tolerance, "Floating tolerance (membership l1 radius, violation slack)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for every randomised step");
  app.add_option("--budget", g.budget, "Orbit-class budget for vertex enumeration (0 = none)");
  app.add_option("--variant", g.variant, "Scenario variant")->check(CLI::IsMember({"with-z", "without-z"}));

  std::string ineq_name, input, output, second;
  bool details = false;

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate an inequality on a correlation");
  evaluate->add_option("inequality", ineq_name, "Built-in name or inequality file")->required();
  evaluate->add_option("correlation", input, "Correlation file, '-' or fig3-correlation")->required();

  std::string witness_out, model_out;
  auto* certify = app.add_subcommand("certify", "Exact validity and tightness over LC");
  certify->add_option("inequality", ineq_name)->required();
  certify->add_option("--witness", witness_out, "Write the tight witness correlation");
  certify->add_option("--model", model_out, "Write the witness hidden-variable model");
  certify->add_flag("--details", details, "Also print branch maxima and model check");

  std::string functional_out;
  auto* member = app.add_subcommand("membership", "Decide membership in LC with a certificate");
  member->add_option("correlation", input)->required();
  member->add_option("--model", model_out, "Write the decomposition of a member");
  member->add_option("--functional", functional_out, "Write the separating functional of a non-member");

  std::string postprocess;
  auto* simulate = app.add_subcommand("simulate", "Born-rule correlation of a switch setup");
  simulate->add_option("setup", input, "Setup file, '-' or fig3-default")->required();
  simulate->add_option("--postprocess", postprocess)->check(CLI::IsMember({"none", "relabel"}));
  simulate->add_option("-o,--output", output, "Output file (default stdout)");

  std::string start = "fig3-default", fixed;
  double grid_step = 0;
  bool bloch = false;
  auto* optimize = app.add_subcommand("optimize", "Maximise an inequality over measurement angles");
  optimize->add_option("inequality", ineq_name)->required();
  optimize->add_option("--start", start, "Starting setup file or fig3-default");
  optimize->add_option("--postprocess", postprocess)->check(CLI::IsMember({"none", "relabel"}));
  optimize->add_option("--grid-step", grid_step, "Grid spacing in radians (default pi/60)");
  optimize->add_option("--fix", fixed, "Comma list of angles held fixed: bob0,bob1,charlie0,charlie1");
  optimize->add_flag("--bloch", bloch, "Also refine out-of-plane phases");
  optimize->add_option("-o,--output", output, "Write the best setup");

  std::string group = "off", checkpoint;
  std::size_t ray_budget = 0;
  unsigned threads = 1;
  bool full = false;
  auto* vertices = app.add_subcommand("vertices", "Enumerate polytope vertices");
  vertices->add_option("polytope", input, "NS, LC1, LC2, C1, C2, or LC for the vertex statistics")->required();
  vertices->add_option("--group", group, "Symmetry reduction")->check(CLI::IsMember({"on", "off"}));
  vertices->add_option("--ray-budget", ray_budget, "Intermediate ray cap per double-description run");
  vertices->add_option("--threads", threads);
  vertices->add_option("--checkpoint", checkpoint, "Resumable frontier file");
  vertices->add_flag("--full", full, "LC: run the full enumeration (hours)");
  vertices->add_option("-o,--output", output, "Write the vertex file");

  std::string face_group = "none";
  auto* face = app.add_subcommand("face-dim", "Dimension of the face an inequality supports");
  face->add_option("inequality", ineq_name)->required();
  face->add_option("vertices", second, "Vertex file; omitted: LP oracle over LC");
  face->add_option("--group", face_group, "Group expanding representative files")
      ->check(CLI::IsMember({"none", "lc", "lc1"}));

  auto* reproduce = app.add_subcommand("reproduce", "Recompute every reference quantity");
  reproduce->add_flag("--full", full, "Include the full LC vertex enumeration (hours)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*evaluate) {
      Inequality q = load_inequality(ineq_name, g);
      Correlation c = load_correlation(input, g);
      lcs_report* r = nullptr;
      check(lcs_evaluate(q.get(), c.get(), g.tolerance, &r));
      Report rep(r);
      std::cout << lcs_report_summary(r) << "\n";
    } else if (*certify) {
      Inequality q = load_inequality(ineq_name, g);
      lcs_report* r = nullptr;
      check(lcs_certify(q.get(), &r));
      Report rep(r);
      std::cout << "valid=" << field(r, "valid") << " tight=" << field(r, "tight") << " max=" << field(r, "max")
                << "\n";
      if (details) std::cout << lcs_report_summary(r) << "\n";
      save_attachment(r, "witness", witness_out);
      save_attachment(r, "witness_model", model_out);
    } else if (*member) {
      Correlation c = load_correlation(input, g);
      lcs_report* r = nullptr;
      check(lcs_membership(c.get(), g.tolerance, &r));
      Report rep(r);
      std::cout << lcs_report_summary(r) << "\n";
      if (!model_out.empty() && lcs_report_attachment(r, "model")) save_attachment(r, "model", model_out);
      if (!functional_out.empty() && lcs_report_attachment(r, "separating_functional"))
        save_attachment(r, "separating_functional", functional_out);
    } else if (*simulate) {
      Setup s = load_setup(input);
      if (!postprocess.empty()) check(lcs_setup_set_postprocess(s.get(), postprocess.c_str()));
      if (g.variant_code() != LCS_VARIANT_DEFAULT) check(lcs_setup_set_variant(s.get(), g.variant_code()));
      lcs_correlation* c = nullptr;
      check(lcs_simulate(s.get(), &c));
      Correlation corr(c);
      if (g.exact) {
        lcs_correlation* e = nullptr;
        check(lcs_correlation_convert(c, 1, &e));
        corr.reset(e);
      }
      char* text = nullptr;
      check(lcs_correlation_to_json(corr.get(), &text));
      write_output(output, take(text));
    } else if (*optimize) {
      Inequality q = load_inequality(ineq_name, g);
      Setup s = load_setup(start);
      if (!postprocess.empty()) check(lcs_setup_set_postprocess(s.get(), postprocess.c_str()));
      lcs_optimize_options o{grid_step, LCS_FREE_ANGLES, 0, 0};
      std::stringstream list(fixed);
      for (std::string item; std::getline(list, item, ',');) {
        if (item == "bob0") o.free_mask &= ~LCS_FREE_BOB0;
        else if (item == "bob1") o.free_mask &= ~LCS_FREE_BOB1;
        else if (item == "charlie0") o.free_mask &= ~LCS_FREE_CHARLIE0;
        else if (item == "charlie1") o.free_mask &= ~LCS_FREE_CHARLIE1;
        else if (!item.empty()) throw Failure{"unknown angle '" + item + "' in --fix"};
      }
      if (bloch) o.free_mask |= LCS_FREE_BLOCH;
      if ((o.free_mask & LCS_FREE_ANGLES) == 0) throw Failure{"--fix leaves no free angle"};
      lcs_report* r = nullptr;
      check(lcs_optimize(q.get(), s.get(), &o, &r));
      Report rep(r);
      std::cout << lcs_report_summary(r) << "\n";
      save_attachment(r, "setup", output);
    } else if (*vertices) {
      lcs_vertex_options o{g.variant_code(), group == "on", g.budget, ray_budget, threads,
                           checkpoint.empty() ? nullptr : checkpoint.c_str(), full, g.seed};
      lcs_report* r = nullptr;
      check(lcs_vertices(input.c_str(), &o, &r));
      Report rep(r);
      std::cout << lcs_report_summary(r) << "\n";
      save_attachment(r, "vertex_file", output);
    } else if (*face) {
      Inequality q = load_inequality(ineq_name, g);
      std::string file;
      if (!second.empty()) file = read_input(second);
      lcs_report* r = nullptr;
      check(lcs_face_dimension(q.get(), second.empty() ? nullptr : file.c_str(), face_group.c_str(), &r),
            second == "-" ? "<stdin>" : second);
      Report rep(r);
      std::cout << lcs_report_summary(r) << "\n";
    } else if (*reproduce) {
      lcs_reproduce_options o{g.seed, full, g.budget};
      char* table = nullptr;
      int passed = 0;
      check(lcs_reproduce(&o, &table, &passed));
      std::cout << take(table);
      return passed ? kExitOk : kExitExpectation;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
