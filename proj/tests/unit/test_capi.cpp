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

// Exercises the exported C surface only.

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "doctest.h"
#include "lcswitch/lcswitch.h"

namespace {

std::string field(const lcs_report* r, const char* key) {
  const char* v = lcs_report_get(r, key);
  return v ? v : "<absent>";
}

struct Report {
  lcs_report* r = nullptr;
  ~Report() { lcs_report_free(r); }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(lcs_version()) > 0);
  CHECK(std::string(lcs_status_string(LCS_OK)) != std::string(lcs_status_string(LCS_ERR_PARSE)));
  lcs_string_free(nullptr);
  lcs_report_free(nullptr);
  lcs_correlation_free(nullptr);
}

TEST_CASE("builtins and errors") {
  CHECK(lcs_builtin_count() >= 10u);
  bool has_main = false;
  for (size_t i = 0; i < lcs_builtin_count(); ++i) has_main = has_main || std::string(lcs_builtin_name(i)) == "main";
  CHECK(has_main);
  lcs_inequality* q = reinterpret_cast<lcs_inequality*>(1);
  CHECK(lcs_inequality_builtin("nope", LCS_VARIANT_DEFAULT, &q) == LCS_ERR_ARGUMENT);
  CHECK(q == nullptr);
  CHECK(std::string(lcs_last_error()).find("nope") != std::string::npos);
  CHECK(lcs_inequality_builtin(nullptr, LCS_VARIANT_DEFAULT, &q) == LCS_ERR_ARGUMENT);
  CHECK(lcs_inequality_builtin("main", LCS_VARIANT_WITHOUT_Z, &q) == LCS_ERR_SCENARIO);
  CHECK(lcs_certify(nullptr, nullptr) == LCS_ERR_ARGUMENT);
}

TEST_CASE("certify, witness and model") {
  lcs_inequality* q = nullptr;
  REQUIRE(lcs_inequality_builtin("main", LCS_VARIANT_DEFAULT, &q) == LCS_OK);
  CHECK(std::string(lcs_inequality_name(q)) == "main");
  Report rep;
  REQUIRE(lcs_certify(q, &rep.r) == LCS_OK);
  CHECK(field(rep.r, "valid") == "true");
  CHECK(field(rep.r, "tight") == "true");
  CHECK(field(rep.r, "max") == "7/4");
  CHECK(field(rep.r, "max_lc1") == "7/4");
  CHECK(std::string(lcs_report_summary(rep.r)).rfind("valid=true tight=true max=7/4", 0) == 0);
  const char* witness = lcs_report_attachment(rep.r, "witness");
  const char* model = lcs_report_attachment(rep.r, "witness_model");
  REQUIRE(witness);
  REQUIRE(model);
  CHECK(lcs_report_attachment(rep.r, "nothing") == nullptr);

  lcs_correlation* w = nullptr;
  REQUIRE(lcs_correlation_parse(witness, &w) == LCS_OK);
  CHECK(lcs_correlation_is_exact(w));
  CHECK(lcs_correlation_size(w) == 256u);
  Report ev;
  REQUIRE(lcs_evaluate(q, w, 1e-9, &ev.r) == LCS_OK);
  CHECK(field(ev.r, "value") == "7/4");
  CHECK(field(ev.r, "violated") == "false");
  Report vm;
  REQUIRE(lcs_verify_model(w, model, 1, &vm.r) == LCS_OK);
  CHECK(field(vm.r, "ok") == "true");
  Report mem;
  REQUIRE(lcs_membership(w, 0, &mem.r) == LCS_OK);
  CHECK(field(mem.r, "member") == "true");
  CHECK(lcs_report_attachment(mem.r, "model") != nullptr);
  lcs_correlation_free(w);
  lcs_inequality_free(q);
}

TEST_CASE("switch simulation through the C surface") {
  lcs_setup* s = nullptr;
  REQUIRE(lcs_setup_preset("fig3-default", &s) == LCS_OK);
  lcs_correlation* c = nullptr;
  REQUIRE(lcs_simulate(s, &c) == LCS_OK);
  CHECK_FALSE(lcs_correlation_is_exact(c));
  lcs_inequality* q = nullptr;
  REQUIRE(lcs_inequality_builtin("main", LCS_VARIANT_DEFAULT, &q) == LCS_OK);
  Report ev;
  REQUIRE(lcs_evaluate(q, c, 1e-9, &ev.r) == LCS_OK);
  CHECK(std::strtod(lcs_report_get(ev.r, "value"), nullptr) == doctest::Approx(1.5 + std::sqrt(2.0) / 4).epsilon(1e-12));
  CHECK(field(ev.r, "violated") == "true");

  Report mem;
  REQUIRE(lcs_membership(c, 1e-9, &mem.r) == LCS_OK);
  CHECK(field(mem.r, "member") == "false");
  CHECK(field(mem.r, "certified") == "true");
  CHECK(lcs_report_attachment(mem.r, "separating_functional") != nullptr);
  lcs_report* none = nullptr;
  CHECK(lcs_membership(c, 0, &none) == LCS_ERR_ARGUMENT);

  Report mc;
  REQUIRE(lcs_marginal_causal(c, 1e-9, &mc.r) == LCS_OK);
  CHECK(field(mc.r, "causal") == "true");

  char* json = nullptr;
  REQUIRE(lcs_setup_to_json(s, &json) == LCS_OK);
  lcs_setup* again = nullptr;
  CHECK(lcs_setup_parse(json, &again) == LCS_OK);
  lcs_string_free(json);
  CHECK(lcs_setup_set_postprocess(again, "relabel") == LCS_OK);
  CHECK(lcs_setup_set_postprocess(again, "bogus") == LCS_ERR_ARGUMENT);
  CHECK(lcs_setup_set_variant(again, LCS_VARIANT_WITHOUT_Z) == LCS_OK);
  lcs_correlation* c2 = nullptr;
  REQUIRE(lcs_simulate(again, &c2) == LCS_OK);
  CHECK(lcs_correlation_size(c2) == 128u);

  lcs_correlation* exact = nullptr;
  REQUIRE(lcs_correlation_convert(c, 1, &exact) == LCS_OK);
  CHECK(lcs_correlation_is_exact(exact));
  double x = 0, y = 0;
  CHECK(lcs_correlation_entry(c, 5, &x) == LCS_OK);
  CHECK(lcs_correlation_entry(exact, 5, &y) == LCS_OK);
  CHECK(std::abs(x - y) < 1e-11);
  CHECK(lcs_correlation_entry(c, 100000, &x) == LCS_ERR_ARGUMENT);

  lcs_correlation_free(exact);
  lcs_correlation_free(c2);
  lcs_setup_free(again);
  lcs_inequality_free(q);
  lcs_correlation_free(c);
  lcs_setup_free(s);
}

TEST_CASE("parse errors report positions") {
  lcs_correlation* c = nullptr;
  CHECK(lcs_correlation_parse("{\n \"scenario\": 3}", &c) == LCS_ERR_PARSE);
  CHECK(c == nullptr);
  CHECK(lcs_last_error_line() == 2);
  CHECK(lcs_last_error_column() > 0);
  lcs_inequality* q = nullptr;
  CHECK(lcs_inequality_parse("P[b=0 | y=0]\n<= x\n", "t", LCS_VARIANT_WITHOUT_Z, &q) == LCS_ERR_PARSE);
  CHECK(lcs_last_error_line() == 2);
  REQUIRE(lcs_inequality_parse("P[b=0 | y=0]\n<= 1\n", "t", LCS_VARIANT_WITHOUT_Z, &q) == LCS_OK);
  char* text = nullptr;
  REQUIRE(lcs_inequality_to_text(q, &text) == LCS_OK);
  CHECK(std::string(text).find("<= 1") != std::string::npos);
  lcs_string_free(text);
  lcs_inequality_free(q);
}

TEST_CASE("vertices and face dimensions") {
  lcs_vertex_options opt{};
  opt.variant = LCS_VARIANT_DEFAULT;
  Report rep;
  REQUIRE(lcs_vertices("C1", &opt, &rep.r) == LCS_OK);
  CHECK(field(rep.r, "vertices") == "64");
  const char* file = lcs_report_attachment(rep.r, "vertex_file");
  REQUIRE(file);
  lcs_report* none = reinterpret_cast<lcs_report*>(1);
  CHECK(lcs_vertices("XY", &opt, &none) == LCS_ERR_ARGUMENT);
  CHECK(none == nullptr);

  lcs_inequality* q = nullptr;
  REQUIRE(lcs_inequality_builtin("iv", LCS_VARIANT_DEFAULT, &q) == LCS_OK);
  Report fd;
  REQUIRE(lcs_face_dimension(q, nullptr, "none", &fd.r) == LCS_OK);
  CHECK(field(fd.r, "dimension") == "83");
  CHECK(lcs_face_dimension(q, nullptr, "sideways", &none) == LCS_ERR_ARGUMENT);
  lcs_inequality_free(q);

  // Report field iteration covers the summary.
  std::string joined;
  for (size_t i = 0; i < lcs_report_field_count(rep.r); ++i)
    joined += std::string(i ? " " : "") + lcs_report_field_key(rep.r, i) + "=" + lcs_report_field_value(rep.r, i);
  CHECK(joined == lcs_report_summary(rep.r));
}
