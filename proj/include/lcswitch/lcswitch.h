/*
 * Copyright 2026 The lcswitch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to lcswitch.
 *
 * Objects are opaque handles created by *_parse / *_builtin / *_preset style
 * functions and released with the matching *_free. Every fallible function
 * returns an lcs_status; on failure lcs_last_error() describes the problem
 * (thread-local, valid until the next failing call on the same thread) and
 * the output handle is left NULL.
 *
 * Results of the analysis functions come back as an lcs_report: ordered
 * scalar fields, rendered on one line by lcs_report_summary(), plus named
 * text attachments such as JSON documents or vertex files.
 *
 * Strings returned through char** out parameters are owned by the caller and
 * released with lcs_string_free(). const char* results are owned by the
 * handle they came from.
 */

#ifndef LCSWITCH_H
#define LCSWITCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LCS_API __declspec(dllexport)
#else
#define LCS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lcs_status {
  LCS_OK = 0,
  LCS_ERR_ARGUMENT = 1,     /* NULL handle, bad option value, unknown name */
  LCS_ERR_PARSE = 2,        /* malformed text; see lcs_last_error_line() */
  LCS_ERR_SCENARIO = 3,     /* objects built over different scenarios */
  LCS_ERR_MISSING_ENTRY = 4,
  LCS_ERR_PRECONDITION = 5, /* e.g. a signalling table where none is allowed */
  LCS_ERR_BUDGET = 6,
  LCS_ERR_INTERNAL = 7
} lcs_status;

typedef enum lcs_variant {
  /* The inequality's own variant, or with-z where there is no default. */
  LCS_VARIANT_DEFAULT = -1,
  LCS_VARIANT_WITH_Z = 0,
  LCS_VARIANT_WITHOUT_Z = 1
} lcs_variant;

typedef struct lcs_correlation lcs_correlation;
typedef struct lcs_inequality lcs_inequality;
typedef struct lcs_setup lcs_setup;
typedef struct lcs_report lcs_report;

LCS_API const char* lcs_version(void);
LCS_API const char* lcs_status_string(lcs_status status);
LCS_API const char* lcs_last_error(void);
/* 1-based position of the last LCS_ERR_PARSE, 0 when unknown. */
LCS_API int lcs_last_error_line(void);
LCS_API int lcs_last_error_column(void);
LCS_API void lcs_string_free(char* s);

/* ---- reports ---------------------------------------------------------- */

LCS_API size_t lcs_report_field_count(const lcs_report* r);
LCS_API const char* lcs_report_field_key(const lcs_report* r, size_t i);
LCS_API const char* lcs_report_field_value(const lcs_report* r, size_t i);
/* NULL when absent. */
LCS_API const char* lcs_report_get(const lcs_report* r, const char* key);
/* "key=value key=value ..." over all fields, in order. */
LCS_API const char* lcs_report_summary(const lcs_report* r);
/* NULL when absent. */
LCS_API const char* lcs_report_attachment(const lcs_report* r, const char* name);
LCS_API void lcs_report_free(lcs_report* r);

/* ---- correlations ----------------------------------------------------- */

/* JSON correlation document; exact when every probability is a string. */
LCS_API lcs_status lcs_correlation_parse(const char* json, lcs_correlation** out);
LCS_API lcs_status lcs_correlation_to_json(const lcs_correlation* c, char** out);
LCS_API int lcs_correlation_is_exact(const lcs_correlation* c);
LCS_API size_t lcs_correlation_size(const lcs_correlation* c);
LCS_API lcs_status lcs_correlation_entry(const lcs_correlation* c, size_t index, double* out);
/* Exact copy of a floating table (entries rounded to denominators at most
 * 10^12) or floating copy of an exact one. */
LCS_API lcs_status lcs_correlation_convert(const lcs_correlation* c, int exact, lcs_correlation** out);
LCS_API void lcs_correlation_free(lcs_correlation* c);

/* ---- inequalities ----------------------------------------------------- */

LCS_API size_t lcs_builtin_count(void);
LCS_API const char* lcs_builtin_name(size_t index);
LCS_API lcs_status lcs_inequality_builtin(const char* name, lcs_variant variant, lcs_inequality** out);
/* Inequality text in the catalogue syntax, e.g. "P[b=0 | y=0] <= 1". */
LCS_API lcs_status lcs_inequality_parse(const char* text, const char* name, lcs_variant variant,
                                        lcs_inequality** out);
LCS_API lcs_status lcs_inequality_to_text(const lcs_inequality* q, char** out);
LCS_API const char* lcs_inequality_name(const lcs_inequality* q);
LCS_API void lcs_inequality_free(lcs_inequality* q);

/* Fields: inequality, mode, value, bound, margin, violated. The correlation
 * is recompiled onto the inequality's scenario when they differ. */
LCS_API lcs_status lcs_evaluate(const lcs_inequality* q, const lcs_correlation* c, double tolerance,
                                lcs_report** out);

/* Fields: valid, tight, max, max_lc1, max_lc2. Attachments: witness and
 * witness_model (JSON) when tight. */
LCS_API lcs_status lcs_certify(const lcs_inequality* q, lcs_report** out);

/* Membership in LC. Floating tables need tolerance > 0 (l1 radius); exact
 * tables ignore it. Fields: member, certified, mode, robustness,
 * single_branch, and for non-members margin and farkas. Attachments: model
 * (JSON) or separating_functional (inequality text "f <= 0"). */
LCS_API lcs_status lcs_membership(const lcs_correlation* c, double tolerance, lcs_report** out);

/* ---- causal analysis -------------------------------------------------- */

/* Fields: marginal_ok, causal, issue. Attachment: marginal (JSON). */
LCS_API lcs_status lcs_marginal_causal(const lcs_correlation* c, double tolerance, lcs_report** out);
/* Checks a {mu, branch1, branch2} model document against an exact target.
 * Fields: ok, mixture, locality, order, violations. */
LCS_API lcs_status lcs_verify_model(const lcs_correlation* target, const char* model_json, int strict,
                                    lcs_report** out);

/* ---- quantum switch --------------------------------------------------- */

/* Presets: "fig3-default" (maximally entangled control and Bob, Bob along
 * Z and X, Charlie along Z+X and Z-X). */
LCS_API lcs_status lcs_setup_preset(const char* name, lcs_setup** out);
LCS_API lcs_status lcs_setup_parse(const char* json, lcs_setup** out);
LCS_API lcs_status lcs_setup_to_json(const lcs_setup* s, char** out);
/* "none" or "relabel". */
LCS_API lcs_status lcs_setup_set_postprocess(lcs_setup* s, const char* postprocess);
LCS_API lcs_status lcs_setup_set_variant(lcs_setup* s, lcs_variant variant);
LCS_API void lcs_setup_free(lcs_setup* s);

LCS_API lcs_status lcs_simulate(const lcs_setup* s, lcs_correlation** out);

enum {
  LCS_FREE_BOB0 = 1,
  LCS_FREE_BOB1 = 2,
  LCS_FREE_CHARLIE0 = 4,
  LCS_FREE_CHARLIE1 = 8,
  LCS_FREE_BLOCH = 16,
  LCS_FREE_ANGLES = 15
};

typedef struct lcs_optimize_options {
  double grid_step;       /* radians; <= 0 selects pi/60 */
  unsigned free_mask;     /* LCS_FREE_* bits; 0 selects LCS_FREE_ANGLES */
  double step_tolerance;  /* <= 0 selects 1e-6 */
  size_t max_iterations;  /* 0 selects 20000 */
} lcs_optimize_options;

/* Fields: inequality, value, grid_value, grid_points, iterations, bound,
 * violated. Attachment: setup (JSON). `options` may be NULL. */
LCS_API lcs_status lcs_optimize(const lcs_inequality* q, const lcs_setup* start, const lcs_optimize_options* options,
                                lcs_report** out);

/* ---- vertices --------------------------------------------------------- */

typedef struct lcs_vertex_options {
  lcs_variant variant;
  int use_group;          /* orbit representatives under the LC symmetries (without z only) */
  size_t budget;          /* orbit classes; 0 = unlimited */
  size_t ray_budget;      /* intermediate rays per double-description run; 0 = unlimited */
  unsigned threads;       /* 0 selects 1 */
  const char* checkpoint; /* may be NULL */
  int full;               /* "LC" only: full enumeration instead of the sampled check */
  uint64_t seed;
} lcs_vertex_options;

/* Polytopes NS, LC1, LC2, C1, C2: fields polytope, vertices, classes,
 * exhaustive, note; attachment vertex_file. "LC" (without z): the vertex
 * statistics report. `options` may be NULL. */
LCS_API lcs_status lcs_vertices(const char* polytope, const lcs_vertex_options* options, lcs_report** out);

/* group: "none", "lc" (full LC symmetry group) or "lc1" (the part fixing
 * LC1 and LC2). With vertex_file NULL the face of conv(LC1 u LC2) is
 * measured by LP. Fields: inequality, dimension, method. */
LCS_API lcs_status lcs_face_dimension(const lcs_inequality* q, const char* vertex_file, const char* group,
                                      lcs_report** out);

/* ---- acceptance --------------------------------------------------------- */

typedef struct lcs_reproduce_options {
  uint64_t seed;
  int full_enumeration;
  size_t budget;
} lcs_reproduce_options;

/* *table receives the report table; *passed is 1 when every criterion held.
 * `options` may be NULL. */
LCS_API lcs_status lcs_reproduce(const lcs_reproduce_options* options, char** table, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* LCSWITCH_H */
