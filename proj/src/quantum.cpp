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

#include "lcswitch/quantum.hpp"

#include <gsl/gsl_multimin.h>

#include <cmath>
#include <functional>

#include "lcswitch/errors.hpp"

namespace lcs {

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols != b.rows) throw PreconditionError("matrix shapes do not match");
  ComplexMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Complex x = a(i, k);
      if (x == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw PreconditionError("matrix shapes do not match");
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l) c(i * b.rows + k, j * b.cols + l) = a(i, j) * b(k, l);
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

ComplexMatrix qubit_outer(int i, int j) {
  ComplexMatrix m(2, 2);
  m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1.0;
  return m;
}

ComplexMatrix switch_branch_operator(int x1, int a1, int x2, int a2) {
  for (int v : {x1, a1, x2, a2})
    if (v != 0 && v != 1) throw PreconditionError("switch branch arguments must be 0 or 1");
  const ComplexMatrix e = qubit_outer(x1, a1), f = qubit_outer(x2, a2);
  return kron(qubit_outer(0, 0), f * e) + kron(qubit_outer(1, 1), e * f);
}

std::array<Complex, 2> Direction::ket(int outcome) const {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const Complex w = std::polar(1.0, phase);
  if (outcome == 0) return {Complex(c), w * s};
  return {Complex(-s), w * c};
}

std::string_view to_string(CharliePostprocess p) { return p == CharliePostprocess::None ? "none" : "relabel"; }

CharliePostprocess parse_postprocess(std::string_view text) {
  if (text == "none") return CharliePostprocess::None;
  if (text == "relabel") return CharliePostprocess::Relabel;
  throw ParseError("unknown post-processing '" + std::string(text) + "' (expected none or relabel)");
}

namespace {

// Output state over (control, bob, target), index 4c + 2b + t, for every
// instrument branch (x1, x2, a1, a2) packed as x1 + 2x2 + 4a1 + 8a2.
using State = std::array<Complex, 8>;
using Branches = std::array<State, 16>;

void check_norm(std::span<const Complex> ket, const char* what) {
  double n = 0;
  for (const auto& a : ket) n += std::norm(a);
  if (std::abs(n - 1.0) > 1e-12) throw PreconditionError(std::string(what) + " ket is not normalized");
}

Branches branch_states(const SwitchSetup& s) {
  check_norm(s.target, "target");
  check_norm(s.control_bob, "control-Bob");
  Branches out{};
  for (int k = 0; k < 16; ++k) {
    const int x1 = k & 1, x2 = (k >> 1) & 1, a1 = (k >> 2) & 1, a2 = (k >> 3) & 1;
    const ComplexMatrix w = switch_branch_operator(x1, a1, x2, a2);
    State& st = out[static_cast<std::size_t>(k)];
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t t = 0; t < 2; ++t) {
          Complex acc;
          for (std::size_t c0 = 0; c0 < 2; ++c0)
            for (std::size_t t0 = 0; t0 < 2; ++t0)
              acc += w(2 * c + t, 2 * c0 + t0) * s.control_bob[2 * c0 + b] * s.target[t0];
          st[4 * c + 2 * b + t] = acc;
        }
  }
  return out;
}

// Amplitudes over (control, target) after Bob's outcome b: u[2c + t].
using Partial = std::array<Complex, 4>;

Partial project_bob(const State& st, const std::array<Complex, 2>& bra) {
  Partial u{};
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t t = 0; t < 2; ++t)
      u[2 * c + t] = std::conj(bra[0]) * st[4 * c + t] + std::conj(bra[1]) * st[4 * c + 2 + t];
  return u;
}

double project_charlie(const Partial& u, const std::array<Complex, 2>& bra) {
  double p = 0;
  for (std::size_t t = 0; t < 2; ++t) p += std::norm(std::conj(bra[0]) * u[t] + std::conj(bra[1]) * u[2 + t]);
  return p;
}

int reported_c(CharliePostprocess post, int c_raw, int x2, int a1) {
  if (post == CharliePostprocess::None) return c_raw;
  return x2 ? a1 : c_raw;
}

Variant record_variant(const InequalityRecord& rec) {
  auto v = rec.lhs.scenario.variant();
  if (!v) throw ScenarioError("inequality " + rec.name + " is not over the four-party scenario");
  return *v;
}

}  // namespace

FloatCorrelation correlation(const SwitchSetup& setup) {
  const Scenario sc = Scenario::four_party(setup.variant);
  const bool with_z = setup.variant == Variant::WithZ;
  const Branches br = branch_states(setup);
  std::vector<double> p(sc.size(), 0.0);
  std::array<int, 4> outs{}, sets{};
  for (int k = 0; k < 16; ++k) {
    const int x1 = k & 1, x2 = (k >> 1) & 1, a1 = (k >> 2) & 1, a2 = (k >> 3) & 1;
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b) {
        const Partial u = project_bob(br[static_cast<std::size_t>(k)], setup.bob[static_cast<std::size_t>(y)].ket(b));
        for (int z = 0; z < (with_z ? 2 : 1); ++z)
          for (int cr = 0; cr < 2; ++cr) {
            const double q = project_charlie(u, setup.charlie[static_cast<std::size_t>(z)].ket(cr));
            outs = {a1, a2, b, reported_c(setup.postprocess, cr, x2, a1)};
            sets = {x1, x2, y, z};
            p[sc.index(outs, sets)] += q;
          }
      }
  }
  return FloatCorrelation(sc, std::move(p));
}

double inequality_value(const SwitchSetup& setup, const InequalityRecord& rec) {
  SwitchSetup s = setup;
  s.variant = record_variant(rec);
  return rec.lhs(correlation(s));
}

std::array<double, 4> two_qubit_probabilities(const std::array<Complex, 4>& ket, const Direction& first,
                                              const Direction& second) {
  std::array<double, 4> out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto u = first.ket(i), v = second.ket(j);
      Complex amp;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) amp += std::conj(u[a]) * std::conj(v[b]) * ket[2 * a + b];
      out[static_cast<std::size_t>(2 * i + j)] = std::norm(amp);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Optimization

namespace {

std::vector<double> grid(double step) {
  const auto count = static_cast<std::size_t>(std::llround(2 * std::numbers::pi / step));
  if (count == 0 || count > 100000) throw PreconditionError("grid step out of range");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = static_cast<double>(i) * step;
  return g;
}

struct NelderMeadTarget {
  std::function<double(const gsl_vector*)> f;
};

double nm_eval(const gsl_vector* x, void* params) { return static_cast<NelderMeadTarget*>(params)->f(x); }

}  // namespace

OptimizeResult optimize_angles(const InequalityRecord& rec, const SwitchSetup& start, const FreeAngles& free,
                               const OptimizeOptions& options) {
  SwitchSetup base = start;
  base.variant = record_variant(rec);
  const bool with_z = base.variant == Variant::WithZ;
  const Scenario sc = Scenario::four_party(base.variant);
  const Branches br = branch_states(base);
  const RationalVector& coeff = rec.lhs.coefficients;
  std::vector<double> w(coeff.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = coeff[i].get_d();

  const std::vector<double> g = grid(options.grid_step);
  auto values = [&](bool is_free, double fixed) { return is_free ? g : std::vector<double>{fixed}; };
  const std::array<std::vector<double>, 2> bob_vals{values(free.bob0, base.bob[0].theta),
                                                    values(free.bob1, base.bob[1].theta)};
  const std::array<std::vector<double>, 2> ch_vals{values(free.charlie0, base.charlie[0].theta),
                                                   values(with_z && free.charlie1, base.charlie[1].theta)};
  const int zs = with_z ? 2 : 1;

  // table[y][z][i][j]: contribution of the (y, z) setting block with Bob's
  // y angle at index i and Charlie's z angle at index j.
  std::array<std::array<std::vector<std::vector<double>>, 2>, 2> table;
  std::array<int, 4> outs{}, sets{};
  for (int y = 0; y < 2; ++y) {
    const auto& bv = bob_vals[static_cast<std::size_t>(y)];
    // Bob projections for every angle value, branch and outcome.
    std::vector<std::array<Partial, 32>> proj(bv.size());
    for (std::size_t i = 0; i < bv.size(); ++i)
      for (int k = 0; k < 16; ++k)
        for (int b = 0; b < 2; ++b) {
          Direction d = base.bob[static_cast<std::size_t>(y)];
          d.theta = bv[i];
          proj[i][static_cast<std::size_t>(2 * k + b)] = project_bob(br[static_cast<std::size_t>(k)], d.ket(b));
        }
    for (int z = 0; z < zs; ++z) {
      const auto& cv = ch_vals[static_cast<std::size_t>(z)];
      auto& t = table[static_cast<std::size_t>(y)][static_cast<std::size_t>(z)];
      t.assign(bv.size(), std::vector<double>(cv.size(), 0.0));
      for (std::size_t j = 0; j < cv.size(); ++j) {
        Direction d = base.charlie[static_cast<std::size_t>(z)];
        d.theta = cv[j];
        const std::array<std::array<Complex, 2>, 2> kets{d.ket(0), d.ket(1)};
        for (int k = 0; k < 16; ++k) {
          const int x1 = k & 1, x2 = (k >> 1) & 1, a1 = (k >> 2) & 1, a2 = (k >> 3) & 1;
          for (int b = 0; b < 2; ++b)
            for (int cr = 0; cr < 2; ++cr) {
              outs = {a1, a2, b, reported_c(base.postprocess, cr, x2, a1)};
              sets = {x1, x2, y, z};
              const double coef = w[sc.index(outs, sets)];
              if (coef == 0.0) continue;
              for (std::size_t i = 0; i < bv.size(); ++i)
                t[i][j] += coef * project_charlie(proj[i][static_cast<std::size_t>(2 * k + b)],
                                                  kets[static_cast<std::size_t>(cr)]);
            }
        }
      }
    }
  }

  OptimizeResult res;
  const double offset = rec.lhs.offset.get_d();
  double best = -INFINITY;
  std::array<std::size_t, 4> arg{};
  const std::size_t nc1 = with_z ? ch_vals[1].size() : 1;
  res.grid_points = static_cast<std::uint64_t>(bob_vals[0].size()) * bob_vals[1].size() * ch_vals[0].size() * nc1;
  for (std::size_t i0 = 0; i0 < bob_vals[0].size(); ++i0)
    for (std::size_t i1 = 0; i1 < bob_vals[1].size(); ++i1) {
      double total = offset;
      std::array<std::size_t, 2> jbest{};
      for (int z = 0; z < zs; ++z) {
        const auto zi = static_cast<std::size_t>(z);
        double zb = -INFINITY;
        for (std::size_t j = 0; j < ch_vals[zi].size(); ++j) {
          const double v = table[0][zi][i0][j] + table[1][zi][i1][j];
          if (v > zb) {
            zb = v;
            jbest[zi] = j;
          }
        }
        total += zb;
      }
      if (total > best) {
        best = total;
        arg = {i0, i1, jbest[0], jbest[1]};
      }
    }
  res.grid_value = best;
  SwitchSetup best_setup = base;
  best_setup.bob[0].theta = bob_vals[0][arg[0]];
  best_setup.bob[1].theta = bob_vals[1][arg[1]];
  best_setup.charlie[0].theta = ch_vals[0][arg[2]];
  if (with_z) best_setup.charlie[1].theta = ch_vals[1][arg[3]];

  // Local refinement over the free parameters.
  std::vector<double*> params;
  auto add_dir = [&](Direction& d, bool is_free) {
    if (!is_free) return;
    params.push_back(&d.theta);
    if (free.bloch) params.push_back(&d.phase);
  };
  SwitchSetup work = best_setup;
  add_dir(work.bob[0], free.bob0);
  add_dir(work.bob[1], free.bob1);
  add_dir(work.charlie[0], free.charlie0);
  if (with_z) add_dir(work.charlie[1], free.charlie1);

  res.setup = best_setup;
  res.value = inequality_value(best_setup, rec);
  if (params.empty()) return res;

  const std::size_t n = params.size();
  NelderMeadTarget target{[&](const gsl_vector* x) {
    for (std::size_t i = 0; i < n; ++i) *params[i] = gsl_vector_get(x, i);
    return -inequality_value(work, rec);
  }};
  gsl_multimin_function fn{&nm_eval, n, &target};
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* step = gsl_vector_alloc(n);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x, i, *params[i]);
  gsl_vector_set_all(step, options.grid_step / 2);
  gsl_multimin_fminimizer* nm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(nm, &fn, x, step);
  std::size_t it = 0;
  for (; it < options.max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(nm) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm), options.step_tolerance) == GSL_SUCCESS) break;
  }
  res.iterations = it;
  const gsl_vector* xb = gsl_multimin_fminimizer_x(nm);
  for (std::size_t i = 0; i < n; ++i) *params[i] = gsl_vector_get(xb, i);
  const double refined = inequality_value(work, rec);
  gsl_multimin_fminimizer_free(nm);
  gsl_vector_free(step);
  gsl_vector_free(x);
  if (refined > res.value) {
    res.value = refined;
    res.setup = work;
  }
  return res;
}

}  // namespace lcs
