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

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "lcswitch/errors.hpp"
#include "lcswitch/quantum.hpp"
#include "support/oracles.hpp"

using namespace lcs;

namespace {

constexpr double kPi = std::numbers::pi;
const double kDefault = 1.5 + std::numbers::sqrt2 / 4;

template <std::size_t N>
std::array<Complex, N> random_ket(oracle::Gen& gen) {
  std::array<Complex, N> k;
  double norm = 0;
  for (auto& a : k) {
    a = Complex(gen.real(-1, 1), gen.real(-1, 1));
    norm += std::norm(a);
  }
  for (auto& a : k) a /= std::sqrt(norm);
  return k;
}

SwitchSetup random_setup(oracle::Gen& gen) {
  SwitchSetup s;
  s.target = random_ket<2>(gen);
  s.control_bob = random_ket<4>(gen);
  for (auto& d : s.bob) d = Direction{gen.real(-kPi, kPi), gen.real(-kPi, kPi)};
  for (auto& d : s.charlie) d = Direction{gen.real(-kPi, kPi), gen.real(-kPi, kPi)};
  s.postprocess = gen.uniform(0, 1) ? CharliePostprocess::Relabel : CharliePostprocess::None;
  s.variant = gen.uniform(0, 1) ? Variant::WithZ : Variant::WithoutZ;
  return s;
}

}  // namespace

TEST_CASE("simulator agrees with an independent Born-rule computation") {
  oracle::Gen gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    const SwitchSetup s = random_setup(gen);
    const FloatCorrelation got = correlation(s);
    const FloatCorrelation want = oracle::simulate(s);
    REQUIRE(got.scenario() == want.scenario());
    double worst = 0;
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
    CHECK(worst < 1e-12);
    CHECK(validate(got).ok());
  }
}

TEST_CASE("default setup value") {
  const SwitchSetup s = SwitchSetup::defaults();
  const auto rec = builtin("main");
  CHECK(inequality_value(s, rec) == doctest::Approx(kDefault).epsilon(1e-12));
  CHECK(oracle::main_value(oracle::simulate(s)) == doctest::Approx(kDefault).epsilon(1e-12));
  CHECK(evaluate(rec, correlation(s)).violated);
}

TEST_CASE("switch correlations are nonsignalling towards and from Bob") {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    SwitchSetup s = random_setup(gen);
    s.postprocess = CharliePostprocess::None;
    const auto p = correlation(s);
    const bool z = s.variant == Variant::WithZ;
    CHECK(check_independence(p, z ? IndependenceRelation{{"b"}, {"x1", "x2", "z"}}
                                  : IndependenceRelation{{"b"}, {"x1", "x2"}}));
    CHECK(check_independence(p, {{"a1", "a2", "c"}, {"y"}}));
    // The Alices by themselves cannot see Bob or Charlie's settings.
    if (z) CHECK(check_independence(p, {{"a1", "a2"}, {"z"}}));
  }
}

TEST_CASE("relabel post-processing") {
  oracle::Gen gen(6);
  SwitchSetup s = random_setup(gen);
  s.postprocess = CharliePostprocess::Relabel;
  const auto p = correlation(s);
  const auto as = oracle::assignments(p.scenario());
  for (std::size_t i = 0; i < as.size(); ++i)
    if (as[i].x2 == 1 && as[i].c != as[i].a1) CHECK(p[i] == 0.0);
  SwitchSetup plain = s;
  plain.postprocess = CharliePostprocess::None;
  const auto q = correlation(plain);
  // Rows with x2 = 0 are untouched.
  for (std::size_t i = 0; i < as.size(); ++i)
    if (as[i].x2 == 0) CHECK(p[i] == doctest::Approx(q[i]).epsilon(1e-14));
  CHECK(parse_postprocess(to_string(CharliePostprocess::Relabel)) == CharliePostprocess::Relabel);
  CHECK_THROWS(parse_postprocess("sometimes"));
}

TEST_CASE("two-qubit measurement probabilities") {
  oracle::Gen gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ket = random_ket<4>(gen);
    const Direction d1{gen.real(-kPi, kPi), gen.real(-kPi, kPi)}, d2{gen.real(-kPi, kPi), gen.real(-kPi, kPi)};
    const auto probs = two_qubit_probabilities(ket, d1, d2);
    double total = 0;
    for (int o1 = 0; o1 < 2; ++o1)
      for (int o2 = 0; o2 < 2; ++o2) {
        const auto k1 = d1.ket(o1), k2 = d2.ket(o2);
        Complex amp = 0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) amp += std::conj(k1[i]) * std::conj(k2[j]) * ket[2 * i + j];
        CHECK(probs[2 * o1 + o2] == doctest::Approx(std::norm(amp)).epsilon(1e-12));
        total += probs[2 * o1 + o2];
      }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Maximally entangled pair measured along Z and Z+X: cos^2(pi/8) agreement.
  const std::array<Complex, 4> phi{std::numbers::sqrt2 / 2, 0, 0, std::numbers::sqrt2 / 2};
  const auto p = two_qubit_probabilities(phi, Direction{0}, Direction{kPi / 4});
  CHECK(p[0] + p[3] == doctest::Approx(std::pow(std::cos(kPi / 8), 2)).epsilon(1e-12));
}

TEST_CASE("direction kets are orthonormal") {
  oracle::Gen gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Direction d{gen.real(-kPi, kPi), gen.real(-kPi, kPi)};
    const auto k0 = d.ket(0), k1 = d.ket(1);
    CHECK(std::norm(k0[0]) + std::norm(k0[1]) == doctest::Approx(1.0));
    CHECK(std::abs(std::conj(k0[0]) * k1[0] + std::conj(k0[1]) * k1[1]) < 1e-14);
  }
}

TEST_CASE("unnormalised kets are rejected") {
  SwitchSetup s;
  s.target = {1.0, 1.0};
  CHECK_THROWS_AS(correlation(s), PreconditionError);
}

TEST_CASE("switch branch operators") {
  const ComplexMatrix k = switch_branch_operator(1, 0, 0, 1);
  REQUIRE(k.rows == 4u);
  ComplexMatrix want(4, 4);
  // Control 0: |0><1|1><0| = |0><0|. Control 1: |1><0|0><1| = |1><1|.
  want(0, 0) = 1.0;
  want(3, 3) = 1.0;
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(k.data[i] - want.data[i]) < 1e-15);
}

TEST_CASE("angle optimisation respects the ceiling") {
  OptimizeOptions opt;
  opt.grid_step = kPi / 12;
  const auto r = optimize_angles(builtin("main"), SwitchSetup::defaults(), {}, opt);
  CHECK(r.value <= kDefault + 1e-6);
  CHECK(r.value >= r.grid_value);
  CHECK(r.value == doctest::Approx(kDefault).epsilon(1e-6));
  CHECK(inequality_value(r.setup, builtin("main")) == doctest::Approx(r.value).epsilon(1e-12));

  // Fixing every angle leaves the start point alone.
  const auto fixed = optimize_angles(builtin("main"), SwitchSetup::defaults(), FreeAngles{false, false, false, false, false}, opt);
  CHECK(fixed.value == doctest::Approx(kDefault).epsilon(1e-12));
}

TEST_CASE("inequality (i) with Charlie's relabelling") {
  SwitchSetup start;
  start.variant = Variant::WithoutZ;
  start.postprocess = CharliePostprocess::Relabel;
  OptimizeOptions opt;
  opt.grid_step = kPi / 30;
  const auto r = optimize_angles(builtin("i"), start, {}, opt);
  CHECK(std::abs(r.value - 1.8274) <= 1e-3);
  CHECK(r.value > 7.0 / 4);
}
