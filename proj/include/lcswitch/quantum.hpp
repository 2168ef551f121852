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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "lcswitch/correlation.hpp"
#include "lcswitch/inequality.hpp"

namespace lcs {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Complex& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
/// |i><j| on a qubit.
ComplexMatrix qubit_outer(int i, int j);

/// The switch branch for measure-and-prepare Kraus operators |x><a| on the
/// target, over control (x) target with the control as the high index:
/// |0><0| (x) |x2><a2|x1><a1| + |1><1| (x) |x1><a1|x2><a2|.
ComplexMatrix switch_branch_operator(int x1, int a1, int x2, int a2);

/// Measurement direction in the XZ plane at angle theta from Z; `phase`
/// tilts it out of the plane. Outcome 0 projects on
/// cos(theta/2)|0> + e^{i phase} sin(theta/2)|1>.
struct Direction {
  double theta = 0.0;
  double phase = 0.0;

  /// Ket of `outcome` (0 or 1); the two kets are orthonormal.
  std::array<Complex, 2> ket(int outcome) const;
};

enum class CharliePostprocess {
  None,
  /// c = (x2 + 1) c' + x2 a1 over GF(2): Charlie reports a1 when x2 = 1.
  Relabel,
};

std::string_view to_string(CharliePostprocess p);
CharliePostprocess parse_postprocess(std::string_view text);

/// The entangled switch experiment. Amplitudes of `control_bob` are indexed
/// 2 * control + bob.
struct SwitchSetup {
  std::array<Complex, 2> target{1.0, 0.0};
  std::array<Complex, 4> control_bob{std::numbers::sqrt2 / 2, 0.0, 0.0, std::numbers::sqrt2 / 2};
  std::array<Direction, 2> bob{Direction{0.0}, Direction{std::numbers::pi / 2}};
  std::array<Direction, 2> charlie{Direction{std::numbers::pi / 4}, Direction{-std::numbers::pi / 4}};
  CharliePostprocess postprocess = CharliePostprocess::None;
  /// Without z Charlie always measures along charlie[0].
  Variant variant = Variant::WithZ;

  /// Bob along Z and X, Charlie along Z+X and Z-X.
  static SwitchSetup defaults() { return {}; }
};

/// Born-rule table p(a1 a2 b c | x1 x2 y [z]). Throws PreconditionError for
/// kets off unit norm by more than 1e-12.
FloatCorrelation correlation(const SwitchSetup& setup);

/// The inequality's functional on the simulated table, simulated over the
/// inequality's own scenario variant.
double inequality_value(const SwitchSetup& setup, const InequalityRecord& rec);

/// Probabilities of two qubit measurements on a two-qubit ket, indexed
/// 2 * first + second.
std::array<double, 4> two_qubit_probabilities(const std::array<Complex, 4>& ket, const Direction& first,
                                              const Direction& second);

/// Which measurement angles vary in optimize_angles.
struct FreeAngles {
  bool bob0 = true;
  bool bob1 = true;
  bool charlie0 = true;
  bool charlie1 = true;
  /// Also vary the out-of-plane phases (local refinement only).
  bool bloch = false;
};

struct OptimizeOptions {
  double grid_step = std::numbers::pi / 60;
  /// Simplex size at which the local refinement stops.
  double step_tolerance = 1e-6;
  std::size_t max_iterations = 20000;
};

struct OptimizeResult {
  SwitchSetup setup;
  double value = 0.0;
  /// Best value over the grid, before refinement.
  double grid_value = 0.0;
  std::uint64_t grid_points = 0;
  std::size_t iterations = 0;
};

/// Grid search over the free angles followed by Nelder-Mead refinement from
/// the best grid point. The grid maximum is exact over the grid (the value
/// separates into per-(y, z) terms); ties keep the lexicographically first
/// angle tuple.
OptimizeResult optimize_angles(const InequalityRecord& rec, const SwitchSetup& start, const FreeAngles& free = {},
                               const OptimizeOptions& options = {});

}  // namespace lcs
