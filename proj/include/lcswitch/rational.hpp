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

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace lcs {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// num/den in lowest terms. Two-argument mpq_class construction does not
/// reduce, and unreduced values compare wrongly.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "num/den", an integer, or a decimal such as "-0.125" or "1e-3".
/// Decimals are converted exactly (0.1 is 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is one.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Best rational approximation of `x` with denominator at most
/// `max_denominator`, by continued fractions.
Rational approximate(double x, const Integer& max_denominator);

/// Exact value of a finite double.
Rational exact_from_double(double x);

}  // namespace lcs
