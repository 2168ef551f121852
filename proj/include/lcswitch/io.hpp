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

#include <complex>
#include <string>
#include <string_view>

#include "lcswitch/correlation.hpp"
#include "lcswitch/polytope.hpp"
#include "lcswitch/quantum.hpp"

namespace lcs {

// JSON documents. Malformed input throws ParseError with the line and column
// of the offending token or record.
//
// Correlation:
//   {"scenario": [{"name": "A1", "setting": "x1", "settings": 2,
//                  "outcome": "a1", "outcomes": 2}, ...],
//    "entries": [{"outcomes": [0,0,0,0], "settings": [0,0,0,0], "p": "1/16"}, ...]}
// "scenario" may also be the one-line form of Scenario::describe(). String
// probabilities ("num/den" or decimal) are exact; if any "p" is a JSON number
// the table is read as floating point.
AnyCorrelation read_correlation(std::string_view text);
std::string write_correlation(const ExactCorrelation& corr);
/// Floating entries are written with round-trip precision.
std::string write_correlation(const FloatCorrelation& corr);

// Switch setup:
//   {"variant": "with-z", "postprocess": "none",
//    "target": ["1", "0"], "control_bob": ["0.7071067811865476", "0", "0", "0.7071067811865476"],
//    "bob": [0, 1.5707963267948966], "charlie": [0.7853981633974483, -0.7853981633974483]}
// Every field is optional and defaults to SwitchSetup{}. Angles are radians,
// either numbers or {"theta": t, "phase": f}; amplitudes are "re+im i"
// strings such as "0.5-0.25i".
SwitchSetup read_setup(std::string_view text);
std::string write_setup(const SwitchSetup& setup);
/// "1", "-0.5i", "0.25+0.5i", "3e-1-2i".
std::complex<double> parse_complex(std::string_view text);

// Hidden-variable model: {"mu": "1/3", "branch1": <correlation>, "branch2": <correlation>}.
HiddenVariableModel read_model(std::string_view text);
std::string write_model(const HiddenVariableModel& model);

/// {"scenario": "<description>", "coefficients": ["num/den", ...], "offset": "num/den"}.
std::string write_functional(const LinearFunctional& f);
LinearFunctional read_functional(std::string_view text);

/// Whole file contents; throws Error when it cannot be read. "-" reads
/// standard input.
std::string read_text_file(const std::string& path);

}  // namespace lcs
