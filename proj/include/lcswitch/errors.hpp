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

#include <stdexcept>
#include <string>

namespace lcs {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A correlation table does not cover the full scenario index set.
class MissingEntryError : public Error {
 public:
  using Error::Error;
};

/// An object was used with a scenario it was not built for, or an expression
/// references a variable the scenario does not have.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(format(what, line, column)), message_(what), line_(line), column_(column) {}

  /// The message without the position prefix.
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) +
           ": " + what;
  }
  std::string message_;
  int line_;
  int column_;
};

/// Input violates a documented precondition (e.g. a signalling correlation
/// where a nonsignalling one is required).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configurable resource budget (nodes, rays, orbit size) was exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace lcs
