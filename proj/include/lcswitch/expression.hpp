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

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcswitch/scenario.hpp"

namespace lcs {

/// Integer-valued expressions over scenario variables.
///
/// Grammar, loosest binding first:
///
///     event   := cond (',' cond)*          conjunction
///     cond    := xor (('=' | '!=') xor)*   chains: a=b=c means a=b and b=c
///     xor     := sum ('^' sum)*
///     sum     := prod (('+' | '-') prod)*
///     prod    := unary (('&' | '*') unary)*
///     unary   := ('!' | '-') unary | atom
///     atom    := integer | identifier | '(' event ')'
///
/// '&' is bitwise and, which is multiplication on {0,1}. An expression used as
/// an event is true when it evaluates to a nonzero value.
class Expr {
 public:
  struct Node;

  static Expr parse(std::string_view text);
  /// Parses only the `xor` level (no comparisons or commas), as used on the
  /// right-hand side of a relabelling rule.
  static Expr parse_value(std::string_view text);
  static Expr constant(int value);
  static Expr variable(std::string name);

  std::string to_string() const;
  std::set<std::string> variables() const;
  /// The variable name when the expression is a bare variable.
  std::optional<std::string> as_variable() const;

  const Node& root() const { return *root_; }

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
  friend class ExprParser;
};

/// An expression with its variable names resolved to assignment slots,
/// compiled to a small stack program.
class BoundExpr {
 public:
  BoundExpr() = default;
  BoundExpr(const Expr& expr, const Scenario& scenario);

  /// `assignment` holds all outcomes, then all settings (see VarRef::slot).
  int eval(std::span<const int> assignment) const;
  bool holds(std::span<const int> assignment) const { return eval(assignment) != 0; }

  enum class Op : unsigned char { Const, Var, Not, Neg, Add, Sub, Mul, Xor, Eq, Ne, And };
  struct Instr {
    Op op;
    int arg;
  };

 private:
  std::vector<Instr> code_;
};

}  // namespace lcs
