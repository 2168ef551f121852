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

#include "lcswitch/expression.hpp"

#include <cctype>

#include "lcswitch/errors.hpp"

namespace lcs {

using Op = BoundExpr::Op;

struct Expr::Node {
  Op op;
  int value = 0;     // Const
  std::string name;  // Var
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_const(int v) { return std::make_shared<const Expr::Node>(Expr::Node{Op::Const, v, {}, {}, {}}); }
NodePtr make_var(std::string n) {
  return std::make_shared<const Expr::Node>(Expr::Node{Op::Var, 0, std::move(n), {}, {}});
}
NodePtr make_unary(Op op, NodePtr a) {
  return std::make_shared<const Expr::Node>(Expr::Node{op, 0, {}, std::move(a), {}});
}
NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  return std::make_shared<const Expr::Node>(Expr::Node{op, 0, {}, std::move(a), std::move(b)});
}

int precedence(Op op) {
  switch (op) {
    case Op::And: return 1;
    case Op::Eq:
    case Op::Ne: return 2;
    case Op::Xor: return 3;
    case Op::Add:
    case Op::Sub: return 4;
    case Op::Mul: return 5;
    case Op::Not:
    case Op::Neg: return 6;
    default: return 7;
  }
}

const char* symbol(Op op) {
  switch (op) {
    case Op::And: return ", ";
    case Op::Eq: return "=";
    case Op::Ne: return "!=";
    case Op::Xor: return " ^ ";
    case Op::Add: return " + ";
    case Op::Sub: return " - ";
    case Op::Mul: return "&";
    case Op::Not: return "!";
    case Op::Neg: return "-";
    default: return "";
  }
}

void print(const Expr::Node& n, std::string& out) {
  switch (n.op) {
    case Op::Const: out += std::to_string(n.value); return;
    case Op::Var: out += n.name; return;
    case Op::Not:
    case Op::Neg: {
      out += symbol(n.op);
      bool paren = precedence(n.lhs->op) < precedence(n.op);
      if (paren) out += '(';
      print(*n.lhs, out);
      if (paren) out += ')';
      return;
    }
    default: {
      int p = precedence(n.op);
      bool lp = precedence(n.lhs->op) < p;
      // Right operand needs parentheses at equal precedence for non-associative ops.
      bool rp = precedence(n.rhs->op) < p ||
                (precedence(n.rhs->op) == p && (n.op == Op::Sub || n.op == Op::Eq || n.op == Op::Ne));
      if (lp) out += '(';
      print(*n.lhs, out);
      if (lp) out += ')';
      out += symbol(n.op);
      if (rp) out += '(';
      print(*n.rhs, out);
      if (rp) out += ')';
    }
  }
}

void collect(const Expr::Node& n, std::set<std::string>& vars) {
  if (n.op == Op::Var) vars.insert(n.name);
  if (n.lhs) collect(*n.lhs, vars);
  if (n.rhs) collect(*n.rhs, vars);
}

}  // namespace

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr parse_event() {
    NodePtr n = event();
    expect_end();
    return Expr(n);
  }

  Expr parse_value() {
    NodePtr n = xor_expr();
    expect_end();
    return Expr(n);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " in expression '" + std::string(text_) + "'", 1,
                     static_cast<int>(pos_) + 1);
  }
  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  NodePtr event() {
    NodePtr n = cond();
    while (accept(",")) n = make_binary(Op::And, n, cond());
    return n;
  }

  NodePtr cond() {
    NodePtr first = xor_expr();
    NodePtr result;
    NodePtr prev = first;
    while (true) {
      Op op;
      if (accept("!=")) {
        op = Op::Ne;
      } else if (accept("==") || accept("=")) {
        op = Op::Eq;
      } else {
        break;
      }
      NodePtr next = xor_expr();
      NodePtr link = make_binary(op, prev, next);
      result = result ? make_binary(Op::And, result, link) : link;
      prev = next;
    }
    return result ? result : first;
  }

  NodePtr xor_expr() {
    NodePtr n = sum();
    while (accept("^")) n = make_binary(Op::Xor, n, sum());
    return n;
  }

  NodePtr sum() {
    NodePtr n = prod();
    while (true) {
      if (accept("+")) {
        n = make_binary(Op::Add, n, prod());
      } else if (peek("-") && !peek("->")) {
        ++pos_;
        n = make_binary(Op::Sub, n, prod());
      } else {
        return n;
      }
    }
  }

  NodePtr prod() {
    NodePtr n = unary();
    while (true) {
      if (peek("&&")) fail("use ',' for conjunction");
      if (accept("&") || accept("*")) {
        n = make_binary(Op::Mul, n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (peek("!=")) fail("unexpected '!='");
    if (accept("!")) return make_unary(Op::Not, unary());
    if (peek("-") && !peek("->")) {
      ++pos_;
      return make_unary(Op::Neg, unary());
    }
    return atom();
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = event();
      if (!accept(")")) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ - start > 6) fail("integer literal too long");
      return make_const(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '\''))
        ++pos_;
      return make_var(std::string(text_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Expr Expr::parse(std::string_view text) { return ExprParser(text).parse_event(); }
Expr Expr::parse_value(std::string_view text) { return ExprParser(text).parse_value(); }
Expr Expr::constant(int value) { return Expr(make_const(value)); }
Expr Expr::variable(std::string name) { return Expr(make_var(std::move(name))); }

std::optional<std::string> Expr::as_variable() const {
  if (root_->op != Op::Var) return std::nullopt;
  return root_->name;
}

std::string Expr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

std::set<std::string> Expr::variables() const {
  std::set<std::string> vars;
  collect(*root_, vars);
  return vars;
}

namespace {

void emit(const Expr::Node& n, const Scenario& scenario, std::vector<BoundExpr::Instr>& code) {
  switch (n.op) {
    case Op::Const: code.push_back({Op::Const, n.value}); return;
    case Op::Var:
      code.push_back({Op::Var, static_cast<int>(scenario.require(n.name).slot())});
      return;
    case Op::Not:
    case Op::Neg:
      emit(*n.lhs, scenario, code);
      code.push_back({n.op, 0});
      return;
    default:
      emit(*n.lhs, scenario, code);
      emit(*n.rhs, scenario, code);
      code.push_back({n.op, 0});
  }
}

}  // namespace

BoundExpr::BoundExpr(const Expr& expr, const Scenario& scenario) {
  emit(expr.root(), scenario, code_);
  int depth = 0;
  for (const Instr& in : code_) {
    if (in.op == Op::Const || in.op == Op::Var) {
      if (++depth > 64) throw Error("expression too deeply nested");
    } else if (in.op != Op::Not && in.op != Op::Neg) {
      --depth;
    }
  }
}

int BoundExpr::eval(std::span<const int> assignment) const {
  int stack[64];
  int top = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::Const: stack[top++] = in.arg; break;
      case Op::Var: stack[top++] = assignment[static_cast<std::size_t>(in.arg)]; break;
      case Op::Not: stack[top - 1] = stack[top - 1] == 0; break;
      case Op::Neg: stack[top - 1] = -stack[top - 1]; break;
      default: {
        int b = stack[--top];
        int& a = stack[top - 1];
        switch (in.op) {
          case Op::Add: a = a + b; break;
          case Op::Sub: a = a - b; break;
          case Op::Mul: a = a * b; break;
          case Op::Xor: a = a ^ b; break;
          case Op::Eq: a = a == b; break;
          case Op::Ne: a = a != b; break;
          case Op::And: a = (a != 0) && (b != 0); break;
          default: break;
        }
      }
    }
  }
  return top == 1 ? stack[0] : 0;
}

}  // namespace lcs
