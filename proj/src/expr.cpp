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

#include "oq2/expr.hpp"

#include <cmath>

namespace oq2 {

Expr make_expr(ParamExpr::Kind kind, SourcePos pos) {
  auto e = std::make_unique<ParamExpr>();
  e->kind = kind;
  e->pos = pos;
  return e;
}

Expr clone_expr(const ParamExpr& e) {
  Expr out = make_expr(e.kind, e.pos);
  out->real = e.real;
  out->integer = e.integer;
  out->var = e.var;
  if (e.lhs) out->lhs = clone_expr(*e.lhs);
  if (e.rhs) out->rhs = clone_expr(*e.rhs);
  return out;
}

bool is_unary(ParamExpr::Kind kind) {
  switch (kind) {
    case ParamExpr::Kind::Neg:
    case ParamExpr::Kind::Sin:
    case ParamExpr::Kind::Cos:
    case ParamExpr::Kind::Tan:
    case ParamExpr::Kind::ExpFn:
    case ParamExpr::Kind::Ln:
    case ParamExpr::Kind::Sqrt:
      return true;
    default:
      return false;
  }
}

bool expr_equal(const ParamExpr& a, const ParamExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ParamExpr::Kind::Real:
      return a.real == b.real;
    case ParamExpr::Kind::Int:
      return a.integer == b.integer;
    case ParamExpr::Kind::Pi:
      return true;
    case ParamExpr::Kind::Var:
      return a.var == b.var;
    default:
      break;
  }
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !expr_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !expr_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

namespace {

[[noreturn]] void eval_fail(const ParamExpr& e, const std::string& msg) {
  throw Error(ErrorKind::Eval, e.pos, msg);
}

double finite_or_fail(const ParamExpr& e, double v, const char* what) {
  if (!std::isfinite(v)) eval_fail(e, std::string(what));
  return v;
}

}  // namespace

double eval(const ParamExpr& e, const std::map<std::string, double>& bindings) {
  using K = ParamExpr::Kind;
  switch (e.kind) {
    case K::Real:
      return e.real;
    case K::Int:
      return static_cast<double>(e.integer);
    case K::Pi:
      return M_PI;
    case K::Var: {
      auto it = bindings.find(e.var);
      if (it == bindings.end()) eval_fail(e, "unbound parameter '" + e.var + "'");
      return it->second;
    }
    case K::Neg:
      return -eval(*e.lhs, bindings);
    case K::Add:
      return finite_or_fail(e, eval(*e.lhs, bindings) + eval(*e.rhs, bindings),
                            "overflow in '+'");
    case K::Sub:
      return finite_or_fail(e, eval(*e.lhs, bindings) - eval(*e.rhs, bindings),
                            "overflow in '-'");
    case K::Mul:
      return finite_or_fail(e, eval(*e.lhs, bindings) * eval(*e.rhs, bindings),
                            "overflow in '*'");
    case K::Div: {
      double den = eval(*e.rhs, bindings);
      if (den == 0.0) eval_fail(e, "division by zero");
      return finite_or_fail(e, eval(*e.lhs, bindings) / den, "overflow in '/'");
    }
    case K::Pow: {
      double base = eval(*e.lhs, bindings);
      double exponent = eval(*e.rhs, bindings);
      double v = std::pow(base, exponent);
      if (!std::isfinite(v)) {
        if (base < 0.0 && exponent != std::trunc(exponent))
          eval_fail(e, "pow of a negative base with a non-integer exponent");
        eval_fail(e, "non-finite result in '^'");
      }
      return v;
    }
    case K::Sin:
      return std::sin(eval(*e.lhs, bindings));
    case K::Cos:
      return std::cos(eval(*e.lhs, bindings));
    case K::Tan:
      return finite_or_fail(e, std::tan(eval(*e.lhs, bindings)), "non-finite tan");
    case K::ExpFn:
      return finite_or_fail(e, std::exp(eval(*e.lhs, bindings)), "overflow in exp");
    case K::Ln: {
      double v = eval(*e.lhs, bindings);
      if (v <= 0.0) eval_fail(e, "ln of a non-positive value");
      return std::log(v);
    }
    case K::Sqrt: {
      double v = eval(*e.lhs, bindings);
      if (v < 0.0) eval_fail(e, "sqrt of a negative value");
      return std::sqrt(v);
    }
  }
  eval_fail(e, "malformed expression node");
}

}  // namespace oq2
