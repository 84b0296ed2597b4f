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

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "oq2/expr.hpp"
#include "oq2/format.hpp"
#include "oq2/frontend.hpp"

using namespace oq2;

namespace {

double ev(const std::string& text,
          const std::map<std::string, double>& bindings = {}) {
  return eval(*parse_param_expr(text), bindings);
}

// Independent reference evaluator: recomputes each node with plain C math,
// no shortcuts shared with the implementation under test.
double naive(const ParamExpr& e, const std::map<std::string, double>& env) {
  switch (e.kind) {
    case ParamExpr::Kind::Real: return e.real;
    case ParamExpr::Kind::Int: return static_cast<double>(e.integer);
    case ParamExpr::Kind::Pi: return 3.14159265358979323846;
    case ParamExpr::Kind::Var: return env.at(e.var);
    case ParamExpr::Kind::Neg: return -naive(*e.lhs, env);
    case ParamExpr::Kind::Add: return naive(*e.lhs, env) + naive(*e.rhs, env);
    case ParamExpr::Kind::Sub: return naive(*e.lhs, env) - naive(*e.rhs, env);
    case ParamExpr::Kind::Mul: return naive(*e.lhs, env) * naive(*e.rhs, env);
    case ParamExpr::Kind::Div: return naive(*e.lhs, env) / naive(*e.rhs, env);
    case ParamExpr::Kind::Pow:
      return std::pow(naive(*e.lhs, env), naive(*e.rhs, env));
    case ParamExpr::Kind::Sin: return std::sin(naive(*e.lhs, env));
    case ParamExpr::Kind::Cos: return std::cos(naive(*e.lhs, env));
    case ParamExpr::Kind::Tan: return std::tan(naive(*e.lhs, env));
    case ParamExpr::Kind::ExpFn: return std::exp(naive(*e.lhs, env));
    case ParamExpr::Kind::Ln: return std::log(naive(*e.lhs, env));
    case ParamExpr::Kind::Sqrt: return std::sqrt(naive(*e.lhs, env));
  }
  return 0.0;
}

// Random expression trees over two bound variables.  Leaves and operators
// are chosen so evaluation stays finite: arguments are kept in safe ranges
// for ln, sqrt and ^.
Expr random_tree(std::mt19937_64& rng, int depth) {
  const SourcePos at{0, 1, 1};
  std::uniform_int_distribution<int> leaf(0, 3);
  std::uniform_real_distribution<double> val(0.1, 4.0);
  if (depth == 0) {
    switch (leaf(rng)) {
      case 0: {
        auto e = make_expr(ParamExpr::Kind::Real, at);
        e->real = val(rng);
        return e;
      }
      case 1: {
        auto e = make_expr(ParamExpr::Kind::Int, at);
        e->integer = static_cast<std::int64_t>(val(rng));
        return e;
      }
      case 2: return make_expr(ParamExpr::Kind::Pi, at);
      default: {
        auto e = make_expr(ParamExpr::Kind::Var, at);
        e->var = (leaf(rng) & 1) ? "x" : "y";
        return e;
      }
    }
  }
  std::uniform_int_distribution<int> op(0, 7);
  auto node = [&](ParamExpr::Kind k, bool binary) {
    auto e = make_expr(k, at);
    e->lhs = random_tree(rng, depth - 1);
    if (binary) e->rhs = random_tree(rng, depth - 1);
    return e;
  };
  switch (op(rng)) {
    case 0: return node(ParamExpr::Kind::Add, true);
    case 1: return node(ParamExpr::Kind::Sub, true);
    case 2: return node(ParamExpr::Kind::Mul, true);
    case 3: return node(ParamExpr::Kind::Neg, false);
    case 4: return node(ParamExpr::Kind::Sin, false);
    case 5: return node(ParamExpr::Kind::Cos, false);
    case 6: return node(ParamExpr::Kind::Tan, false);
    default: return node(ParamExpr::Kind::Add, true);
  }
}

}  // namespace

TEST_CASE("literal and constant evaluation") {
  CHECK(ev("0") == 0.0);
  CHECK(ev("2.5") == 2.5);
  CHECK(ev("pi") == doctest::Approx(3.14159265358979323846).epsilon(1e-15));
  CHECK(ev("pi/2") == doctest::Approx(1.57079632679489661923).epsilon(1e-15));
}

TEST_CASE("precedence: power binds tighter than unary minus") {
  CHECK(ev("2^3^2") == 512.0);       // right associative
  CHECK(ev("-2^2") == -4.0);         // -(2^2)
  CHECK(ev("(-2)^2") == 4.0);
  CHECK(ev("2^-1") == 0.5);          // unary minus allowed on the exponent
}

TEST_CASE("precedence: chains associate left") {
  CHECK(ev("8-4-2") == 2.0);
  CHECK(ev("8/4/2") == 1.0);
  CHECK(ev("2+3*4") == 14.0);
  CHECK(ev("(2+3)*4") == 20.0);
}

TEST_CASE("-theta/2 negates before dividing") {
  Expr e = parse_param_expr("-theta/2");
  REQUIRE(e->kind == ParamExpr::Kind::Div);
  CHECK(e->lhs->kind == ParamExpr::Kind::Neg);
  CHECK(e->rhs->kind == ParamExpr::Kind::Int);
  CHECK(ev("-theta/2", {{"theta", 3.0}}) == -1.5);
}

TEST_CASE("builtin functions") {
  CHECK(ev("sin(pi/2)") == doctest::Approx(1.0));
  CHECK(ev("cos(0)") == 1.0);
  CHECK(ev("tan(0)") == 0.0);
  CHECK(ev("exp(1)") == doctest::Approx(2.718281828459045));
  CHECK(ev("ln(exp(2))") == doctest::Approx(2.0));
  CHECK(ev("sqrt(2)") == doctest::Approx(1.4142135623730951));
}

TEST_CASE("unbound variables and domain errors raise Eval errors") {
  CHECK_THROWS_AS(ev("theta"), Error);
  CHECK_THROWS_AS(ev("1/0"), Error);
  CHECK_THROWS_AS(ev("ln(0)"), Error);
  CHECK_THROWS_AS(ev("ln(-1)"), Error);
  CHECK_THROWS_AS(ev("sqrt(-1)"), Error);
  CHECK_THROWS_AS(ev("(-2)^0.5"), Error);
  try {
    ev("x/(2-2)", {{"x", 1.0}});
    FAIL("expected division by zero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Eval);
  }
}

TEST_CASE("clone and equality") {
  Expr e = parse_param_expr("sin(-a/2)^2 + cos(b)*b");
  Expr c = clone_expr(*e);
  CHECK(expr_equal(*e, *c));
  c->rhs->rhs->var = "z";
  CHECK_FALSE(expr_equal(*e, *c));
}

TEST_CASE("random trees match a naive evaluator bit for bit") {
  std::mt19937_64 rng(20260814);
  std::map<std::string, double> env{{"x", 0.7}, {"y", 2.3}};
  for (int i = 0; i < 1000; ++i) {
    Expr e = random_tree(rng, 4);
    double a = eval(*e, env);
    double b = naive(*e, env);
    REQUIRE(a == b);  // identical operation order must give identical bits
  }
}

TEST_CASE("random trees survive a print/reparse round trip") {
  std::mt19937_64 rng(99);
  std::map<std::string, double> env{{"x", 1.25}, {"y", 0.5}};
  for (int i = 0; i < 200; ++i) {
    Expr e = random_tree(rng, 4);
    Expr back = parse_param_expr(format_expr(*e));
    CHECK(eval(*back, env) == eval(*e, env));
  }
}
