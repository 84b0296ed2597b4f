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

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "oq2/source.hpp"

namespace oq2 {

struct ParamExpr;
using Expr = std::unique_ptr<ParamExpr>;

// Parameter-expression tree. Unary nodes (Neg and the functions) use lhs
// only. Var nodes are legal only inside gate bodies, where they name a
// declared gate parameter; top-level expressions must be closed.
struct ParamExpr {
  enum class Kind {
    Real,
    Int,
    Pi,
    Var,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Sin,
    Cos,
    Tan,
    ExpFn,
    Ln,
    Sqrt,
  };

  Kind kind;
  double real = 0.0;          // Real
  std::uint64_t integer = 0;  // Int
  std::string var;            // Var
  Expr lhs, rhs;
  SourcePos pos;
};

Expr make_expr(ParamExpr::Kind kind, SourcePos pos);
Expr clone_expr(const ParamExpr& e);

// True for Neg and the six functions (single operand in lhs).
bool is_unary(ParamExpr::Kind kind);

// Structural equality; numeric leaves compare by exact value.
bool expr_equal(const ParamExpr& a, const ParamExpr& b);

// Evaluates in IEEE binary64, operator by operator, with no reassociation.
// Throws Error(ErrorKind::Eval) at the offending node when a Var has no
// binding or a node leaves the real domain: division by zero, ln of a
// non-positive value, sqrt of a negative value, pow with a non-real result,
// or overflow to infinity.
double eval(const ParamExpr& e, const std::map<std::string, double>& bindings);

}  // namespace oq2
