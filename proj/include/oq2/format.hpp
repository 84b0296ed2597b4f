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

#include <string>

#include "oq2/ast.hpp"

namespace oq2 {

// Canonical text: one statement per line, two-space indent inside gate
// bodies, single spaces around binary operators, minimal parentheses.
// Statements pulled in by include directives are represented by their
// directive line, so formatting does not inline included files. Comments do
// not survive (the lexer drops them). Re-parsing the result yields a
// structurally equal AST, and formatting is idempotent.
std::string format(const Program& program);

// One statement (recursively for if and gate bodies), no trailing newline.
std::string format_statement(const Statement& s, int indent = 0);

// Expression with canonical spacing and minimal parentheses. Real literals
// use the shortest spelling that round-trips through binary64 and always
// stays a valid real token (a digit string gains ".0" before any exponent).
std::string format_expr(const ParamExpr& e);

// The numeric spelling used for real literals and evaluated parameters:
// shortest binary64 round-trip that still lexes as one numeric token.
std::string format_double(double v);

// Indented tree dump of the AST for debugging and the parse subcommand.
std::string dump_ast(const Program& program);

// True if two programs are structurally equal: same version, same statement
// sequence (Include directives included), expressions compared by value.
bool program_equal(const Program& a, const Program& b);

}  // namespace oq2
