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
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oq2/expr.hpp"
#include "oq2/source.hpp"

namespace oq2 {

struct Statement;

// A register operand: the whole register ("q") or one bit ("q[2]").
struct Argument {
  std::string reg;
  std::optional<std::uint32_t> index;
  SourcePos pos;
};

struct RegDecl {
  bool quantum = true;  // qreg vs creg
  std::string name;
  std::uint64_t size = 0;
};

// An include directive that was spliced in during preprocessing. Kept in the
// AST so the formatter can re-emit the directive instead of what it pulled
// in; semantic analysis and unrolling skip it.
struct Include {
  std::string filename;
};

struct BuiltinU {
  std::vector<Expr> params;  // exactly three after semantic checking
  Argument target;
};

struct BuiltinCX {
  Argument control;
  Argument target;
};

struct Apply {
  std::string name;
  std::vector<Expr> params;
  std::vector<Argument> args;
};

struct Measure {
  Argument src;
  Argument dst;
};

struct Reset {
  Argument target;
};

struct Barrier {
  std::vector<Argument> args;
};

// Body statements reuse Statement; semantic rule (d) restricts them to
// BuiltinU, BuiltinCX, Apply and Barrier over unindexed body arguments.
struct GateDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> qargs;
  std::vector<Statement> body;
};

struct OpaqueDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> qargs;
};

struct If {
  std::string creg;
  std::uint64_t value = 0;
  std::unique_ptr<Statement> op;  // one of BuiltinU/BuiltinCX/Apply/Measure/Reset
  SourcePos creg_pos;
};

struct Statement {
  SourcePos pos;
  std::variant<RegDecl, Include, GateDecl, OpaqueDecl, BuiltinU, BuiltinCX, Apply,
               Measure, Reset, Barrier, If>
      node;
};

// Statement order preserves source order across included files (inclusion is
// in place). files mirrors the SourceManager table for rendering positions.
struct Program {
  int version_major = 2;
  int version_minor = 0;
  std::vector<Statement> statements;
  std::vector<std::string> files;
};

template <typename T>
const T* stmt_as(const Statement& s) {
  return std::get_if<T>(&s.node);
}

}  // namespace oq2
