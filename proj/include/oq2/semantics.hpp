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
#include <vector>

#include "oq2/ast.hpp"

namespace oq2 {

enum class Severity { Warning, Error };

// rule is a short stable id asserted by tests:
//   a  register use: declared before use, index within range
//   b  register size must be at least 1
//   c  gate use: declared before use, parameter/argument arity match
//   d  gate bodies: only U/CX/gate calls/barrier over unindexed body args,
//      expressions over declared parameters only
//   e  operand type: quantum ops take qubits, measure targets a creg
//   f  measure shape: bit->bit or register->register of equal size
//   g  broadcast: all register operands of one op have equal size
//   h  qubit operands of one gate application must be pairwise distinct
//   i  if guard must name a declared classical register
//   j  warning: if comparison value can never match the creg width
//   dup      one flat namespace: no name declared twice
//   unbound  identifier in a top-level parameter expression
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string rule;
  SourcePos pos;
  std::string message;
};

// Full static check. Empty result means valid; diagnostics come back in
// program order (the order statements appear after inclusion). The checker
// recovers after each finding, so one pass reports everything.
std::vector<Diagnostic> check(const Program& program);

bool has_errors(const std::vector<Diagnostic>& diags);

// "file:line:col: severity[rule]: message"
std::string render(const Diagnostic& d, const Program& program);

}  // namespace oq2
