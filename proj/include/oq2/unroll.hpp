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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oq2/ast.hpp"

namespace oq2 {

struct Condition {
  std::string creg;
  std::uint64_t value = 0;
};

bool operator==(const Condition& a, const Condition& b);

// One fully expanded operation over global wire indices. Qubits are numbered
// across qregs in declaration order (first declared register holds qubit 0),
// classical bits likewise across cregs.
struct FlatInstruction {
  enum class Kind {
    U,        // params = theta, phi, lambda; one qubit
    CX,       // control, target
    Measure,  // one qubit into clbit
    Reset,    // one qubit
    Barrier,  // any qubits; never carries a condition
    Opaque,   // named call left unexpanded (opaque decl or stop-basis gate)
  };

  Kind kind = Kind::U;
  std::string name;            // Opaque only
  std::vector<double> params;  // evaluated
  std::vector<std::uint32_t> qubits;
  std::uint32_t clbit = 0;  // Measure only
  std::optional<Condition> cond;
};

bool operator==(const FlatInstruction& a, const FlatInstruction& b);

// A named run of wires: global indices [offset, offset + size).
struct RegSlice {
  std::string name;
  std::uint32_t offset = 0;
  std::uint32_t size = 0;
};

struct FlatCircuit {
  std::vector<RegSlice> qregs;  // declaration order
  std::vector<RegSlice> cregs;

  std::vector<FlatInstruction> instructions;

  std::uint32_t num_qubits() const {
    return qregs.empty() ? 0 : qregs.back().offset + qregs.back().size;
  }
  std::uint32_t num_clbits() const {
    return cregs.empty() ? 0 : cregs.back().offset + cregs.back().size;
  }
  const RegSlice* find_creg(const std::string& name) const;
};

bool operator==(const FlatCircuit& a, const FlatCircuit& b);

// Expands a checked program into a flat instruction list: broadcasts
// register operands, inlines gate bodies bottom-out (names in stop_basis and
// opaque declarations stay as Opaque instructions), evaluates every
// parameter expression to a double, and distributes if-conditions onto each
// expanded instruction (barriers excepted). Requires check() to have passed;
// evaluation errors still surface as Error(ErrorKind::Eval).
FlatCircuit unroll(const Program& program,
                   const std::set<std::string>& stop_basis = {});

// Debug listing, one instruction per line, qubits as q<global index>, any
// condition appended after the ';', e.g.
//   U(1.5707963267948966,0,3.141592653589793) q0; if(c==3)
std::string dump(const FlatCircuit& circuit);

// Valid program text for the flat circuit using the original register names.
// Opaque instructions need their declarations: pass the source program and
// the transitively required gate/opaque declarations are re-emitted in
// source order. Throws Error(ErrorKind::Unroll) if one is needed and decls
// is null.
std::string to_qasm(const FlatCircuit& circuit, const Program* decls = nullptr);

}  // namespace oq2
