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
#include <string_view>
#include <vector>

#include "oq2/matrix.hpp"

namespace oq2 {

// Text of the standard gate library. include "qelib1.inc" resolves to this
// when no file of that name exists on disk.
std::string_view qelib1_source();

struct GateSignature {
  std::string name;
  int num_params = 0;
  int num_qubits = 0;
};

// The 23 gates defined by qelib1.inc, in definition order.
const std::vector<GateSignature>& qelib1_signatures();

// Closed-form unitary for a qelib1 gate, written directly from each gate's
// matrix definition (not by expanding its body). Wire convention matches
// circuit_unitary: the gate's first argument is qubit 0, the least
// significant index bit. Controlled gates pass the control as the first
// argument, so e.g. cx is I on index bit 0 = 0 and flips bit 1 otherwise.
// Throws std::invalid_argument for unknown names or wrong parameter counts.
CMatrix reference_unitary(std::string_view name, const std::vector<double>& params);

}  // namespace oq2
