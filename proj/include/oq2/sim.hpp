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

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oq2/matrix.hpp"
#include "oq2/unroll.hpp"

namespace oq2 {

inline constexpr std::uint32_t kMaxSimQubits = 24;
inline constexpr std::uint32_t kMaxUnitaryQubits = 10;
inline constexpr int kMaxBranchOps = 20;
inline constexpr double kBranchPruneProb = 1e-14;

struct Mat2 {
  std::complex<double> m00, m01, m10, m11;
};

// The builtin single-qubit gate: Rz(phi) Ry(theta) Rz(lambda), determinant 1.
Mat2 u_matrix(double theta, double phi, double lambda);

// Little-endian statevector: bit k of the basis index is qubit k, so
// amp[0b10] is |q1=1, q0=0>. Starts in |0...0>.
struct StateVector {
  std::uint32_t n = 0;
  std::vector<std::complex<double>> amp;

  explicit StateVector(std::uint32_t num_qubits);
  double norm() const;
};

void apply_1q(StateVector& sv, const Mat2& m, std::uint32_t q);
void apply_cx(StateVector& sv, std::uint32_t control, std::uint32_t target);

// Projects qubit q onto the outcome selected by draw in [0,1): outcome 1
// iff draw < P(bit = 1). Renormalizes. Returns the outcome bit.
int measure(StateVector& sv, std::uint32_t q, double draw);

// Measure, then flip to |0> if the outcome was 1.
void reset(StateVector& sv, std::uint32_t q, double draw);

// Projects onto the given outcome, renormalizes, and returns the outcome's
// probability; the state is garbage if that probability is 0.
double project(StateVector& sv, std::uint32_t q, int bit);

// Value of the condition's creg (bit offset+k contributes 2^k) == value.
bool condition_holds(const Condition& cond, const std::vector<std::uint8_t>& clbits,
                     const FlatCircuit& circuit);

// Deterministic stream for one shot. Draws use the top 53 bits of each
// mt19937_64 output so results do not depend on the standard library's
// distribution implementations.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double next() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
};

// Per-shot seed derivation: splitmix64 over (seed, shot index).
std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t shot);

// One shot from |0...0> with all classical bits 0. Conditions are evaluated
// against the classical bits at the moment their instruction executes.
// Throws Error(ErrorKind::Sim) on Opaque instructions or > 24 qubits.
std::vector<std::uint8_t> run_shot(const FlatCircuit& circuit, Rng& rng);

// Final statevector of a deterministic circuit (no measure/reset/Opaque;
// conditions evaluate against all-zero classical bits).
StateVector run_statevector(const FlatCircuit& circuit);

// Key: creg values in declaration order, space separated, each group with
// its high bit (index size-1) leftmost and zero padded to the creg width.
std::string counts_key(const FlatCircuit& circuit,
                       const std::vector<std::uint8_t>& clbits);

struct Counts {
  std::uint64_t shots = 0;
  std::optional<std::uint64_t> seed;  // empty when drawn from system entropy
  std::map<std::string, std::uint64_t> counts;
};

// Independent shots. Identical seeds give identical counts on any platform.
Counts simulate(const FlatCircuit& circuit, std::uint64_t shots,
                std::optional<std::uint64_t> seed);

using Distribution = std::map<std::string, double>;

// Exact outcome distribution by depth-first branching at each measure and
// reset. Branches with accumulated probability below kBranchPruneProb are
// dropped. Throws Error(ErrorKind::Sim) if the circuit has more than
// max_branch_ops measure+reset instructions, or on Opaque.
Distribution enumerate_branches(const FlatCircuit& circuit,
                                int max_branch_ops = kMaxBranchOps);

// Full unitary of a circuit containing only U/CX/Barrier with no conditions,
// at most kMaxUnitaryQubits qubits. Row/column index bit k is qubit k.
CMatrix circuit_unitary(const FlatCircuit& circuit);

// {"shots": N, "seed": S|null, "counts": {...}}, keys sorted.
std::string counts_to_json(const Counts& counts);

// Same shape with shots and seed null and float values.
std::string distribution_to_json(const Distribution& dist);

// [[re, im], ...] in basis-index order.
std::string statevector_to_json(const StateVector& sv);

}  // namespace oq2
