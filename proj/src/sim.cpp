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

#include "oq2/sim.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace oq2 {

namespace {

[[noreturn]] void sim_fail(const std::string& msg) {
  throw Error(ErrorKind::Sim, {}, msg);
}

void require_simulable(const FlatCircuit& c) {
  if (c.num_qubits() > kMaxSimQubits)
    sim_fail("circuit has " + std::to_string(c.num_qubits()) +
             " qubits; the statevector simulator handles at most " +
             std::to_string(kMaxSimQubits));
}

}  // namespace

Mat2 u_matrix(double theta, double phi, double lambda) {
  double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return {
      std::polar(c, -(phi + lambda) / 2.0),
      -std::polar(s, -(phi - lambda) / 2.0),
      std::polar(s, (phi - lambda) / 2.0),
      std::polar(c, (phi + lambda) / 2.0),
  };
}

StateVector::StateVector(std::uint32_t num_qubits)
    : n(num_qubits), amp(std::size_t{1} << num_qubits) {
  amp[0] = 1.0;
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& a : amp) total += std::norm(a);
  return std::sqrt(total);
}

void apply_1q(StateVector& sv, const Mat2& m, std::uint32_t q) {
  const std::size_t step = std::size_t{1} << q;
  for (std::size_t base = 0; base < sv.amp.size(); base += 2 * step)
    for (std::size_t i = base; i < base + step; ++i) {
      std::complex<double> a0 = sv.amp[i], a1 = sv.amp[i + step];
      sv.amp[i] = m.m00 * a0 + m.m01 * a1;
      sv.amp[i + step] = m.m10 * a0 + m.m11 * a1;
    }
}

void apply_cx(StateVector& sv, std::uint32_t control, std::uint32_t target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < sv.amp.size(); ++i)
    if ((i & cbit) && !(i & tbit)) std::swap(sv.amp[i], sv.amp[i | tbit]);
}

double project(StateVector& sv, std::uint32_t q, int bit) {
  const std::size_t mask = std::size_t{1} << q;
  double p = 0.0;
  for (std::size_t i = 0; i < sv.amp.size(); ++i)
    if (((i & mask) != 0) == (bit == 1)) p += std::norm(sv.amp[i]);
  p = std::min(p, 1.0);
  if (p <= 0.0) return 0.0;
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < sv.amp.size(); ++i) {
    if (((i & mask) != 0) == (bit == 1))
      sv.amp[i] *= scale;
    else
      sv.amp[i] = 0.0;
  }
  return p;
}

int measure(StateVector& sv, std::uint32_t q, double draw) {
  const std::size_t mask = std::size_t{1} << q;
  double p1 = 0.0;
  for (std::size_t i = 0; i < sv.amp.size(); ++i)
    if (i & mask) p1 += std::norm(sv.amp[i]);
  p1 = std::clamp(p1, 0.0, 1.0);
  int bit = draw < p1 ? 1 : 0;
  project(sv, q, bit);
  return bit;
}

void reset(StateVector& sv, std::uint32_t q, double draw) {
  if (measure(sv, q, draw) == 1) {
    const std::size_t mask = std::size_t{1} << q;
    // The bit=0 half is zero after projection; flipping just moves amplitudes.
    for (std::size_t i = 0; i < sv.amp.size(); ++i)
      if (i & mask) std::swap(sv.amp[i & ~mask], sv.amp[i]);
  }
}

bool condition_holds(const Condition& cond, const std::vector<std::uint8_t>& clbits,
                     const FlatCircuit& circuit) {
  const RegSlice* reg = circuit.find_creg(cond.creg);
  if (!reg) sim_fail("condition names unknown register '" + cond.creg + "'");
  std::uint64_t value = 0;
  for (std::uint32_t k = 0; k < reg->size; ++k)
    value |= std::uint64_t{clbits[reg->offset + k]} << k;
  return value == cond.value;
}

std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t shot) {
  // splitmix64 over the pair; distinct shots get decorrelated streams.
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (shot + 1);
  for (int round = 0; round < 2; ++round) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    x = x ^ (x >> 31);
  }
  return x;
}

namespace {

struct ShotState {
  StateVector sv;
  std::vector<std::uint8_t> clbits;

  explicit ShotState(const FlatCircuit& c)
      : sv(c.num_qubits()), clbits(c.num_clbits(), 0) {}
};

// Applies one instruction; measure/reset outcomes come from draw().
template <typename DrawFn>
void step(ShotState& st, const FlatCircuit& c, const FlatInstruction& in, DrawFn&& draw) {
  if (in.cond && !condition_holds(*in.cond, st.clbits, c)) return;
  switch (in.kind) {
    case FlatInstruction::Kind::U:
      apply_1q(st.sv, u_matrix(in.params[0], in.params[1], in.params[2]), in.qubits[0]);
      break;
    case FlatInstruction::Kind::CX:
      apply_cx(st.sv, in.qubits[0], in.qubits[1]);
      break;
    case FlatInstruction::Kind::Measure:
      st.clbits[in.clbit] =
          static_cast<std::uint8_t>(measure(st.sv, in.qubits[0], draw()));
      break;
    case FlatInstruction::Kind::Reset:
      reset(st.sv, in.qubits[0], draw());
      break;
    case FlatInstruction::Kind::Barrier:
      break;
    case FlatInstruction::Kind::Opaque:
      sim_fail("cannot simulate unexpanded gate '" + in.name + "'");
  }
}

}  // namespace

std::vector<std::uint8_t> run_shot(const FlatCircuit& circuit, Rng& rng) {
  require_simulable(circuit);
  ShotState st(circuit);
  for (const auto& in : circuit.instructions)
    step(st, circuit, in, [&] { return rng.next(); });
  return st.clbits;
}

StateVector run_statevector(const FlatCircuit& circuit) {
  require_simulable(circuit);
  for (const auto& in : circuit.instructions)
    if (in.kind == FlatInstruction::Kind::Measure ||
        in.kind == FlatInstruction::Kind::Reset ||
        in.kind == FlatInstruction::Kind::Opaque)
      sim_fail("statevector output requires a circuit without measure or reset");
  ShotState st(circuit);
  for (const auto& in : circuit.instructions)
    step(st, circuit, in, [] { return 0.0; });
  return std::move(st.sv);
}

std::string counts_key(const FlatCircuit& circuit,
                       const std::vector<std::uint8_t>& clbits) {
  std::string key;
  for (const auto& reg : circuit.cregs) {
    if (!key.empty()) key += ' ';
    for (std::uint32_t k = 0; k < reg.size; ++k)
      key += clbits[reg.offset + (reg.size - 1 - k)] ? '1' : '0';
  }
  return key;
}

Counts simulate(const FlatCircuit& circuit, std::uint64_t shots,
                std::optional<std::uint64_t> seed) {
  require_simulable(circuit);
  Counts out;
  out.shots = shots;
  out.seed = seed;
  std::uint64_t base = seed ? *seed : [] {
    std::random_device rd;
    return (std::uint64_t{rd()} << 32) ^ rd();
  }();
  for (std::uint64_t s = 0; s < shots; ++s) {
    Rng rng(shot_seed(base, s));
    ++out.counts[counts_key(circuit, run_shot(circuit, rng))];
  }
  return out;
}

namespace {

// Owns its state copy; recursion depth is bounded by the branch-op count.
void branch_walk(const FlatCircuit& c, ShotState st, std::size_t i, double prob,
                 Distribution& dist) {
  while (i < c.instructions.size()) {
    const FlatInstruction& in = c.instructions[i];
    if (in.kind != FlatInstruction::Kind::Measure &&
        in.kind != FlatInstruction::Kind::Reset) {
      step(st, c, in, [] { return 0.0; });
      ++i;
      continue;
    }
    if (in.cond && !condition_holds(*in.cond, st.clbits, c)) {
      ++i;
      continue;
    }
    for (int bit = 0; bit < 2; ++bit) {
      ShotState next = st;
      double p = project(next.sv, in.qubits[0], bit);
      if (prob * p < kBranchPruneProb) continue;
      if (in.kind == FlatInstruction::Kind::Measure) {
        next.clbits[in.clbit] = static_cast<std::uint8_t>(bit);
      } else if (bit == 1) {
        const std::size_t mask = std::size_t{1} << in.qubits[0];
        for (std::size_t k = 0; k < next.sv.amp.size(); ++k)
          if (k & mask) std::swap(next.sv.amp[k & ~mask], next.sv.amp[k]);
      }
      branch_walk(c, std::move(next), i + 1, prob * p, dist);
    }
    return;
  }
  dist[counts_key(c, st.clbits)] += prob;
}

}  // namespace

Distribution enumerate_branches(const FlatCircuit& circuit, int max_branch_ops) {
  require_simulable(circuit);
  int branch_ops = 0;
  for (const auto& in : circuit.instructions) {
    if (in.kind == FlatInstruction::Kind::Opaque)
      sim_fail("cannot simulate unexpanded gate '" + in.name + "'");
    if (in.kind == FlatInstruction::Kind::Measure ||
        in.kind == FlatInstruction::Kind::Reset)
      ++branch_ops;
  }
  if (branch_ops > max_branch_ops)
    sim_fail("circuit has " + std::to_string(branch_ops) +
             " branching operations; exact enumeration handles at most " +
             std::to_string(max_branch_ops));
  Distribution dist;
  branch_walk(circuit, ShotState(circuit), 0, 1.0, dist);
  return dist;
}

CMatrix circuit_unitary(const FlatCircuit& circuit) {
  const std::uint32_t n = circuit.num_qubits();
  if (n > kMaxUnitaryQubits)
    sim_fail("unitary output handles at most " + std::to_string(kMaxUnitaryQubits) +
             " qubits");
  for (const auto& in : circuit.instructions) {
    if (in.cond) sim_fail("unitary output requires an unconditioned circuit");
    if (in.kind != FlatInstruction::Kind::U && in.kind != FlatInstruction::Kind::CX &&
        in.kind != FlatInstruction::Kind::Barrier)
      sim_fail("unitary output requires a circuit of U and CX only");
  }
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector sv(n);
    sv.amp[0] = 0.0;
    sv.amp[col] = 1.0;
    for (const auto& in : circuit.instructions) {
      if (in.kind == FlatInstruction::Kind::U)
        apply_1q(sv, u_matrix(in.params[0], in.params[1], in.params[2]), in.qubits[0]);
      else if (in.kind == FlatInstruction::Kind::CX)
        apply_cx(sv, in.qubits[0], in.qubits[1]);
    }
    for (std::size_t row = 0; row < dim; ++row) m.at(row, col) = sv.amp[row];
  }
  return m;
}

std::string counts_to_json(const Counts& counts) {
  nlohmann::json j;
  j["shots"] = counts.shots;
  if (counts.seed)
    j["seed"] = *counts.seed;
  else
    j["seed"] = nullptr;
  j["counts"] = nlohmann::json::object();
  for (const auto& [key, n] : counts.counts) j["counts"][key] = n;
  return j.dump(2) + "\n";
}

std::string distribution_to_json(const Distribution& dist) {
  nlohmann::json j;
  j["shots"] = nullptr;
  j["seed"] = nullptr;
  j["counts"] = nlohmann::json::object();
  for (const auto& [key, p] : dist) j["counts"][key] = p;
  return j.dump(2) + "\n";
}

std::string statevector_to_json(const StateVector& sv) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : sv.amp) j.push_back({a.real(), a.imag()});
  return j.dump() + "\n";
}

}  // namespace oq2
