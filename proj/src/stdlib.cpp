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

#include "oq2/stdlib.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace oq2 {

std::string_view qelib1_source() {
  static const std::string_view text = R"(// Quantum Experience (QE) Standard Header
// file: qelib1.inc

// --- QE Hardware primitives ---

// 3-parameter 2-pulse single qubit gate
gate u3(theta,phi,lambda) q { U(theta,phi,lambda) q; }
// 2-parameter 1-pulse single qubit gate
gate u2(phi,lambda) q { U(pi/2,phi,lambda) q; }
// 1-parameter 0-pulse single qubit gate
gate u1(lambda) q { U(0,0,lambda) q; }
// controlled-NOT
gate cx c,t { CX c,t; }
// idle gate (identity)
gate id a { U(0,0,0) a; }

// --- QE Standard Gates ---

// Pauli gate: bit-flip
gate x a { u3(pi,0,pi) a; }
// Pauli gate: bit and phase flip
gate y a { u3(pi,pi/2,pi/2) a; }
// Pauli gate: phase flip
gate z a { u1(pi) a; }
// Clifford gate: Hadamard
gate h a { u2(0,pi) a; }
// Clifford gate: sqrt(Z) phase gate
gate s a { u1(pi/2) a; }
// Clifford gate: conjugate of sqrt(Z)
gate sdg a { u1(-pi/2) a; }
// C3 gate: sqrt(S) phase gate
gate t a { u1(pi/4) a; }
// C3 gate: conjugate of sqrt(S)
gate tdg a { u1(-pi/4) a; }

// --- Standard rotations ---
// Rotation around X-axis
gate rx(theta) a { u3(theta,-pi/2,pi/2) a; }
// rotation around Y-axis
gate ry(theta) a { u3(theta,0,0) a; }
// rotation around Z axis
gate rz(phi) a { u1(phi) a; }

// --- QE Standard User-Defined Gates  ---

// controlled-Phase
gate cz a,b { h b; cx a,b; h b; }
// controlled-Y
gate cy a,b { sdg b; cx a,b; s b; }
// controlled-H
gate ch a,b {
h b; sdg b;
cx a,b;
h b; t b;
cx a,b;
t b; h b; s b; x b; s a;
}
// C3 gate: Toffoli
gate ccx a,b,c
{
  h c;
  cx b,c; tdg c;
  cx a,c; t c;
  cx b,c; tdg c;
  cx a,c; t b; t c; h c;
  cx a,b; t a; tdg b;
  cx a,b;
}
// controlled rz rotation
gate crz(lambda) a,b
{
  u1(lambda/2) b;
  cx a,b;
  u1(-lambda/2) b;
  cx a,b;
}
// controlled phase rotation
gate cu1(lambda) a,b
{
  u1(lambda/2) a;
  cx a,b;
  u1(-lambda/2) b;
  cx a,b;
  u1(lambda/2) b;
}
// controlled-U
gate cu3(theta,phi,lambda) c, t
{
  // implements controlled-U(theta,phi,lambda) with  target t and control c
  u1((lambda-phi)/2) t;
  cx c,t;
  u3(-theta/2,0,-(phi+lambda)/2) t;
  cx c,t;
  u3(theta/2,phi,0) t;
}
)";
  return text;
}

const std::vector<GateSignature>& qelib1_signatures() {
  static const std::vector<GateSignature> sigs = {
      {"u3", 3, 1}, {"u2", 2, 1},  {"u1", 1, 1},  {"cx", 0, 2},  {"id", 0, 1},
      {"x", 0, 1},  {"y", 0, 1},   {"z", 0, 1},   {"h", 0, 1},   {"s", 0, 1},
      {"sdg", 0, 1}, {"t", 0, 1},  {"tdg", 0, 1}, {"rx", 1, 1},  {"ry", 1, 1},
      {"rz", 1, 1}, {"cz", 0, 2},  {"cy", 0, 2},  {"ch", 0, 2},  {"ccx", 0, 3},
      {"crz", 1, 2}, {"cu1", 1, 2}, {"cu3", 3, 2},
  };
  return sigs;
}

namespace {

using C = std::complex<double>;
constexpr C I{0.0, 1.0};

CMatrix mat2(C m00, C m01, C m10, C m11) {
  CMatrix m(2);
  m.at(0, 0) = m00;
  m.at(0, 1) = m01;
  m.at(1, 0) = m10;
  m.at(1, 1) = m11;
  return m;
}

// Control on the first argument (index bit 0), block on the target (bit 1):
// basis states with bit 0 set are rows/columns 1 and 3.
CMatrix controlled(const CMatrix& block) {
  CMatrix m(4);
  m.at(0, 0) = 1.0;
  m.at(2, 2) = 1.0;
  m.at(1, 1) = block.at(0, 0);
  m.at(1, 3) = block.at(0, 1);
  m.at(3, 1) = block.at(1, 0);
  m.at(3, 3) = block.at(1, 1);
  return m;
}

// The determinant-1 form of the builtin rotation, which is also exactly what
// the cu3 body applies on its control=1 block.
CMatrix su2_u(double theta, double phi, double lambda) {
  double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return mat2(std::polar(c, -(phi + lambda) / 2.0), -std::polar(s, -(phi - lambda) / 2.0),
              std::polar(s, (phi - lambda) / 2.0), std::polar(c, (phi + lambda) / 2.0));
}

CMatrix textbook_u3(double theta, double phi, double lambda) {
  double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return mat2(c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, lambda + phi));
}

}  // namespace

CMatrix reference_unitary(std::string_view name, const std::vector<double>& params) {
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument(std::string(name) + " takes " + std::to_string(n) +
                                  " parameter(s)");
  };
  const double isq = 1.0 / std::sqrt(2.0);

  if (name == "u3") {
    want(3);
    return textbook_u3(params[0], params[1], params[2]);
  }
  if (name == "u2") {
    want(2);
    return textbook_u3(M_PI / 2.0, params[0], params[1]);
  }
  if (name == "u1") {
    want(1);
    return mat2(1.0, 0.0, 0.0, std::polar(1.0, params[0]));
  }
  if (name == "id") {
    want(0);
    return CMatrix::identity(2);
  }
  if (name == "x") {
    want(0);
    return mat2(0.0, 1.0, 1.0, 0.0);
  }
  if (name == "y") {
    want(0);
    return mat2(0.0, -I, I, 0.0);
  }
  if (name == "z") {
    want(0);
    return mat2(1.0, 0.0, 0.0, -1.0);
  }
  if (name == "h") {
    want(0);
    return mat2(isq, isq, isq, -isq);
  }
  if (name == "s") {
    want(0);
    return mat2(1.0, 0.0, 0.0, I);
  }
  if (name == "sdg") {
    want(0);
    return mat2(1.0, 0.0, 0.0, -I);
  }
  if (name == "t") {
    want(0);
    return mat2(1.0, 0.0, 0.0, std::polar(1.0, M_PI / 4.0));
  }
  if (name == "tdg") {
    want(0);
    return mat2(1.0, 0.0, 0.0, std::polar(1.0, -M_PI / 4.0));
  }
  if (name == "rx") {
    want(1);
    double c = std::cos(params[0] / 2.0), s = std::sin(params[0] / 2.0);
    return mat2(c, -I * s, -I * s, c);
  }
  if (name == "ry") {
    want(1);
    double c = std::cos(params[0] / 2.0), s = std::sin(params[0] / 2.0);
    return mat2(c, -s, s, c);
  }
  if (name == "rz") {
    want(1);
    return mat2(std::polar(1.0, -params[0] / 2.0), 0.0, 0.0,
                std::polar(1.0, params[0] / 2.0));
  }
  if (name == "cx") {
    want(0);
    return controlled(mat2(0.0, 1.0, 1.0, 0.0));
  }
  if (name == "cz") {
    want(0);
    return controlled(mat2(1.0, 0.0, 0.0, -1.0));
  }
  if (name == "cy") {
    want(0);
    return controlled(mat2(0.0, -I, I, 0.0));
  }
  if (name == "ch") {
    want(0);
    return controlled(mat2(isq, isq, isq, -isq));
  }
  if (name == "crz") {
    want(1);
    return controlled(mat2(std::polar(1.0, -params[0] / 2.0), 0.0, 0.0,
                           std::polar(1.0, params[0] / 2.0)));
  }
  if (name == "cu1") {
    want(1);
    return controlled(mat2(1.0, 0.0, 0.0, std::polar(1.0, params[0])));
  }
  if (name == "cu3") {
    want(3);
    return controlled(su2_u(params[0], params[1], params[2]));
  }
  if (name == "ccx") {
    want(0);
    // Flips index bit 2 when bits 0 and 1 (the controls) are both set.
    CMatrix m(8);
    for (std::size_t i = 0; i < 8; ++i) {
      std::size_t j = (i & 3) == 3 ? i ^ 4 : i;
      m.at(j, i) = 1.0;
    }
    return m;
  }
  throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

}  // namespace oq2
