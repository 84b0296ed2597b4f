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
#include <complex>
#include <random>
#include <string>

#include <json.hpp>

#include "oq2/frontend.hpp"
#include "oq2/sim.hpp"
#include "oq2/unroll.hpp"

using namespace oq2;

namespace {

FlatCircuit flat(const std::string& body) {
  SourceManager sm;
  return unroll(parse_text("OPENQASM 2.0;\n" + body, "test", sm));
}

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

TEST_CASE("the builtin single-qubit matrix is special-unitary") {
  auto m = u_matrix(0.3, 1.1, -0.4);
  // determinant 1 and unitary columns
  auto det = m.m00 * m.m11 - m.m01 * m.m10;
  CHECK(std::abs(det - 1.0) < 1e-15);
  CHECK(std::abs(std::norm(m.m00) + std::norm(m.m10) - 1.0) < 1e-15);
  CHECK(std::abs(m.m00 * std::conj(m.m01) + m.m10 * std::conj(m.m11)) < 1e-15);
}

TEST_CASE("the builtin matrix at Hadamard angles") {
  // U(pi/2, 0, pi) equals H up to the global phase -i
  auto m = u_matrix(kPi / 2, 0, kPi);
  std::complex<double> i(0, 1);
  CHECK(std::abs(m.m00 - (-i) * kInvSqrt2) < 1e-15);
  CHECK(std::abs(m.m01 - (-i) * kInvSqrt2) < 1e-15);
  CHECK(std::abs(m.m10 - (-i) * kInvSqrt2) < 1e-15);
  CHECK(std::abs(m.m11 - (i)*kInvSqrt2) < 1e-15);
}

TEST_CASE("statevectors start at the all-zeros basis state") {
  StateVector sv(3);
  REQUIRE(sv.amp.size() == 8);
  CHECK(sv.amp[0] == std::complex<double>(1, 0));
  CHECK(sv.norm() == doctest::Approx(1.0));
}

TEST_CASE("apply_cx flips the target when the control is set") {
  StateVector sv(2);
  // |01> in the little-endian convention: qubit 0 is set
  sv.amp[0] = 0;
  sv.amp[1] = 1;
  apply_cx(sv, 0, 1);
  CHECK(std::abs(sv.amp[3] - 1.0) < 1e-15);  // both qubits now set
  apply_cx(sv, 1, 0);
  CHECK(std::abs(sv.amp[2] - 1.0) < 1e-15);
}

TEST_CASE("measurement projects according to the drawn number") {
  // H|0> splits evenly; draw below p(1)=0.5 gives outcome 1
  StateVector plus(1);
  apply_1q(plus, u_matrix(kPi / 2, 0, kPi), 0);
  StateVector a = plus;
  CHECK(measure(a, 0, 0.25) == 1);
  CHECK(std::abs(std::abs(a.amp[1]) - 1.0) < 1e-12);
  CHECK(a.norm() == doctest::Approx(1.0));
  StateVector b = plus;
  CHECK(measure(b, 0, 0.75) == 0);
  CHECK(std::abs(std::abs(b.amp[0]) - 1.0) < 1e-12);
}

TEST_CASE("reset forces a qubit back to zero") {
  StateVector sv(2);
  apply_1q(sv, u_matrix(kPi, 0, kPi), 0);  // X on qubit 0
  apply_1q(sv, u_matrix(kPi / 2, 0, kPi), 1);
  reset(sv, 0, 0.3);
  // qubit 0 is |0> again, qubit 1 untouched
  CHECK(std::abs(sv.amp[1]) < 1e-15);
  CHECK(std::abs(sv.amp[3]) < 1e-15);
  CHECK(sv.norm() == doctest::Approx(1.0));
}

TEST_CASE("seeded runs are reproducible and distinct across shots") {
  auto c = flat("qreg q[2];\ncreg c[2];\nU(pi/2,0,pi) q[0];\nCX q[0],q[1];\n"
                "measure q -> c;\n");
  auto r1 = simulate(c, 200, 7);
  auto r2 = simulate(c, 200, 7);
  CHECK(r1.counts == r2.counts);
  REQUIRE(r1.seed.has_value());
  CHECK(*r1.seed == 7);
  // a fair Bell pair: both outcomes show up in 200 shots
  CHECK(r1.counts.at("00") + r1.counts.at("11") == 200);
  CHECK(r1.counts.at("00") > 50);
  CHECK(r1.counts.at("11") > 50);
  auto r3 = simulate(c, 200, 8);
  CHECK(r1.counts != r3.counts);  // overwhelmingly likely
}

TEST_CASE("shot seeds decorrelate neighboring shots") {
  CHECK(shot_seed(0, 0) != shot_seed(0, 1));
  CHECK(shot_seed(0, 0) != shot_seed(1, 0));
  // low bits vary, not just high ones
  CHECK(((shot_seed(42, 0) ^ shot_seed(42, 1)) & 0xFFFF) != 0);
}

TEST_CASE("entropy seeding fills the seed field with nullopt") {
  auto c = flat("qreg q[1];\ncreg c[1];\nmeasure q -> c;\n");
  auto r = simulate(c, 10, std::nullopt);
  CHECK_FALSE(r.seed.has_value());
  CHECK(r.counts.at("0") == 10);
}

TEST_CASE("classical conditions gate execution mid-circuit") {
  // flip q0 into c0, then conditionally flip q1
  auto c = flat(
      "qreg q[2];\ncreg f[1];\ncreg out[1];\n"
      "U(pi,0,pi) q[0];\nmeasure q[0] -> f[0];\n"
      "if(f==1) U(pi,0,pi) q[1];\nmeasure q[1] -> out[0];\n");
  auto r = simulate(c, 25, 3);
  REQUIRE(r.counts.size() == 1);
  CHECK(r.counts.begin()->first == "1 1");
}

TEST_CASE("counts keys group registers in declaration order, high bit first") {
  auto c = flat(
      "qreg q[3];\ncreg a[2];\ncreg b[1];\n"
      "U(pi,0,pi) q[0];\nU(pi,0,pi) q[2];\n"
      "measure q[0] -> a[0];\nmeasure q[1] -> a[1];\nmeasure q[2] -> b[0];\n");
  auto r = simulate(c, 5, 1);
  REQUIRE(r.counts.size() == 1);
  // a = bits (a[1] a[0]) = 01, b = 1
  CHECK(r.counts.begin()->first == "01 1");
}

TEST_CASE("run_statevector evolves without measurements") {
  auto c = flat("qreg q[2];\nU(pi/2,0,pi) q[0];\nCX q[0],q[1];\n");
  auto sv = run_statevector(c);
  CHECK(std::abs(std::abs(sv.amp[0]) - kInvSqrt2) < 1e-12);
  CHECK(std::abs(std::abs(sv.amp[3]) - kInvSqrt2) < 1e-12);
  CHECK(std::abs(sv.amp[1]) < 1e-15);
  auto measured = flat("qreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\n");
  CHECK_THROWS_AS(run_statevector(measured), Error);
}

TEST_CASE("branch enumeration lists exact outcome probabilities") {
  auto c = flat("qreg q[2];\ncreg c[2];\nU(pi/2,0,pi) q[0];\nCX q[0],q[1];\n"
                "measure q -> c;\n");
  auto dist = enumerate_branches(c);
  REQUIRE(dist.size() == 2);
  CHECK(dist.at("00") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.at("11") == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("branch enumeration follows classical feedback") {
  // measure |+>, then correct to |0> with feedback: q1 ends up 0 always
  auto c = flat(
      "qreg q[1];\ncreg m[1];\ncreg out[1];\n"
      "U(pi/2,0,pi) q[0];\nmeasure q[0] -> m[0];\n"
      "if(m==1) U(pi,0,pi) q[0];\nmeasure q[0] -> out[0];\n");
  auto dist = enumerate_branches(c);
  double zero_total = 0;
  for (const auto& [key, p] : dist) {
    CHECK(key.substr(key.find(' ') + 1) == "0");
    zero_total += p;
  }
  CHECK(zero_total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("branch enumeration handles reset branches") {
  auto c = flat("qreg q[1];\ncreg c[1];\nU(pi/2,0,pi) q[0];\nreset q[0];\n"
                "measure q[0] -> c[0];\n");
  auto dist = enumerate_branches(c);
  REQUIRE(dist.size() == 1);
  CHECK(dist.at("0") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("branch enumeration refuses runaway branch counts") {
  std::string body = "qreg q[1];\ncreg c[1];\nU(pi/2,0,pi) q[0];\n";
  for (int i = 0; i < 25; ++i) body += "measure q[0] -> c[0];\n";
  CHECK_THROWS_AS(enumerate_branches(flat(body)), Error);
  CHECK_NOTHROW(enumerate_branches(flat(body), 30));
}

TEST_CASE("norm is preserved through long random circuits") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  std::uniform_int_distribution<std::uint32_t> pick(0, 5);
  StateVector sv(6);
  for (int step = 0; step < 300; ++step) {
    if (step % 3 == 2) {
      std::uint32_t a = pick(rng), b = pick(rng);
      if (a != b) apply_cx(sv, a, b);
    } else {
      apply_1q(sv, u_matrix(angle(rng), angle(rng), angle(rng)), pick(rng));
    }
    REQUIRE(sv.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("circuit_unitary reproduces gate action column by column") {
  auto c = flat("qreg q[2];\nCX q[0],q[1];\n");
  auto m = circuit_unitary(c);
  // first argument is the control (wire 0): |01> -> |11>, |11> -> |01>
  REQUIRE(m.n == 4);
  CHECK(std::abs(m.at(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(m.at(3, 1) - 1.0) < 1e-15);
  CHECK(std::abs(m.at(2, 2) - 1.0) < 1e-15);
  CHECK(std::abs(m.at(1, 3) - 1.0) < 1e-15);
  CHECK(is_unitary(m, 1e-12));
}

TEST_CASE("circuit_unitary rejects measurement and conditions") {
  CHECK_THROWS_AS(
      circuit_unitary(flat("qreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\n")),
      Error);
  CHECK_THROWS_AS(
      circuit_unitary(
          flat("qreg q[1];\ncreg c[1];\nif(c==0) U(0,0,0) q[0];\n")),
      Error);
}

TEST_CASE("wide circuits are rejected with a clear error") {
  std::string body = "qreg q[25];\nU(0,0,0) q[0];\n";
  CHECK_THROWS_AS(run_statevector(flat(body)), Error);
  CHECK_THROWS_AS(circuit_unitary(flat("qreg q[11];\nU(0,0,0) q[0];\n")), Error);
}

TEST_CASE("simulating an unexpanded opaque gate fails") {
  auto c = flat("opaque magic a;\nqreg q[1];\nmagic q[0];\n");
  CHECK_THROWS_AS(simulate(c, 1, 0), Error);
  CHECK_THROWS_AS(enumerate_branches(c), Error);
  CHECK_THROWS_AS(run_statevector(c), Error);
}

TEST_CASE("json serialization shapes") {
  auto c = flat("qreg q[1];\ncreg c[1];\nmeasure q -> c;\n");
  auto counts = simulate(c, 3, 11);
  auto j = nlohmann::json::parse(counts_to_json(counts));
  CHECK(j["shots"] == 3);
  CHECK(j["seed"] == 11);
  CHECK(j["counts"]["0"] == 3);
  auto dist = enumerate_branches(c);
  auto jd = nlohmann::json::parse(distribution_to_json(dist));
  CHECK(jd["shots"].is_null());
  CHECK(jd["seed"].is_null());
  CHECK(jd["counts"]["0"].get<double>() == doctest::Approx(1.0));
  auto sv = run_statevector(flat("qreg q[1];\nU(pi,0,pi) q[0];\n"));
  auto js = nlohmann::json::parse(statevector_to_json(sv));
  REQUIRE(js.is_array());
  REQUIRE(js.size() == 2);
  CHECK(js[0][0].get<double>() == doctest::Approx(0.0));
  double re = js[1][0].get<double>(), im = js[1][1].get<double>();
  CHECK(std::hypot(re, im) == doctest::Approx(1.0));
}
