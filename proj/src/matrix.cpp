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

#include "oq2/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace oq2 {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  CMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> v = at(r, k);
      if (v == std::complex<double>{}) continue;
      for (std::size_t c = 0; c < n; ++c) out.at(r, c) += v * rhs.at(k, c);
    }
  return out;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.at(r, c) = std::conj(at(c, r));
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double worst = a.n == b.n ? 0.0 : 1e300;
  for (std::size_t i = 0; i < a.a.size() && i < b.a.size(); ++i)
    worst = std::max(worst, std::abs(a.a[i] - b.a[i]));
  return worst;
}

bool is_unitary(const CMatrix& m, double tol) {
  return max_abs_diff(m * m.adjoint(), CMatrix::identity(m.n)) <= tol;
}

double phase_aligned_diff(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.n != b.n) return 1e300;
  for (std::size_t i = 0; i < a.a.size(); ++i) {
    if (std::abs(a.a[i]) <= tol || std::abs(b.a[i]) <= tol) continue;
    std::complex<double> z = a.a[i] / b.a[i];
    z /= std::abs(z);
    CMatrix scaled = b;
    for (auto& v : scaled.a) v *= z;
    return max_abs_diff(a, scaled);
  }
  return max_abs_diff(a, b);
}

}  // namespace oq2
