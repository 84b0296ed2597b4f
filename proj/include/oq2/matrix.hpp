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
#include <cstddef>
#include <vector>

namespace oq2 {

// Dense square complex matrix, row-major.
struct CMatrix {
  std::size_t n = 0;
  std::vector<std::complex<double>> a;

  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n(n), a(n * n) {}

  static CMatrix identity(std::size_t n);

  std::complex<double>& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const std::complex<double>& at(std::size_t r, std::size_t c) const {
    return a[r * n + c];
  }

  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix adjoint() const;
};

double max_abs_diff(const CMatrix& a, const CMatrix& b);

bool is_unitary(const CMatrix& m, double tol);

// Max element-wise difference after scaling b by the unit phase that matches
// a at the first entry whose magnitude exceeds tol in both. If the matrices
// have no such common entry they differ structurally and the raw difference
// is returned.
double phase_aligned_diff(const CMatrix& a, const CMatrix& b, double tol = 1e-9);

}  // namespace oq2
