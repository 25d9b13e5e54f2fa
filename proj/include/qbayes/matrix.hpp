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

namespace qbayes {

using cxd = std::complex<double>;

// Dense square complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::vector<cxd> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cxd& at(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const cxd& at(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

  std::vector<cxd>& entries() { return entries_; }
  const std::vector<cxd>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  cxd trace() const;
  double frobenius_norm() const;
  // Largest entry magnitude; zero for an empty matrix.
  double max_abs() const;
  // max |m[r][c] - conj(m[c][r])| over all entries.
  double hermiticity_defect() const;
  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cxd s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cxd s) { return a *= s; }
  friend ComplexMatrix operator*(cxd s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<cxd> entries_;
};

// |v><w| on matching lengths.
ComplexMatrix outer(const std::vector<cxd>& v, const std::vector<cxd>& w);
inline ComplexMatrix outer(const std::vector<cxd>& v) { return outer(v, v); }

// <v|w> with conjugation on the left argument.
cxd inner(const std::vector<cxd>& v, const std::vector<cxd>& w);

// Matrix-vector product.
std::vector<cxd> apply(const ComplexMatrix& m, const std::vector<cxd>& v);

// tr(a * b) without forming the product.
cxd trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_diff(const ComplexMatrix& a, const ComplexMatrix& b);

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* context);

}  // namespace qbayes
