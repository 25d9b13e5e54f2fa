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

#include "qbayes/eig.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qbayes/errors.hpp"

namespace qbayes {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      out(r, c) = m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return out;
}

// Lexicographic comparison on (re, im) pairs of two eigenvector columns.
bool column_less(const ComplexMatrix& v, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < v.dim(); ++r) {
    const cxd& x = v.at(r, a);
    const cxd& y = v.at(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

std::vector<cxd> EigResult::vector(std::size_t k) const {
  std::vector<cxd> v(vectors.dim());
  for (std::size_t r = 0; r < vectors.dim(); ++r) v[r] = vectors.at(r, k);
  return v;
}

EigResult herm_eig(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw DimensionError("herm_eig on empty matrix");
  const double tol = kHermTolPerDim * static_cast<double>(n);
  if (!m.is_hermitian(tol)) {
    throw ValidationError("herm_eig: input not Hermitian (defect " +
                          std::to_string(m.hermiticity_defect()) + ", tol " + std::to_string(tol) +
                          ")");
  }

  Eigen::MatrixXcd a = to_eigen(m);
  a = ((a + a.adjoint()) * 0.5).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) throw Error("herm_eig: eigensolver failed to converge");

  EigResult out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  // Eigen sorts ascending; store descending.
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(n - 1 - k);
    out.values[k] = solver.eigenvalues()(src);
    for (std::size_t r = 0; r < n; ++r)
      out.vectors.at(r, k) = solver.eigenvectors()(static_cast<Eigen::Index>(r), src);
  }

  // Deterministic phase: rotate each column so its largest-magnitude entry
  // (first such index) is real and positive.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double mag = std::abs(out.vectors.at(r, k));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    const cxd p = out.vectors.at(pivot, k);
    if (best > 0.0) {
      const cxd phase = std::conj(p) / std::abs(p);
      for (std::size_t r = 0; r < n; ++r) out.vectors.at(r, k) *= phase;
      out.vectors.at(pivot, k) = cxd{std::abs(p), 0.0};
    }
  }

  // Stable order on exactly equal eigenvalues: lexicographic on the vectors.
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && out.values[end] == out.values[start]) ++end;
    if (end - start > 1) {
      std::vector<std::size_t> order(end - start);
      std::iota(order.begin(), order.end(), start);
      std::sort(order.begin(), order.end(), [&](std::size_t a2, std::size_t b2) {
        return column_less(out.vectors, a2, b2);
      });
      ComplexMatrix sorted = out.vectors;
      for (std::size_t k = 0; k < order.size(); ++k)
        for (std::size_t r = 0; r < n; ++r) sorted.at(r, start + k) = out.vectors.at(r, order[k]);
      out.vectors = sorted;
    }
    start = end;
  }
  return out;
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& m) {
  const EigResult eig = herm_eig(m);
  for (double v : eig.values) {
    if (v <= kPsdFloor) {
      throw SingularityError("inv_sqrt_psd: eigenvalue " + std::to_string(v) +
                             " at or below floor " + std::to_string(kPsdFloor));
    }
  }
  const std::size_t n = m.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      cxd sum = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        sum += eig.vectors.at(r, k) * std::conj(eig.vectors.at(c, k)) / std::sqrt(eig.values[k]);
      out.at(r, c) = sum;
    }
  return out;
}

double trace_distance_herm(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_distance");
  const EigResult eig = herm_eig(a - b);
  double sum = 0.0;
  for (double v : eig.values) sum += std::abs(v);
  return 0.5 * sum;
}

double min_eigenvalue(const ComplexMatrix& m) {
  const EigResult eig = herm_eig(m);
  return eig.values.back();
}

}  // namespace qbayes
