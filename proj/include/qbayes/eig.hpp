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

#include <vector>

#include "qbayes/matrix.hpp"

namespace qbayes {

// Hermiticity tolerance scales with dimension: tol = kHermTolPerDim * dim.
inline constexpr double kHermTolPerDim = 1e-9;
// Eigenvalues at or below this floor count as singular for inverse square roots.
inline constexpr double kPsdFloor = 1e-12;

struct EigResult {
  // Descending order. Exact ties are broken lexicographically on the
  // eigenvector entries; each eigenvector's largest-magnitude component is
  // phase-rotated to the positive real axis, so equal inputs give equal output.
  std::vector<double> values;
  // Columns are the orthonormal eigenvectors, aligned with `values`.
  ComplexMatrix vectors;

  std::vector<cxd> vector(std::size_t k) const;
};

EigResult herm_eig(const ComplexMatrix& m);

// m^{-1/2} for Hermitian positive-definite m; throws SingularityError naming
// the offending eigenvalue when min eigenvalue <= kPsdFloor.
ComplexMatrix inv_sqrt_psd(const ComplexMatrix& m);

// Half the absolute eigenvalue sum of a-b, for Hermitian a, b.
double trace_distance_herm(const ComplexMatrix& a, const ComplexMatrix& b);

double min_eigenvalue(const ComplexMatrix& m);

}  // namespace qbayes
