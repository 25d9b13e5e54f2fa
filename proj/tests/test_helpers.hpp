#pragma once

#include <doctest.h>

#include <vector>

#include "qbayes/matrix.hpp"
#include "qbayes/rng.hpp"

namespace qbayes::test {

inline ComplexMatrix random_matrix(std::size_t dim, Rng& rng) {
  ComplexMatrix m(dim);
  for (auto& e : m.entries()) e = rng.gauss_complex();
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  ComplexMatrix g = random_matrix(dim, rng);
  ComplexMatrix out = g + g.adjoint();
  out *= cxd{0.5, 0.0};
  return out;
}

// G G† / tr(G G†): a generic full-rank density matrix.
inline ComplexMatrix random_density_matrix(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_matrix(dim, rng);
  ComplexMatrix out = g * g.adjoint();
  out *= cxd{1.0 / out.trace().real(), 0.0};
  return out;
}

inline std::vector<cxd> random_unit_vector(std::size_t dim, Rng& rng) {
  std::vector<cxd> v(dim);
  double norm2 = 0.0;
  for (auto& e : v) {
    e = rng.gauss_complex();
    norm2 += std::norm(e);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& e : v) e *= inv;
  return v;
}

inline ComplexMatrix diag(const std::vector<double>& d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

}  // namespace qbayes::test

#define CHECK_MATRIX_NEAR(a, b, tol) CHECK(qbayes::max_abs_diff((a), (b)) <= (tol))
