// Copyright 2026
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "qbayes/povm.hpp"

#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include "qbayes/eig.hpp"
#include "qbayes/errors.hpp"
#include "qbayes/json_io.hpp"

namespace qbayes {

namespace {

constexpr double kPsdTol = 1e-10;
constexpr double kSumTol = 1e-10;
constexpr double kGramRankTol = 1e-10;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

ComplexMatrix basis_projector(std::size_t d, std::size_t j) {
  ComplexMatrix m(d);
  m.at(j, j) = 1.0;
  return m;
}

}  // namespace

void Povm::validate() const {
  if (dim < 2) {
    throw ValidationError("POVM dimension must be at least 2, got " + std::to_string(dim));
  }
  if (elements.empty()) {
    throw ValidationError("POVM has no elements");
  }
  ComplexMatrix sum(dim);
  for (std::size_t a = 0; a < elements.size(); ++a) {
    const ComplexMatrix& e = elements[a];
    if (e.dim() != dim) {
      throw DimensionError("POVM element " + std::to_string(a) + " has dimension " +
                           std::to_string(e.dim()) + ", expected " + std::to_string(dim));
    }
    const double min_eig = min_eigenvalue(e);
    if (min_eig < -kPsdTol) {
      throw ValidationError("POVM element " + std::to_string(a) +
                            " has negative eigenvalue " + fmt_double(min_eig));
    }
    sum += e;
  }
  const double residual = frobenius_diff(sum, ComplexMatrix::identity(dim));
  if (residual > kSumTol) {
    throw ValidationError("POVM elements sum to identity only within " + fmt_double(residual));
  }
  if (minimal_ic) {
    if (elements.size() != dim * dim) {
      throw ValidationError("minimal IC POVM needs " + std::to_string(dim * dim) +
                            " elements, got " + std::to_string(elements.size()));
    }
    // Hilbert-Schmidt Gram matrix; full rank certifies linear independence.
    const std::size_t n = elements.size();
    ComplexMatrix gram(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        const cxd g = trace_of_product(elements[a].adjoint(), elements[b]);
        gram.at(a, b) = g;
        gram.at(b, a) = std::conj(g);
      }
    }
    const EigResult eig = herm_eig(gram);
    std::size_t rank = 0;
    for (double v : eig.values) {
      if (v > kGramRankTol) ++rank;
    }
    if (rank != n) {
      throw ValidationError("minimal IC POVM Gram rank is " + std::to_string(rank) +
                            ", expected " + std::to_string(n));
    }
  }
}

ProbVector::ProbVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw ValidationError("probability vector is empty");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (p < -1e-12) {
      throw ValidationError("probability entry " + fmt_double(p) + " below tolerance");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw ValidationError("probabilities sum to " + fmt_double(sum) + ", not 1");
  }
}

double ProbVector::prob(std::size_t i) const {
  const double p = probs_.at(i);
  return p < 0.0 ? 0.0 : p;
}

std::vector<ComplexMatrix> build_projector_family(std::size_t d) {
  if (d < 2) {
    throw DimensionError("projector family needs dimension at least 2, got " +
                         std::to_string(d));
  }
  std::vector<ComplexMatrix> family;
  family.reserve(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    family.push_back(basis_projector(d, j));
  }
  // Real cross terms: projectors onto (|j> + |k>) / sqrt(2).
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d);
      m.at(j, j) = 0.5;
      m.at(k, k) = 0.5;
      m.at(j, k) = 0.5;
      m.at(k, j) = 0.5;
      family.push_back(m);
    }
  }
  // Imaginary cross terms: projectors onto (|j> + i|k>) / sqrt(2).
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d);
      m.at(j, j) = 0.5;
      m.at(k, k) = 0.5;
      m.at(j, k) = cxd{0.0, -0.5};
      m.at(k, j) = cxd{0.0, 0.5};
      family.push_back(m);
    }
  }
  return family;
}

Povm build_min_ic_povm(std::size_t d) {
  const std::vector<ComplexMatrix> family = build_projector_family(d);
  ComplexMatrix g(d);
  for (const ComplexMatrix& p : family) g += p;
  const ComplexMatrix g_inv_sqrt = inv_sqrt_psd(g);
  Povm povm;
  povm.dim = d;
  povm.minimal_ic = true;
  povm.elements.reserve(family.size());
  for (const ComplexMatrix& p : family) {
    povm.elements.push_back(g_inv_sqrt * p * g_inv_sqrt);
  }
  povm.validate();
  return povm;
}

ProbVector outcome_probabilities(const DensityOperator& rho, const Povm& povm) {
  if (rho.dim() != povm.dim) {
    throw DimensionError("state dimension " + std::to_string(rho.dim()) +
                         " does not match POVM dimension " + std::to_string(povm.dim));
  }
  std::vector<double> probs;
  probs.reserve(povm.elements.size());
  for (const ComplexMatrix& e : povm.elements) {
    const cxd p = trace_of_product(rho.matrix(), e);
    if (std::abs(p.imag()) > 1e-10) {
      throw ValidationError("outcome probability has imaginary part " + fmt_double(p.imag()));
    }
    probs.push_back(p.real());
  }
  return ProbVector(std::move(probs));
}

std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
  if (d < 2) {
    throw DimensionError("Hermitian basis needs dimension at least 2, got " +
                         std::to_string(d));
  }
  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d);
  basis.push_back(ComplexMatrix::identity(d));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d);
      m.at(j, k) = 1.0;
      m.at(k, j) = 1.0;
      basis.push_back(m);
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d);
      m.at(j, k) = cxd{0.0, -1.0};
      m.at(k, j) = cxd{0.0, 1.0};
      basis.push_back(m);
    }
  }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix m(d);
    const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (static_cast<double>(l) + 1.0)));
    for (std::size_t j = 0; j < l; ++j) m.at(j, j) = scale;
    m.at(l, l) = -scale * static_cast<double>(l);
    basis.push_back(m);
  }
  return basis;
}

ReconstructedOperator reconstruct_operator(const ProbVector& probs, const Povm& povm) {
  if (!povm.minimal_ic) {
    throw OvercompletenessError(
        "reconstruction needs a minimal IC POVM; the linear system is not square otherwise");
  }
  const std::size_t n = povm.dim * povm.dim;
  if (probs.size() != n) {
    throw DimensionError("probability vector has " + std::to_string(probs.size()) +
                         " entries, expected " + std::to_string(n));
  }
  const std::vector<ComplexMatrix> basis = hermitian_basis(povm.dim);
  Eigen::MatrixXd system(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      system(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          trace_of_product(povm.elements[a], basis[b]).real();
    }
    rhs(static_cast<Eigen::Index>(a)) = probs.raw()[a];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> solver(system);
  if (solver.rank() < static_cast<Eigen::Index>(n)) {
    throw SingularityError("reconstruction system is rank deficient: rank " +
                           std::to_string(solver.rank()));
  }
  const Eigen::VectorXd coeffs = solver.solve(rhs);
  ComplexMatrix a(povm.dim);
  for (std::size_t b = 0; b < n; ++b) {
    ComplexMatrix term = basis[b];
    term *= cxd{coeffs(static_cast<Eigen::Index>(b)), 0.0};
    a += term;
  }
  const double herm = a.hermiticity_defect();
  if (herm > 1e-9) {
    throw ValidationError("reconstructed operator Hermiticity defect " + fmt_double(herm));
  }
  const double tr_err = std::abs(a.trace() - cxd{1.0, 0.0});
  if (tr_err > 1e-9) {
    throw ValidationError("reconstructed operator trace differs from 1 by " + fmt_double(tr_err));
  }
  ReconstructedOperator out;
  out.matrix = a;
  out.is_physical = min_eigenvalue(a) >= -1e-8;
  return out;
}

double max_prob_bound(std::size_t d) {
  if (d < 2) {
    throw DimensionError("probability bound needs dimension at least 2, got " +
                         std::to_string(d));
  }
  const double dd = static_cast<double>(d);
  const double angle = 3.0 * M_PI / (4.0 * dd);
  const double cot = std::cos(angle) / std::sin(angle);
  return 1.0 / (dd - 0.5 * (1.0 + cot));
}

nlohmann::json povm_to_json(const Povm& povm) {
  povm.validate();
  nlohmann::json elements = nlohmann::json::array();
  for (const ComplexMatrix& e : povm.elements) {
    elements.push_back(matrix_to_json(e));
  }
  return nlohmann::json{
      {"dim", povm.dim}, {"minimal_ic", povm.minimal_ic}, {"elements", std::move(elements)}};
}

Povm povm_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("minimal_ic") ||
      !j.contains("elements")) {
    throw ValidationError("POVM JSON must contain 'dim', 'minimal_ic', and 'elements'");
  }
  Povm povm;
  if (!j["dim"].is_number_unsigned()) {
    throw ValidationError("POVM JSON 'dim' must be a nonnegative integer");
  }
  povm.dim = j["dim"].get<std::size_t>();
  if (!j["minimal_ic"].is_boolean()) {
    throw ValidationError("POVM JSON 'minimal_ic' must be a boolean");
  }
  povm.minimal_ic = j["minimal_ic"].get<bool>();
  if (!j["elements"].is_array()) {
    throw ValidationError("POVM JSON 'elements' must be an array");
  }
  for (const auto& e : j["elements"]) {
    povm.elements.push_back(matrix_from_json(e));
  }
  povm.validate();
  return povm;
}

}  // namespace qbayes
