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

#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbayes/matrix.hpp"
#include "qbayes/rng.hpp"

namespace qbayes {

// Validated density operator: Hermitian, unit trace, positive semidefinite
// (all within kDensityTol-scale tolerances).
class DensityOperator {
 public:
  static constexpr double kDensityTol = 1e-9;

  explicit DensityOperator(ComplexMatrix m);

  std::size_t dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

// Point in the closed unit ball parameterizing a qubit state.
struct BlochVector {
  std::array<double, 3> s{0.0, 0.0, 0.0};

  double norm() const;
};

// Convex mixture of pure qubit states given by unit Bloch directions.
struct QubitEnsemble {
  std::vector<double> weights;
  std::vector<std::array<double, 3>> directions;

  // Throws ValidationError unless weights form a probability vector
  // (sum within 1e-12) and every direction is unit length within 1e-12.
  void validate() const;
};

// Pauli matrices; index k in {1, 2, 3}.
ComplexMatrix pauli(int k);

// rho = (I + s . sigma) / 2. Throws ValidationError if |s| > 1 + 1e-12.
DensityOperator bloch_to_rho(const BlochVector& s);

// Inverse map, s_k = tr(rho sigma_k). Throws DimensionError unless dim = 2.
BlochVector rho_to_bloch(const DensityOperator& rho);

// rho = sum_j p_j |n_j><n_j| over the ensemble's pure components.
DensityOperator ensemble_to_rho(const QubitEnsemble& e);

enum class StateMeasure { kHilbertSchmidt, kBuresLike, kPureHaar };

// Parses "hilbert-schmidt" | "bures-like" | "pure-haar"; throws
// ValidationError otherwise.
StateMeasure parse_state_measure(const std::string& name);
std::string state_measure_name(StateMeasure measure);

// Random density operator of dimension d >= 2 under the given measure;
// deterministic for a given stream state.
DensityOperator sample_density(std::size_t d, Rng& rng, StateMeasure measure);

// Haar-random unitary of dimension d (QR of a Gaussian matrix with the
// phase convention that makes the factorization unique).
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);

// Trace distance between two density operators of equal dimension.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

// Wire formats. Density operators reuse the matrix format; ensembles are
// {"weights": [...], "directions": [[x, y, z], ...]}.
nlohmann::json density_to_json(const DensityOperator& rho);
DensityOperator density_from_json(const nlohmann::json& j);
nlohmann::json ensemble_to_json(const QubitEnsemble& e);
QubitEnsemble ensemble_from_json(const nlohmann::json& j);

}  // namespace qbayes
