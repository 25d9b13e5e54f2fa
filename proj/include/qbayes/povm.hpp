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

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "qbayes/matrix.hpp"
#include "qbayes/states.hpp"

namespace qbayes {

// Positive-operator-valued measure. Element order is fixed at construction
// and is part of the serialized format: probability vectors are meaningless
// without it.
struct Povm {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> elements;
  bool minimal_ic = false;

  // Throws ValidationError unless every element is PSD (min eigenvalue
  // >= -1e-10), the elements sum to the identity within 1e-10 Frobenius,
  // and, when minimal_ic is set, there are exactly dim^2 linearly
  // independent elements (Hilbert-Schmidt Gram rank dim^2).
  void validate() const;
};

// Outcome probabilities for one measurement. Entries may carry tiny
// negative noise (>= -1e-12) and are clamped to zero on read.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t i) const;
  const std::vector<double>& raw() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Operator recovered from a probability vector: Hermitian with unit trace,
// but possibly not positive (is_physical reports min eigenvalue >= -1e-8).
struct ReconstructedOperator {
  ComplexMatrix matrix;
  bool is_physical = false;
};

// The d^2 rank-1 projectors spanning operator space, in serialization
// order: d basis projectors, then the d(d-1)/2 real cross terms (j < k,
// lexicographic), then the d(d-1)/2 imaginary cross terms (same order).
std::vector<ComplexMatrix> build_projector_family(std::size_t d);

// Minimal informationally complete POVM: E_a = G^{-1/2} P_a G^{-1/2} where
// G is the sum of the projector family. Elements keep the family's order.
Povm build_min_ic_povm(std::size_t d);

// probs[a] = Re tr(rho E_a). Throws DimensionError on dimension mismatch.
ProbVector outcome_probabilities(const DensityOperator& rho, const Povm& povm);

// Real basis of Hermitian d x d matrices used for reconstruction solves, in
// fixed order: identity, symmetric cross terms (j < k, lexicographic),
// antisymmetric cross terms (same order), then d - 1 traceless diagonals.
std::vector<ComplexMatrix> hermitian_basis(std::size_t d);

// Solves tr(A E_a) = probs[a] for the unique Hermitian A. Requires a
// minimal IC POVM (throws OvercompletenessError otherwise) and a matching
// probability count (DimensionError).
ReconstructedOperator reconstruct_operator(const ProbVector& probs, const Povm& povm);

// Upper bound [d - (1 + cot(3 pi / 4d)) / 2]^{-1} on any single-outcome
// probability of the minimal IC POVM; approaches (0.79 d)^{-1} for large d.
double max_prob_bound(std::size_t d);

// Wire format: {"dim": d, "minimal_ic": bool, "elements": [matrix, ...]}.
nlohmann::json povm_to_json(const Povm& povm);
Povm povm_from_json(const nlohmann::json& j);

}  // namespace qbayes
