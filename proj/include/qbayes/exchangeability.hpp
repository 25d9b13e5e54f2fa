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
#include <optional>
#include <vector>

#include <json.hpp>

#include "qbayes/matrix.hpp"
#include "qbayes/povm.hpp"
#include "qbayes/states.hpp"
#include "qbayes/tensor.hpp"

namespace qbayes {

// Largest full joint table the classical routines will materialize.
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 22;
// Largest composite Hilbert-space dimension the quantum routines build.
constexpr std::size_t kMaxCompositeDim = 512;

// Joint probability table for num_trials draws with num_outcomes outcomes
// each. Tuples map to indices big-endian: trial 0 is the most significant
// digit.
struct JointDistribution {
  std::size_t num_trials = 0;
  std::size_t num_outcomes = 0;
  std::vector<double> table;

  // Throws ValidationError unless the table has num_outcomes^num_trials
  // nonnegative entries summing to 1 within 1e-12.
  void validate() const;

  std::size_t index_of(const std::vector<std::size_t>& tuple) const;
  std::vector<std::size_t> tuple_of(std::size_t index) const;
  double at(const std::vector<std::size_t>& tuple) const;
};

// Finite mixture of points on the probability simplex.
struct SimplexMixture {
  std::vector<double> weights;
  std::vector<std::vector<double>> points;

  void validate() const;
};

// Finite mixture of density operators of a common dimension.
struct StateMixture {
  std::vector<double> weights;
  std::vector<DensityOperator> states;

  void validate() const;
};

// Finite mixture of Hermitian unit-trace operators; unlike StateMixture the
// components need not be positive.
struct OperatorMixture {
  std::vector<double> weights;
  std::vector<ComplexMatrix> operators;

  void validate() const;
};

// Verdict of a symmetry check; when violated, the offending adjacent
// transposition (swap_pos, swap_pos + 1) and, for distributions, a tuple
// witnessing the violation.
struct SymmetryVerdict {
  bool symmetric = true;
  std::size_t swap_pos = 0;
  std::vector<std::size_t> tuple;
};

// Result of an extendibility feasibility solve.
struct ExtendibilityResult {
  bool feasible = false;
  // When feasible: a symmetric (num_trials + extra)-trial table whose
  // marginal is the input.
  std::optional<JointDistribution> extension;
  // When infeasible: one multiplier per count class of the input, with a
  // positive inner product against the input's class probabilities while
  // every extension column stays nonpositive.
  std::vector<double> certificate;
};

// Witness against positivity: a projector and the magnitude of the
// offending negative eigenvalue.
struct NegativityWitness {
  ComplexMatrix projector;
  double lambda = 0.0;
};

// True within 1e-12 under every adjacent transposition of trials.
SymmetryVerdict is_symmetric_distribution(const JointDistribution& p);

// Decides whether a symmetric p extends to a symmetric distribution on
// `extra` additional trials with p as its marginal. Works on count-class
// variables, so the solve stays polynomial in table size; the full
// extension table is materialized only on success.
ExtendibilityResult is_extendible_distribution(const JointDistribution& p, std::size_t extra);

// p(x) = sum_i w_i prod_t points_i[x_t]: an exchangeable mixture of
// i.i.d. distributions over n trials.
JointDistribution classical_definetti_mix(const SimplexMixture& mix, std::size_t n);

// True within 1e-10 under every adjacent transposition of systems.
SymmetryVerdict quantum_symmetric_check(const DensityOperator& rho, const SystemShape& shape);

// Certificate check: candidate lives on one more system, is symmetric, and
// traces down to rho within 1e-10. This validates a proposed extension; it
// does not search for one.
bool quantum_extendibility_probe(const DensityOperator& rho, const SystemShape& shape,
                                 const DensityOperator& candidate);

// sum_i w_i rho_i^{tensor n}.
DensityOperator exchangeable_state_from_mixture(const StateMixture& mix, std::size_t n);

// For a nonphysical reconstruction (min eigenvalue -lambda < -1e-8),
// returns the projector onto the complement of the offending eigenvector;
// tr(a * projector) = 1 + lambda > 1. Throws NoWitnessError on physical
// input.
NegativityWitness negativity_witness(const ReconstructedOperator& a);

// sum_i w_i [tr(A_i P)]^n for even n. For a mixture of genuine states this
// is a probability in [0, 1]; a nonphysical component with tr(A P) > 1
// eventually drives it above 1, which is the point. Odd n is rejected
// (ValidationError): the positivity argument needs even powers.
double witness_growth(const OperatorMixture& mix, const ComplexMatrix& projector, std::size_t n);

// Wire formats.
// {"num_trials": N, "num_outcomes": k, "table": [...]} big-endian.
nlohmann::json joint_to_json(const JointDistribution& p);
JointDistribution joint_from_json(const nlohmann::json& j);
// {"lambda": ..., "projector": matrix, "growth": [[n, value], ...]}.
nlohmann::json witness_report_to_json(const NegativityWitness& witness,
                                      const std::vector<std::pair<std::size_t, double>>& growth);

}  // namespace qbayes
