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
#include <memory>
#include <vector>

#include "qbayes/povm.hpp"
#include "qbayes/rng.hpp"
#include "qbayes/states.hpp"

namespace qbayes {

// Discretized prior/posterior over density operators: fixed particles with
// importance weights. No resampling — updates only reweight.
struct ParticleEnsemble {
  std::vector<DensityOperator> particles;
  std::vector<double> weights;

  // Throws ValidationError unless weights are nonnegative, sum to 1 within
  // 1e-10, and there is at least one particle.
  void validate() const;
};

// A measured POVM together with the observed outcome indices, in order.
struct OutcomeRecord {
  std::shared_ptr<const Povm> povm;
  std::vector<std::size_t> outcomes;

  void validate() const;
};

// Per-outcome tallies of a completed run.
struct CountVector {
  std::vector<std::size_t> counts;

  std::size_t total() const;
};

// (n_j + 1) / (N + k): posterior predictive of outcome j under a uniform
// prior over outcome distributions.
double laplace_predictive(const CountVector& counts, std::size_t outcome);

// 1 / k regardless of the data: the predictive of a fixed fair model.
double uniform_predictive(const CountVector& counts, std::size_t outcome);

// prod_n tr(rho E_{alpha_n}). Uses direct products for short records and
// log-domain accumulation beyond 50 outcomes.
double likelihood(const DensityOperator& rho, const OutcomeRecord& record);

// sum_n log tr(rho E_{alpha_n}); -inf when any factor is zero.
double log_likelihood(const DensityOperator& rho, const OutcomeRecord& record);

// Reweights every particle by its likelihood and renormalizes. Particles
// are untouched. Throws DegeneratePosteriorError when every particle has
// zero likelihood.
ParticleEnsemble bayes_update(const ParticleEnsemble& prior, const OutcomeRecord& record);

// sum_i w_i rho_i: the single-copy predictive state of the ensemble.
DensityOperator predictive_state(const ParticleEnsemble& ensemble);

// 1 / sum_i w_i^2, between 1 and the particle count.
double effective_sample_size(const ParticleEnsemble& ensemble);

// n i.i.d. outcomes drawn from the Born probabilities of truth under povm.
OutcomeRecord simulate_measurements(const DensityOperator& truth,
                                    std::shared_ptr<const Povm> povm, std::size_t n, Rng& rng);

// `count` particles drawn from the given measure with uniform weights.
ParticleEnsemble sample_particles(std::size_t d, std::size_t count, Rng& rng,
                                  StateMeasure measure);

// Like sample_particles, but 80% of draws are pulled toward `target`
// (0.8 target + 0.2 fresh sample), leaving 20% unbiased.
ParticleEnsemble sample_particles_biased(std::size_t d, std::size_t count, Rng& rng,
                                         StateMeasure measure, const DensityOperator& target);

// One checkpoint of the two-prior experiment.
struct ConvergenceRow {
  std::size_t shots = 0;
  double cross_prior_distance = 0.0;
  double prior1_truth = 0.0;
  double prior2_truth = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double threshold = 0.0;
  bool converged = false;
};

// Runs both priors against the same simulated data, logging trace
// distances at shot counts 0, 1, 2, 4, ... and the final count. Requires
// each prior to put weight within trace distance 0.2 of the truth
// (PriorSupportError otherwise); 'converged' reports whether the final
// cross-prior and both prior-to-truth distances fall below `threshold`.
ConvergenceReport convergence_experiment(const DensityOperator& truth,
                                         const ParticleEnsemble& prior1,
                                         const ParticleEnsemble& prior2,
                                         std::shared_ptr<const Povm> povm, std::size_t shots,
                                         Rng& rng, double threshold);

// Ready-made two-prior experiment: minimal IC POVM for `dim`, one prior
// sampled from `measure`, one biased toward the last basis projector, and
// measurement data from the truth, all from deterministic substreams of
// `seed`.
struct StateExperimentConfig {
  std::size_t dim = 2;
  std::size_t shots = 2000;
  std::size_t particles = 4096;
  std::uint64_t seed = 42;
  StateMeasure measure = StateMeasure::kHilbertSchmidt;
  double threshold = 0.08;
};

ConvergenceReport run_state_experiment(const StateExperimentConfig& config,
                                       const DensityOperator& truth);

}  // namespace qbayes
