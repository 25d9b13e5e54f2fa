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

#include "qbayes/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qbayes/errors.hpp"

namespace qbayes {

namespace {

constexpr std::size_t kDirectProductLimit = 50;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double outcome_probability(const DensityOperator& rho, const Povm& povm, std::size_t alpha) {
  const double p = trace_of_product(rho.matrix(), povm.elements[alpha]).real();
  return p < 0.0 ? 0.0 : p;
}

void require_dims(const DensityOperator& rho, const OutcomeRecord& record) {
  if (rho.dim() != record.povm->dim) {
    throw DimensionError("state dimension " + std::to_string(rho.dim()) +
                         " does not match measured POVM dimension " +
                         std::to_string(record.povm->dim));
  }
}

// Reweight by the likelihood of a record segment. Only outcome counts
// matter, so each particle needs one Born vector regardless of segment
// length; long segments accumulate in log domain. Weight order and
// reduction order are fixed, so results are reproducible run to run.
ParticleEnsemble reweighted(const ParticleEnsemble& prior, const OutcomeRecord& record) {
  prior.validate();
  record.validate();
  if (record.outcomes.empty()) return prior;
  require_dims(prior.particles.front(), record);

  const std::size_t num_elements = record.povm->elements.size();
  std::vector<std::size_t> tallies(num_elements, 0);
  for (std::size_t alpha : record.outcomes) ++tallies[alpha];

  const bool log_domain = record.outcomes.size() > kDirectProductLimit;
  const std::size_t count = prior.particles.size();
  std::vector<double> next(count, 0.0);
  std::vector<double> logs(count, -std::numeric_limits<double>::infinity());
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    if (prior.weights[i] <= 0.0) continue;
    if (log_domain) {
      double log_like = 0.0;
      for (std::size_t a = 0; a < num_elements && std::isfinite(log_like); ++a) {
        if (tallies[a] == 0) continue;
        const double p = outcome_probability(prior.particles[i], *record.povm, a);
        log_like = p > 0.0 ? log_like + static_cast<double>(tallies[a]) * std::log(p)
                           : -std::numeric_limits<double>::infinity();
      }
      if (std::isfinite(log_like)) {
        logs[i] = std::log(prior.weights[i]) + log_like;
        max_log = std::max(max_log, logs[i]);
      }
    } else {
      double like = 1.0;
      for (std::size_t a = 0; a < num_elements; ++a) {
        if (tallies[a] == 0) continue;
        const double p = outcome_probability(prior.particles[i], *record.povm, a);
        for (std::size_t rep = 0; rep < tallies[a]; ++rep) like *= p;
      }
      next[i] = prior.weights[i] * like;
    }
  }
  if (log_domain && std::isfinite(max_log)) {
    for (std::size_t i = 0; i < count; ++i) {
      next[i] = std::isfinite(logs[i]) ? std::exp(logs[i] - max_log) : 0.0;
    }
  }

  double normalizer = 0.0;
  for (double w : next) normalizer += w;
  if (!(normalizer > 0.0)) {
    throw DegeneratePosteriorError(
        "every particle has zero likelihood for the observed data; the prior excludes it");
  }
  ParticleEnsemble posterior;
  posterior.particles = prior.particles;
  posterior.weights.resize(count);
  for (std::size_t i = 0; i < count; ++i) posterior.weights[i] = next[i] / normalizer;
  return posterior;
}

}  // namespace

void ParticleEnsemble::validate() const {
  if (particles.empty() || particles.size() != weights.size()) {
    throw ValidationError("particle ensemble needs matching, nonempty particles and weights");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) {
      throw ValidationError("particle weight " + fmt_double(w) + " is negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw ValidationError("particle weights sum to " + fmt_double(sum) + ", not 1");
  }
}

void OutcomeRecord::validate() const {
  if (!povm) {
    throw ValidationError("outcome record has no measured POVM");
  }
  for (std::size_t alpha : outcomes) {
    if (alpha >= povm->elements.size()) {
      throw ValidationError("outcome index " + std::to_string(alpha) +
                            " outside the POVM's " + std::to_string(povm->elements.size()) +
                            " elements");
    }
  }
}

std::size_t CountVector::total() const {
  std::size_t sum = 0;
  for (std::size_t c : counts) sum += c;
  return sum;
}

double laplace_predictive(const CountVector& counts, std::size_t outcome) {
  if (outcome >= counts.counts.size()) {
    throw DimensionError("outcome " + std::to_string(outcome) + " outside the " +
                         std::to_string(counts.counts.size()) + " tallied outcomes");
  }
  const double n_j = static_cast<double>(counts.counts[outcome]);
  const double n = static_cast<double>(counts.total());
  const double k = static_cast<double>(counts.counts.size());
  return (n_j + 1.0) / (n + k);
}

double uniform_predictive(const CountVector& counts, std::size_t outcome) {
  if (outcome >= counts.counts.size()) {
    throw DimensionError("outcome " + std::to_string(outcome) + " outside the " +
                         std::to_string(counts.counts.size()) + " tallied outcomes");
  }
  return 1.0 / static_cast<double>(counts.counts.size());
}

double likelihood(const DensityOperator& rho, const OutcomeRecord& record) {
  record.validate();
  if (record.outcomes.empty()) return 1.0;
  require_dims(rho, record);
  if (record.outcomes.size() <= kDirectProductLimit) {
    double product = 1.0;
    for (std::size_t alpha : record.outcomes) {
      product *= outcome_probability(rho, *record.povm, alpha);
    }
    return product;
  }
  const double log_value = log_likelihood(rho, record);
  return std::isfinite(log_value) ? std::exp(log_value) : 0.0;
}

double log_likelihood(const DensityOperator& rho, const OutcomeRecord& record) {
  record.validate();
  if (record.outcomes.empty()) return 0.0;
  require_dims(rho, record);
  double sum = 0.0;
  for (std::size_t alpha : record.outcomes) {
    const double p = outcome_probability(rho, *record.povm, alpha);
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(p);
  }
  return sum;
}

ParticleEnsemble bayes_update(const ParticleEnsemble& prior, const OutcomeRecord& record) {
  return reweighted(prior, record);
}

DensityOperator predictive_state(const ParticleEnsemble& ensemble) {
  ensemble.validate();
  ComplexMatrix sum(ensemble.particles.front().dim());
  for (std::size_t i = 0; i < ensemble.particles.size(); ++i) {
    ComplexMatrix term = ensemble.particles[i].matrix();
    term *= cxd{ensemble.weights[i], 0.0};
    sum += term;
  }
  return DensityOperator(sum);
}

double effective_sample_size(const ParticleEnsemble& ensemble) {
  ensemble.validate();
  double sum_sq = 0.0;
  for (double w : ensemble.weights) sum_sq += w * w;
  return 1.0 / sum_sq;
}

OutcomeRecord simulate_measurements(const DensityOperator& truth,
                                    std::shared_ptr<const Povm> povm, std::size_t n, Rng& rng) {
  if (!povm) {
    throw ValidationError("measurement simulation needs a POVM");
  }
  const ProbVector probs = outcome_probabilities(truth, *povm);
  std::vector<double> clamped(probs.size());
  for (std::size_t a = 0; a < probs.size(); ++a) clamped[a] = probs.prob(a);
  OutcomeRecord record;
  record.povm = std::move(povm);
  record.outcomes.reserve(n);
  for (std::size_t shot = 0; shot < n; ++shot) {
    record.outcomes.push_back(rng.discrete(clamped));
  }
  return record;
}

ParticleEnsemble sample_particles(std::size_t d, std::size_t count, Rng& rng,
                                  StateMeasure measure) {
  if (count < 1) {
    throw ValidationError("particle ensemble needs at least one particle");
  }
  ParticleEnsemble ensemble;
  ensemble.particles.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ensemble.particles.push_back(sample_density(d, rng, measure));
  }
  ensemble.weights.assign(count, 1.0 / static_cast<double>(count));
  return ensemble;
}

ParticleEnsemble sample_particles_biased(std::size_t d, std::size_t count, Rng& rng,
                                         StateMeasure measure, const DensityOperator& target) {
  if (count < 1) {
    throw ValidationError("particle ensemble needs at least one particle");
  }
  if (target.dim() != d) {
    throw DimensionError("bias target dimension does not match the requested dimension");
  }
  ParticleEnsemble ensemble;
  ensemble.particles.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const DensityOperator fresh = sample_density(d, rng, measure);
    if (rng.uniform() < 0.2) {
      ensemble.particles.push_back(fresh);
    } else {
      ComplexMatrix pulled = target.matrix();
      pulled *= cxd{0.8, 0.0};
      ComplexMatrix tail = fresh.matrix();
      tail *= cxd{0.2, 0.0};
      pulled += tail;
      ensemble.particles.push_back(DensityOperator(pulled));
    }
  }
  ensemble.weights.assign(count, 1.0 / static_cast<double>(count));
  return ensemble;
}

ConvergenceReport convergence_experiment(const DensityOperator& truth,
                                         const ParticleEnsemble& prior1,
                                         const ParticleEnsemble& prior2,
                                         std::shared_ptr<const Povm> povm, std::size_t shots,
                                         Rng& rng, double threshold) {
  prior1.validate();
  prior2.validate();
  for (const ParticleEnsemble* prior : {&prior1, &prior2}) {
    bool supported = false;
    for (std::size_t i = 0; i < prior->particles.size() && !supported; ++i) {
      supported = prior->weights[i] > 0.0 &&
                  trace_distance(prior->particles[i], truth) <= 0.2;
    }
    if (!supported) {
      throw PriorSupportError(
          "a prior puts no weight within trace distance 0.2 of the truth; updates "
          "cannot concentrate there");
    }
  }

  const OutcomeRecord full = simulate_measurements(truth, povm, shots, rng);

  std::vector<std::size_t> checkpoints{0};
  for (std::size_t c = 1; c < shots; c *= 2) checkpoints.push_back(c);
  if (shots > 0) checkpoints.push_back(shots);

  ConvergenceReport report;
  report.threshold = threshold;
  ParticleEnsemble post1 = prior1;
  ParticleEnsemble post2 = prior2;
  std::size_t consumed = 0;
  for (std::size_t checkpoint : checkpoints) {
    if (checkpoint > consumed) {
      OutcomeRecord segment;
      segment.povm = full.povm;
      segment.outcomes.assign(full.outcomes.begin() + static_cast<std::ptrdiff_t>(consumed),
                              full.outcomes.begin() + static_cast<std::ptrdiff_t>(checkpoint));
      post1 = bayes_update(post1, segment);
      post2 = bayes_update(post2, segment);
      consumed = checkpoint;
    }
    const DensityOperator pred1 = predictive_state(post1);
    const DensityOperator pred2 = predictive_state(post2);
    ConvergenceRow row;
    row.shots = checkpoint;
    row.cross_prior_distance = trace_distance(pred1, pred2);
    row.prior1_truth = trace_distance(pred1, truth);
    row.prior2_truth = trace_distance(pred2, truth);
    report.rows.push_back(row);
  }

  const ConvergenceRow& final_row = report.rows.back();
  report.converged = final_row.cross_prior_distance < threshold &&
                     final_row.prior1_truth < threshold && final_row.prior2_truth < threshold;
  return report;
}

ConvergenceReport run_state_experiment(const StateExperimentConfig& config,
                                       const DensityOperator& truth) {
  if (truth.dim() != config.dim) {
    throw DimensionError("truth dimension does not match the experiment dimension");
  }
  const auto povm = std::make_shared<const Povm>(build_min_ic_povm(config.dim));
  Rng root(config.seed);
  Rng prior1_rng = root.split(1);
  Rng prior2_rng = root.split(2);
  Rng measure_rng = root.split(3);
  const ParticleEnsemble prior1 =
      sample_particles(config.dim, config.particles, prior1_rng, config.measure);
  ComplexMatrix last(config.dim);
  last.at(config.dim - 1, config.dim - 1) = 1.0;
  const ParticleEnsemble prior2 = sample_particles_biased(
      config.dim, config.particles, prior2_rng, config.measure, DensityOperator(last));
  return convergence_experiment(truth, prior1, prior2, povm, config.shots, measure_rng,
                                config.threshold);
}

}  // namespace qbayes
