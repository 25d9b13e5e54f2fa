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

#include "qbayes/exchangeability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qbayes/eig.hpp"
#include "qbayes/errors.hpp"
#include "qbayes/json_io.hpp"
#include "qbayes/simplex.hpp"

namespace qbayes {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t limit,
                          const char* what) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (result > limit / base) {
      throw ResourceLimitError(std::string(what) + " exceeds the configured size limit");
    }
    result *= base;
  }
  if (result > limit) {
    throw ResourceLimitError(std::string(what) + " exceeds the configured size limit");
  }
  return result;
}

// All count vectors (c_0, ..., c_{k-1}) with sum n, in lexicographic order.
void enumerate_counts(std::size_t k, std::size_t n, std::vector<std::size_t>& prefix,
                      std::vector<std::vector<std::size_t>>& out) {
  if (prefix.size() + 1 == k) {
    std::size_t used = 0;
    for (std::size_t c : prefix) used += c;
    prefix.push_back(n - used);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  std::size_t used = 0;
  for (std::size_t c : prefix) used += c;
  for (std::size_t c = 0; c + used <= n; ++c) {
    prefix.push_back(c);
    enumerate_counts(k, n, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<std::size_t>> count_vectors(std::size_t k, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> prefix;
  enumerate_counts(k, n, prefix, out);
  return out;
}

std::vector<std::size_t> counts_of_tuple(const std::vector<std::size_t>& tuple, std::size_t k) {
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t x : tuple) ++counts[x];
  return counts;
}

// A canonical representative tuple for a count class: outcome 0 repeated
// c_0 times, then outcome 1, and so on.
std::vector<std::size_t> canonical_tuple(const std::vector<std::size_t>& counts) {
  std::vector<std::size_t> tuple;
  for (std::size_t outcome = 0; outcome < counts.size(); ++outcome) {
    tuple.insert(tuple.end(), counts[outcome], outcome);
  }
  return tuple;
}

double multinomial(std::size_t n, const std::vector<std::size_t>& parts) {
  double value = 1.0;
  std::size_t remaining = n;
  for (std::size_t p : parts) {
    // Running product of binomial coefficients C(remaining, p).
    for (std::size_t i = 1; i <= p; ++i) {
      value *= static_cast<double>(remaining - p + i) / static_cast<double>(i);
    }
    remaining -= p;
  }
  return std::round(value);
}

void validate_weights(const std::vector<double>& weights, const char* what) {
  if (weights.empty()) {
    throw ValidationError(std::string(what) + " has no components");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) {
      throw ValidationError(std::string(what) + " has negative weight " + fmt_double(w));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError(std::string(what) + " weights sum to " + fmt_double(sum) + ", not 1");
  }
}

}  // namespace

void JointDistribution::validate() const {
  if (num_outcomes < 1 || num_trials < 1) {
    throw ValidationError("joint distribution needs at least one trial and one outcome");
  }
  const std::size_t size =
      checked_power(num_outcomes, num_trials, kMaxTableEntries, "joint table");
  if (table.size() != size) {
    throw ValidationError("joint table has " + std::to_string(table.size()) +
                          " entries, expected " + std::to_string(size));
  }
  double sum = 0.0;
  for (double v : table) {
    if (v < 0.0) {
      throw ValidationError("joint table entry " + fmt_double(v) + " is negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("joint table sums to " + fmt_double(sum) + ", not 1");
  }
}

std::size_t JointDistribution::index_of(const std::vector<std::size_t>& tuple) const {
  if (tuple.size() != num_trials) {
    throw DimensionError("tuple length " + std::to_string(tuple.size()) + " does not match " +
                         std::to_string(num_trials) + " trials");
  }
  std::size_t index = 0;
  for (std::size_t x : tuple) {
    if (x >= num_outcomes) {
      throw DimensionError("tuple entry " + std::to_string(x) + " exceeds outcome range");
    }
    index = index * num_outcomes + x;
  }
  return index;
}

std::vector<std::size_t> JointDistribution::tuple_of(std::size_t index) const {
  std::vector<std::size_t> tuple(num_trials);
  for (std::size_t t = num_trials; t-- > 0;) {
    tuple[t] = index % num_outcomes;
    index /= num_outcomes;
  }
  return tuple;
}

double JointDistribution::at(const std::vector<std::size_t>& tuple) const {
  return table[index_of(tuple)];
}

void SimplexMixture::validate() const {
  validate_weights(weights, "simplex mixture");
  if (points.size() != weights.size()) {
    throw ValidationError("simplex mixture needs one point per weight");
  }
  const std::size_t k = points.front().size();
  for (const auto& point : points) {
    if (point.size() != k || k == 0) {
      throw ValidationError("simplex mixture points must share a nonzero outcome count");
    }
    double sum = 0.0;
    for (double v : point) {
      if (v < 0.0) {
        throw ValidationError("simplex point entry " + fmt_double(v) + " is negative");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ValidationError("simplex point sums to " + fmt_double(sum) + ", not 1");
    }
  }
}

void StateMixture::validate() const {
  validate_weights(weights, "state mixture");
  if (states.size() != weights.size()) {
    throw ValidationError("state mixture needs one state per weight");
  }
  for (const DensityOperator& rho : states) {
    if (rho.dim() != states.front().dim()) {
      throw DimensionError("state mixture components have mixed dimensions");
    }
  }
}

void OperatorMixture::validate() const {
  validate_weights(weights, "operator mixture");
  if (operators.size() != weights.size()) {
    throw ValidationError("operator mixture needs one operator per weight");
  }
  for (const ComplexMatrix& op : operators) {
    if (op.dim() != operators.front().dim()) {
      throw DimensionError("operator mixture components have mixed dimensions");
    }
    if (op.hermiticity_defect() > 1e-9) {
      throw ValidationError("operator mixture component is not Hermitian");
    }
    if (std::abs(op.trace() - cxd{1.0, 0.0}) > 1e-9) {
      throw ValidationError("operator mixture component trace is not 1");
    }
  }
}

SymmetryVerdict is_symmetric_distribution(const JointDistribution& p) {
  p.validate();
  SymmetryVerdict verdict;
  if (p.num_trials < 2) return verdict;
  for (std::size_t index = 0; index < p.table.size(); ++index) {
    const std::vector<std::size_t> tuple = p.tuple_of(index);
    for (std::size_t t = 0; t + 1 < p.num_trials; ++t) {
      if (tuple[t] == tuple[t + 1]) continue;
      std::vector<std::size_t> swapped = tuple;
      std::swap(swapped[t], swapped[t + 1]);
      if (std::abs(p.table[index] - p.at(swapped)) > 1e-12) {
        verdict.symmetric = false;
        verdict.swap_pos = t;
        verdict.tuple = tuple;
        return verdict;
      }
    }
  }
  return verdict;
}

ExtendibilityResult is_extendible_distribution(const JointDistribution& p, std::size_t extra) {
  if (extra < 1) {
    throw ValidationError("extendibility needs at least one extra trial");
  }
  const SymmetryVerdict symmetry = is_symmetric_distribution(p);
  if (!symmetry.symmetric) {
    throw ValidationError("extendibility is defined for symmetric distributions only");
  }
  const std::size_t k = p.num_outcomes;
  const std::size_t big_n = p.num_trials + extra;
  checked_power(k, big_n, kMaxTableEntries, "extension table");

  // One variable per count class of the extended table; one constraint per
  // count class of the input. Marginalizing the last `extra` trials of a
  // symmetric table with per-tuple values t_c gives, for an input tuple
  // with counts o: sum over added-count vectors e of (#arrangements of e)
  // times t_{o+e}.
  const std::vector<std::vector<std::size_t>> input_classes = count_vectors(k, p.num_trials);
  const std::vector<std::vector<std::size_t>> extended_classes = count_vectors(k, big_n);

  std::vector<std::vector<double>> a(input_classes.size(),
                                     std::vector<double>(extended_classes.size(), 0.0));
  std::vector<double> b(input_classes.size(), 0.0);
  for (std::size_t row = 0; row < input_classes.size(); ++row) {
    const std::vector<std::size_t>& o = input_classes[row];
    b[row] = p.at(canonical_tuple(o));
    for (std::size_t col = 0; col < extended_classes.size(); ++col) {
      const std::vector<std::size_t>& c = extended_classes[col];
      bool dominates = true;
      std::vector<std::size_t> e(k);
      for (std::size_t j = 0; j < k; ++j) {
        if (c[j] < o[j]) {
          dominates = false;
          break;
        }
        e[j] = c[j] - o[j];
      }
      if (dominates) {
        a[row][col] = multinomial(extra, e);
      }
    }
  }

  const LpFeasibility lp = solve_equality_feasibility(a, b, 1e-9);
  ExtendibilityResult result;
  result.feasible = lp.feasible;
  if (lp.feasible) {
    JointDistribution ext;
    ext.num_trials = big_n;
    ext.num_outcomes = k;
    ext.table.assign(checked_power(k, big_n, kMaxTableEntries, "extension table"), 0.0);
    for (std::size_t index = 0; index < ext.table.size(); ++index) {
      const std::vector<std::size_t> counts = counts_of_tuple(ext.tuple_of(index), k);
      const auto it =
          std::lower_bound(extended_classes.begin(), extended_classes.end(), counts);
      ext.table[index] =
          lp.solution[static_cast<std::size_t>(it - extended_classes.begin())];
    }
    // Repair rounding drift so the table passes its own invariants.
    double sum = 0.0;
    for (double v : ext.table) sum += v;
    if (sum > 0.0) {
      for (double& v : ext.table) v /= sum;
    }
    ext.validate();
    result.extension = std::move(ext);
  } else {
    result.certificate = lp.certificate;
  }
  return result;
}

JointDistribution classical_definetti_mix(const SimplexMixture& mix, std::size_t n) {
  mix.validate();
  if (n < 1) {
    throw ValidationError("mixture table needs at least one trial");
  }
  const std::size_t k = mix.points.front().size();
  JointDistribution p;
  p.num_trials = n;
  p.num_outcomes = k;
  p.table.assign(checked_power(k, n, kMaxTableEntries, "joint table"), 0.0);
  for (std::size_t index = 0; index < p.table.size(); ++index) {
    const std::vector<std::size_t> tuple = p.tuple_of(index);
    double value = 0.0;
    for (std::size_t i = 0; i < mix.weights.size(); ++i) {
      double product = mix.weights[i];
      for (std::size_t x : tuple) product *= mix.points[i][x];
      value += product;
    }
    p.table[index] = value;
  }
  p.validate();
  return p;
}

SymmetryVerdict quantum_symmetric_check(const DensityOperator& rho, const SystemShape& shape) {
  shape.require_matches(rho.matrix());
  if (!shape.uniform_dims()) {
    throw DimensionError("symmetry check needs uniform local dimensions");
  }
  SymmetryVerdict verdict;
  const std::size_t n = shape.num_systems();
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const PermutationSpec swap = PermutationSpec::transposition(n, t, t + 1);
    const ComplexMatrix permuted = permute_systems(rho.matrix(), shape, swap);
    if (max_abs_diff(permuted, rho.matrix()) > 1e-10) {
      verdict.symmetric = false;
      verdict.swap_pos = t;
      return verdict;
    }
  }
  return verdict;
}

bool quantum_extendibility_probe(const DensityOperator& rho, const SystemShape& shape,
                                 const DensityOperator& candidate) {
  shape.require_matches(rho.matrix());
  if (!shape.uniform_dims()) {
    throw DimensionError("extendibility probe needs uniform local dimensions");
  }
  const std::size_t d = shape.local_dims.front();
  const std::size_t n = shape.num_systems();
  const SystemShape extended = SystemShape::uniform(n + 1, d);
  extended.require_matches(candidate.matrix());
  if (!quantum_symmetric_check(candidate, extended).symmetric) {
    return false;
  }
  std::vector<std::size_t> keep(n);
  for (std::size_t t = 0; t < n; ++t) keep[t] = t;
  const ComplexMatrix marginal = partial_trace(candidate.matrix(), extended, keep);
  return max_abs_diff(marginal, rho.matrix()) <= 1e-10;
}

DensityOperator exchangeable_state_from_mixture(const StateMixture& mix, std::size_t n) {
  mix.validate();
  if (n < 1) {
    throw ValidationError("exchangeable state needs at least one system");
  }
  const std::size_t d = mix.states.front().dim();
  const std::size_t total = checked_power(d, n, kMaxCompositeDim, "composite dimension");
  ComplexMatrix sum(total);
  for (std::size_t i = 0; i < mix.weights.size(); ++i) {
    ComplexMatrix power = mix.states[i].matrix();
    for (std::size_t t = 1; t < n; ++t) power = kron(power, mix.states[i].matrix());
    power *= cxd{mix.weights[i], 0.0};
    sum += power;
  }
  return DensityOperator(sum);
}

NegativityWitness negativity_witness(const ReconstructedOperator& a) {
  const EigResult eig = herm_eig(a.matrix);
  const double min_eig = eig.values.back();
  if (min_eig >= -1e-8) {
    throw NoWitnessError("operator has no negative eigenvalue beyond tolerance (min " +
                         fmt_double(min_eig) + ")");
  }
  NegativityWitness witness;
  witness.lambda = -min_eig;
  ComplexMatrix projector = ComplexMatrix::identity(a.matrix.dim());
  projector -= outer(eig.vector(eig.values.size() - 1));
  witness.projector = std::move(projector);

  const double overlap = trace_of_product(a.matrix, witness.projector).real();
  if (std::abs(overlap - (1.0 + witness.lambda)) > 1e-9) {
    throw ValidationError("witness overlap " + fmt_double(overlap) +
                          " deviates from 1 + lambda");
  }
  return witness;
}

double witness_growth(const OperatorMixture& mix, const ComplexMatrix& projector,
                      std::size_t n) {
  mix.validate();
  if (n % 2 != 0) {
    throw ValidationError("witness growth is defined for even powers only");
  }
  require_same_dim(mix.operators.front(), projector, "witness growth");
  double total = 0.0;
  for (std::size_t i = 0; i < mix.weights.size(); ++i) {
    const double overlap = trace_of_product(mix.operators[i], projector).real();
    total += mix.weights[i] * std::pow(overlap, static_cast<double>(n));
  }
  return total;
}

nlohmann::json joint_to_json(const JointDistribution& p) {
  p.validate();
  return nlohmann::json{
      {"num_trials", p.num_trials}, {"num_outcomes", p.num_outcomes}, {"table", p.table}};
}

JointDistribution joint_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num_trials") || !j.contains("num_outcomes") ||
      !j.contains("table")) {
    throw ValidationError(
        "joint distribution JSON needs 'num_trials', 'num_outcomes', and 'table'");
  }
  JointDistribution p;
  if (!j["num_trials"].is_number_unsigned() || !j["num_outcomes"].is_number_unsigned()) {
    throw ValidationError("joint distribution JSON trial/outcome counts must be integers");
  }
  p.num_trials = j["num_trials"].get<std::size_t>();
  p.num_outcomes = j["num_outcomes"].get<std::size_t>();
  if (!j["table"].is_array()) {
    throw ValidationError("joint distribution JSON 'table' must be an array");
  }
  for (const auto& v : j["table"]) {
    if (!v.is_number()) {
      throw ValidationError("joint distribution JSON table entry is not a number");
    }
    p.table.push_back(v.get<double>());
  }
  p.validate();
  return p;
}

nlohmann::json witness_report_to_json(
    const NegativityWitness& witness,
    const std::vector<std::pair<std::size_t, double>>& growth) {
  nlohmann::json growth_json = nlohmann::json::array();
  for (const auto& [n, value] : growth) {
    growth_json.push_back(nlohmann::json::array({n, value}));
  }
  return nlohmann::json{{"lambda", witness.lambda},
                        {"projector", matrix_to_json(witness.projector)},
                        {"growth", std::move(growth_json)}};
}

}  // namespace qbayes
