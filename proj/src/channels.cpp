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

#include "qbayes/channels.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "qbayes/eig.hpp"
#include "qbayes/errors.hpp"
#include "qbayes/json_io.hpp"
#include "qbayes/povm.hpp"

namespace qbayes {

namespace {

constexpr double kTpTol = 1e-9;

ComplexMatrix kraus_gram(const KrausChannel& ch) {
  ComplexMatrix g(ch.dim);
  for (const ComplexMatrix& a : ch.kraus_ops) g += a.adjoint() * a;
  return g;
}

void require_kraus_shape(const KrausChannel& ch) {
  if (ch.dim == 0) throw DimensionError("channel dimension must be positive");
  if (ch.kraus_ops.empty()) throw ValidationError("channel needs at least one Kraus operator");
  for (const ComplexMatrix& a : ch.kraus_ops) {
    if (a.dim() != ch.dim) {
      throw DimensionError("Kraus operator dimension does not match the channel");
    }
  }
}

// D^{2n}, or throws once past the superoperator size cap.
std::size_t superop_dim(std::size_t d, std::size_t n) {
  std::size_t total = 1;
  for (std::size_t t = 0; t < 2 * n; ++t) {
    total *= d;
    if (total > kMaxSuperopDim) {
      throw ResourceLimitError("superoperator would exceed dimension " +
                               std::to_string(kMaxSuperopDim));
    }
  }
  return total;
}

ComplexMatrix single_superop(const KrausChannel& ch) {
  ComplexMatrix s(ch.dim * ch.dim);
  for (const ComplexMatrix& a : ch.kraus_ops) s += kron(a.conjugate(), a);
  return s;
}

void check_simplex_weights(const std::vector<double>& weights, std::size_t expected) {
  if (weights.size() != expected) throw ValidationError("one weight per channel required");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("mixture weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw ValidationError("mixture weights must sum to 1");
}

std::vector<std::size_t> checkpoint_schedule(std::size_t shots) {
  std::vector<std::size_t> checkpoints{0};
  for (std::size_t c = 1; c < shots; c *= 2) checkpoints.push_back(c);
  if (shots > 0) checkpoints.push_back(shots);
  return checkpoints;
}

}  // namespace

void KrausChannel::validate() const {
  require_kraus_shape(*this);
  if (!is_trace_preserving(*this, kTpTol)) {
    throw ValidationError("channel is not trace preserving: Kraus gram deviates from identity");
  }
}

KrausChannel KrausChannel::checked(std::size_t dim, std::vector<ComplexMatrix> ops) {
  KrausChannel ch{dim, std::move(ops)};
  ch.validate();
  return ch;
}

void ChoiMatrix::validate() const {
  if (dim == 0) throw DimensionError("Choi dimension must be positive");
  if (matrix.dim() != dim * dim) {
    throw DimensionError("Choi matrix must act on the squared dimension");
  }
  if (!matrix.is_hermitian(1e-9 * static_cast<double>(matrix.dim()))) {
    throw ValidationError("Choi matrix is not Hermitian");
  }
  if (min_eigenvalue(matrix) < -1e-9) {
    throw ValidationError("Choi matrix is not positive semidefinite");
  }
  if (std::abs(matrix.trace() - cxd(1.0)) > 1e-9) {
    throw ValidationError("Choi matrix must have unit trace");
  }
}

std::vector<cxd> vec(const ComplexMatrix& m) {
  const std::size_t d = m.dim();
  std::vector<cxd> v(d * d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) v[c * d + r] = m.at(r, c);
  return v;
}

ComplexMatrix unvec(std::size_t dim, const std::vector<cxd>& v) {
  if (v.size() != dim * dim) throw DimensionError("vectorized operator has the wrong length");
  ComplexMatrix m(dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) m.at(r, c) = v[c * dim + r];
  return m;
}

ComplexMatrix apply_map(const KrausChannel& ch, const ComplexMatrix& m) {
  require_kraus_shape(ch);
  if (m.dim() != ch.dim) throw DimensionError("operator dimension does not match the channel");
  ComplexMatrix out(ch.dim);
  for (const ComplexMatrix& a : ch.kraus_ops) out += a * m * a.adjoint();
  return out;
}

DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho) {
  return DensityOperator(apply_map(ch, rho.matrix()));
}

bool is_trace_preserving(const KrausChannel& ch, double tol) {
  require_kraus_shape(ch);
  return max_abs_diff(kraus_gram(ch), ComplexMatrix::identity(ch.dim)) <= tol;
}

bool is_trace_preserving(const ChoiMatrix& j, double tol) {
  if (j.matrix.dim() != j.dim * j.dim) {
    throw DimensionError("Choi matrix must act on the squared dimension");
  }
  const ComplexMatrix marginal =
      partial_trace(j.matrix, SystemShape{{j.dim, j.dim}}, {0});
  ComplexMatrix target = ComplexMatrix::identity(j.dim);
  target *= cxd(1.0 / static_cast<double>(j.dim));
  return frobenius_diff(marginal, target) <= tol;
}

bool is_trace_preserving(const Superoperator& s, double tol) {
  const std::size_t side = s.matrix.dim();
  std::size_t d = 1;
  for (std::size_t t = 0; t < s.num_copies; ++t) d *= s.dim;
  if (side != d * d) throw DimensionError("superoperator matrix has inconsistent shape");
  // vec(I)^T S row by row: the trace of the image of every basis operator
  // must equal the trace of the basis operator itself.
  double defect_sq = 0.0;
  for (std::size_t col = 0; col < side; ++col) {
    cxd sum = 0.0;
    for (std::size_t k = 0; k < d; ++k) sum += s.matrix.at(k * d + k, col);
    const cxd expected = (col / d == col % d) ? cxd(1.0) : cxd(0.0);
    defect_sq += std::norm(sum - expected);
  }
  return std::sqrt(defect_sq) <= tol;
}

ChoiMatrix choi_from_channel(const KrausChannel& ch) {
  require_kraus_shape(ch);
  const std::size_t d = ch.dim;
  ComplexMatrix j(d * d);
  for (const ComplexMatrix& a : ch.kraus_ops) {
    std::vector<cxd> w(d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t q = 0; q < d; ++q) w[r * d + q] = a.at(q, r);
    j += outer(w);
  }
  j *= cxd(1.0 / static_cast<double>(d));
  return ChoiMatrix{d, std::move(j)};
}

KrausChannel channel_from_choi(const ChoiMatrix& j) {
  if (j.dim == 0 || j.matrix.dim() != j.dim * j.dim) {
    throw DimensionError("Choi matrix must act on the squared dimension");
  }
  const std::size_t d = j.dim;
  const EigResult eig = herm_eig(j.matrix);
  KrausChannel ch;
  ch.dim = d;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values[k];
    if (lambda < -1e-8) {
      throw CompletePositivityError("Choi matrix has negative eigenvalue " +
                                    std::to_string(lambda));
    }
    if (lambda <= 1e-10) continue;
    const std::vector<cxd> v = eig.vector(k);
    const double scale = std::sqrt(static_cast<double>(d) * lambda);
    ComplexMatrix a(d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t q = 0; q < d; ++q) a.at(q, r) = scale * v[r * d + q];
    ch.kraus_ops.push_back(std::move(a));
  }
  if (ch.kraus_ops.empty()) {
    throw CompletePositivityError("Choi matrix has no positive spectral weight");
  }
  return ch;
}

DensityOperator choi_state(const KrausChannel& ch) {
  return DensityOperator(choi_from_channel(ch).matrix);
}

StinespringDilation stinespring_dilate(const KrausChannel& ch) {
  require_kraus_shape(ch);
  if (!is_trace_preserving(ch, kTpTol)) {
    throw IsometryError("only trace-preserving channels extend to an isometry");
  }
  const std::size_t d = ch.dim;
  const std::size_t m = ch.kraus_ops.size();
  const std::size_t anc = std::max<std::size_t>(m, 2);
  const std::size_t n = d * anc;

  // Isometry columns: input |s> tensor |0> maps to sum_i (A_i|s>) tensor |i>.
  std::vector<std::vector<cxd>> columns(n);
  std::vector<bool> filled(n, false);
  for (std::size_t s = 0; s < d; ++s) {
    std::vector<cxd> col(n, cxd(0.0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t q = 0; q < d; ++q) col[q * anc + i] = ch.kraus_ops[i].at(q, s);
    columns[s * anc] = std::move(col);
    filled[s * anc] = true;
  }

  // Complete to a unitary: orthonormalize standard basis vectors against the
  // accepted columns, taking each survivor in order.
  std::vector<const std::vector<cxd>*> accepted;
  for (std::size_t s = 0; s < d; ++s) accepted.push_back(&columns[s * anc]);
  std::size_t candidate = 0;
  for (std::size_t slot = 0; slot < n; ++slot) {
    if (filled[slot]) continue;
    for (; candidate < n; ++candidate) {
      std::vector<cxd> v(n, cxd(0.0));
      v[candidate] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto* u : accepted) {
          const cxd overlap = inner(*u, v);
          for (std::size_t t = 0; t < n; ++t) v[t] -= overlap * (*u)[t];
        }
      }
      double norm_sq = 0.0;
      for (const cxd& x : v) norm_sq += std::norm(x);
      if (norm_sq > 1e-12) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (cxd& x : v) x *= inv;
        columns[slot] = std::move(v);
        filled[slot] = true;
        accepted.push_back(&columns[slot]);
        ++candidate;
        break;
      }
    }
    if (!filled[slot]) throw IsometryError("failed to complete the isometry to a unitary");
  }

  ComplexMatrix u(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) u.at(r, c) = columns[c][r];

  ComplexMatrix sigma_m(anc);
  sigma_m.at(0, 0) = 1.0;
  StinespringDilation out{DensityOperator(sigma_m), std::move(u)};

  // Self-check: tracing out the ancilla must reproduce the channel.
  const SystemShape shape{{d, anc}};
  for (const ComplexMatrix& b : hermitian_basis(d)) {
    const ComplexMatrix embedded = kron(b, out.ancilla_state.matrix());
    const ComplexMatrix evolved = out.unitary * embedded * out.unitary.adjoint();
    const ComplexMatrix reduced = partial_trace(evolved, shape, {0});
    if (frobenius_diff(reduced, apply_map(ch, b)) > 1e-9) {
      throw IsometryError("dilation self-check failed to reproduce the channel");
    }
  }
  return out;
}

Superoperator superop_from_channels(const std::vector<KrausChannel>& chs) {
  if (chs.empty()) throw ValidationError("superoperator needs at least one channel");
  const std::size_t d = chs.front().dim;
  for (const KrausChannel& ch : chs) {
    require_kraus_shape(ch);
    if (ch.dim != d) throw DimensionError("all factors must share one local dimension");
  }
  const std::size_t n = chs.size();
  superop_dim(d, n);

  std::vector<ComplexMatrix> factors;
  factors.reserve(n);
  for (const KrausChannel& ch : chs) factors.push_back(single_superop(ch));
  ComplexMatrix interleaved = kron_all(factors);
  // The Kronecker product orders digits (col_1, row_1, col_2, row_2, ...);
  // the fixed convention groups all columns before all rows.
  ComplexMatrix grouped =
      n == 1 ? std::move(interleaved)
             : permute_systems(interleaved, SystemShape::uniform(2 * n, d),
                               interleaved_to_grouped(n));
  return Superoperator{n, d, std::move(grouped)};
}

Superoperator mixture_superop(const std::vector<double>& weights,
                              const std::vector<KrausChannel>& chs, std::size_t n) {
  if (chs.empty()) throw ValidationError("mixture needs at least one channel");
  if (n == 0) throw ValidationError("mixture needs at least one copy");
  check_simplex_weights(weights, chs.size());
  const std::size_t d = chs.front().dim;
  Superoperator total;
  for (std::size_t i = 0; i < chs.size(); ++i) {
    Superoperator term =
        superop_from_channels(std::vector<KrausChannel>(n, chs[i]));
    term.matrix *= cxd(weights[i]);
    if (i == 0) {
      total = std::move(term);
    } else {
      if (chs[i].dim != d) throw DimensionError("mixture channels must share one dimension");
      total.matrix += term.matrix;
    }
  }
  return total;
}

ComplexMatrix apply_superop(const Superoperator& s, const ComplexMatrix& m) {
  const std::size_t side = s.matrix.dim();
  if (m.dim() * m.dim() != side) {
    throw DimensionError("operator does not match the superoperator's space");
  }
  const std::vector<cxd> in = vec(m);
  std::vector<cxd> out = apply(s.matrix, in);
  return unvec(m.dim(), out);
}

OpSymmetryVerdict op_symmetry_check(const Superoperator& phi) {
  if (phi.num_copies < 2) {
    throw ValidationError("symmetry is only defined for at least two copies");
  }
  const std::size_t n = phi.num_copies;
  const SystemShape shape = SystemShape::uniform(2 * n, phi.dim);
  shape.require_matches(phi.matrix);
  for (std::size_t s = 0; s + 1 < n; ++s) {
    const PermutationSpec pi = PermutationSpec::transposition(n, s, s + 1);
    PermutationSpec tau;
    tau.map.resize(2 * n);
    for (std::size_t t = 0; t < n; ++t) {
      tau.map[t] = pi.map[t];
      tau.map[n + t] = n + pi.map[t];
    }
    const ComplexMatrix relabeled = permute_systems(phi.matrix, shape, tau);
    if (frobenius_diff(relabeled, phi.matrix) > 1e-9) return {false, s};
  }
  return {true, 0};
}

bool op_extendibility_check(const Superoperator& phi_n, const Superoperator& phi_n1) {
  if (phi_n.dim != phi_n1.dim) throw DimensionError("copy dimensions differ");
  if (phi_n.num_copies + 1 != phi_n1.num_copies) {
    throw DimensionError("second map must act on exactly one more copy");
  }
  if (phi_n.num_copies == 0) throw DimensionError("need at least one retained copy");
  const std::size_t d = phi_n.dim;
  std::size_t small = 1;
  for (std::size_t t = 0; t < phi_n.num_copies; ++t) small *= d;
  const std::size_t big = small * d;
  const SystemShape big_shape{{small, d}};
  std::vector<std::size_t> keep{0};

  // Spanning check on matrix units of the larger space: discarding the last
  // copy before or after applying the maps must agree.
  for (std::size_t i = 0; i < big; ++i) {
    for (std::size_t j = 0; j < big; ++j) {
      ComplexMatrix unit(big);
      unit.at(i, j) = 1.0;
      const ComplexMatrix lhs =
          apply_superop(phi_n, partial_trace(unit, big_shape, keep));
      const ComplexMatrix rhs =
          partial_trace(apply_superop(phi_n1, unit), big_shape, keep);
      if (frobenius_diff(lhs, rhs) > 1e-9) return false;
    }
  }
  return true;
}

TpFilterReport tp_filter_demo(const std::vector<double>& weights,
                              const std::vector<KrausChannel>& maps, const DensityOperator& rho,
                              std::size_t n_max) {
  if (maps.empty()) throw ValidationError("trace filter needs at least one map");
  if (n_max == 0) throw ValidationError("trace filter needs at least one copy count");
  check_simplex_weights(weights, maps.size());

  TpFilterReport report;
  report.all_trace_preserving = true;
  std::vector<double> traces;
  traces.reserve(maps.size());
  for (const KrausChannel& map : maps) {
    traces.push_back(apply_map(map, rho.matrix()).trace().real());
    if (!is_trace_preserving(map, kTpTol)) report.all_trace_preserving = false;
  }

  for (std::size_t n = 1; n <= n_max; ++n) {
    double value = 0.0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      value += weights[i] * std::pow(traces[i], static_cast<double>(n));
    }
    report.rows.push_back({n, value});
    if (report.first_violation == 0 && std::abs(value - 1.0) > 0.01) {
      report.first_violation = n;
    }
  }
  return report;
}

KrausChannel depolarizing_channel(double p) {
  if (!(p >= 0.0) || p > 4.0 / 3.0) {
    throw ValidationError("depolarizing strength must lie in [0, 4/3]");
  }
  KrausChannel ch;
  ch.dim = 2;
  ComplexMatrix keep = ComplexMatrix::identity(2);
  keep *= cxd(std::sqrt(1.0 - 0.75 * p));
  ch.kraus_ops.push_back(std::move(keep));
  for (int k = 1; k <= 3; ++k) {
    ComplexMatrix flip = pauli(k);
    flip *= cxd(std::sqrt(0.25 * p));
    ch.kraus_ops.push_back(std::move(flip));
  }
  return ch;
}

KrausChannel identity_channel(std::size_t dim) {
  if (dim == 0) throw DimensionError("channel dimension must be positive");
  return KrausChannel{dim, {ComplexMatrix::identity(dim)}};
}

KrausChannel sample_channel(std::size_t dim, std::size_t kraus_rank, Rng& rng) {
  if (dim == 0) throw DimensionError("channel dimension must be positive");
  if (kraus_rank == 0) throw ValidationError("Kraus rank must be positive");
  const std::size_t n = dim * kraus_rank;

  // Orthonormalize Gaussian columns into an isometry; resampling on a
  // degenerate draw keeps the construction total.
  std::vector<std::vector<cxd>> cols;
  while (cols.size() < dim) {
    std::vector<cxd> v(n);
    for (cxd& x : v) x = rng.gauss_complex();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : cols) {
        const cxd overlap = inner(u, v);
        for (std::size_t t = 0; t < n; ++t) v[t] -= overlap * u[t];
      }
    }
    double norm_sq = 0.0;
    for (const cxd& x : v) norm_sq += std::norm(x);
    if (norm_sq < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (cxd& x : v) x *= inv;
    cols.push_back(std::move(v));
  }

  KrausChannel ch;
  ch.dim = dim;
  for (std::size_t i = 0; i < kraus_rank; ++i) {
    ComplexMatrix a(dim);
    for (std::size_t q = 0; q < dim; ++q)
      for (std::size_t s = 0; s < dim; ++s) a.at(q, s) = cols[s][i * dim + q];
    ch.kraus_ops.push_back(std::move(a));
  }
  return ch;
}

KrausChannel sample_pauli_channel(Rng& rng) {
  double w[4];
  double sum = 0.0;
  for (double& x : w) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    x = -std::log(u);
    sum += x;
  }
  KrausChannel ch;
  ch.dim = 2;
  for (int k = 0; k < 4; ++k) {
    ComplexMatrix a = k == 0 ? ComplexMatrix::identity(2) : pauli(k);
    a *= cxd(std::sqrt(w[k] / sum));
    ch.kraus_ops.push_back(std::move(a));
  }
  return ch;
}

ChannelMeasure parse_channel_measure(const std::string& name) {
  if (name == "isometry") return ChannelMeasure::kIsometry;
  if (name == "pauli") return ChannelMeasure::kPauli;
  if (name == "mixed") return ChannelMeasure::kMixed;
  throw ValidationError("unknown channel measure '" + name +
                        "' (expected isometry, pauli, or mixed)");
}

std::string channel_measure_name(ChannelMeasure measure) {
  switch (measure) {
    case ChannelMeasure::kIsometry: return "isometry";
    case ChannelMeasure::kPauli: return "pauli";
    case ChannelMeasure::kMixed: return "mixed";
  }
  throw ValidationError("unknown channel measure");
}

ParticleEnsemble sample_channel_ensemble(std::size_t dim, std::size_t count, Rng& rng,
                                         ChannelMeasure measure, std::size_t kraus_rank) {
  if (count == 0) throw ValidationError("ensemble needs at least one particle");
  if (measure != ChannelMeasure::kIsometry && dim != 2) {
    throw DimensionError("Pauli-based channel measures are qubit only");
  }
  ParticleEnsemble ensemble;
  for (std::size_t i = 0; i < count; ++i) {
    const bool pauli_draw =
        measure == ChannelMeasure::kPauli ||
        (measure == ChannelMeasure::kMixed && i % 2 == 1);
    const KrausChannel ch =
        pauli_draw ? sample_pauli_channel(rng) : sample_channel(dim, kraus_rank, rng);
    ensemble.particles.push_back(choi_state(ch));
    ensemble.weights.push_back(1.0 / static_cast<double>(count));
  }
  return ensemble;
}

ProcessRunReport process_tomography_run(const KrausChannel& truth, std::size_t shots,
                                        const ParticleEnsemble& particles, Rng& rng,
                                        double threshold) {
  if (truth.dim != 2) throw ValidationError("process runs are qubit scale");
  particles.validate();
  const DensityOperator target = choi_state(truth);
  for (const DensityOperator& p : particles.particles) {
    if (p.dim() != target.dim()) {
      throw DimensionError("particles must be Choi states of the doubled space");
    }
  }
  double best = 2.0;
  for (std::size_t i = 0; i < particles.particles.size(); ++i) {
    if (particles.weights[i] > 0.0) {
      best = std::min(best, trace_distance(particles.particles[i], target));
    }
  }
  if (best > 0.2) {
    throw PriorSupportError("prior has no weight near the truth Choi state");
  }

  auto povm = std::make_shared<const Povm>(build_min_ic_povm(target.dim()));
  const OutcomeRecord full = simulate_measurements(target, povm, shots, rng);

  ProcessRunReport report;
  report.threshold = threshold;
  ParticleEnsemble posterior = particles;
  std::size_t consumed = 0;
  for (std::size_t checkpoint : checkpoint_schedule(shots)) {
    if (checkpoint > consumed) {
      OutcomeRecord segment;
      segment.povm = full.povm;
      segment.outcomes.assign(full.outcomes.begin() + static_cast<std::ptrdiff_t>(consumed),
                              full.outcomes.begin() + static_cast<std::ptrdiff_t>(checkpoint));
      posterior = bayes_update(posterior, segment);
      consumed = checkpoint;
    }
    report.rows.push_back(
        {checkpoint, trace_distance(predictive_state(posterior), target)});
  }
  report.converged = !report.rows.empty() && report.rows.back().choi_distance < threshold;
  return report;
}

ProcessReport run_process_experiment(const ProcessExperimentConfig& config,
                                     const KrausChannel& truth) {
  if (truth.dim != 2) throw ValidationError("process runs are qubit scale");
  const Rng root(config.seed);
  Rng prior1_rng = root.split(1);
  Rng prior2_rng = root.split(2);
  Rng data_rng = root.split(3);

  const ParticleEnsemble prior1 = sample_channel_ensemble(
      truth.dim, config.particles, prior1_rng, config.prior1, config.kraus_rank);
  const ParticleEnsemble prior2 = sample_channel_ensemble(
      truth.dim, config.particles, prior2_rng, config.prior2, config.kraus_rank);
  const DensityOperator target = choi_state(truth);
  auto povm = std::make_shared<const Povm>(build_min_ic_povm(target.dim()));

  const ConvergenceReport conv = convergence_experiment(
      target, prior1, prior2, povm, config.shots, data_rng, config.threshold);

  ProcessReport report;
  report.threshold = conv.threshold;
  report.converged = conv.converged;
  for (const ConvergenceRow& row : conv.rows) {
    report.rows.push_back({row.shots, row.cross_prior_distance, row.prior1_truth,
                           row.prior2_truth, row.prior1_truth});
  }
  return report;
}

ComplexMatrix multi_choi(const std::vector<KrausChannel>& chs) {
  if (chs.empty()) throw ValidationError("need at least one channel");
  std::vector<ComplexMatrix> factors;
  factors.reserve(chs.size());
  for (const KrausChannel& ch : chs) factors.push_back(choi_from_channel(ch).matrix);
  return kron_all(factors);
}

PermutationSpec interleaved_to_grouped(std::size_t n) {
  PermutationSpec pi;
  pi.map.resize(2 * n);
  for (std::size_t s = 0; s < n; ++s) {
    pi.map[2 * s] = s;
    pi.map[2 * s + 1] = n + s;
  }
  return pi;
}

nlohmann::json channel_to_json(const KrausChannel& ch) {
  require_kraus_shape(ch);
  nlohmann::json ops = nlohmann::json::array();
  for (const ComplexMatrix& a : ch.kraus_ops) ops.push_back(matrix_to_json(a));
  return nlohmann::json{{"dim", ch.dim}, {"kraus", std::move(ops)}};
}

nlohmann::json choi_to_json(const ChoiMatrix& j) {
  j.validate();
  return nlohmann::json{{"dim", j.dim}, {"choi", matrix_to_json(j.matrix)}};
}

KrausChannel channel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim")) {
    throw ValidationError("channel JSON must be an object with 'dim'");
  }
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    throw ValidationError("channel JSON 'dim' must be a positive integer");
  }
  const std::size_t dim = j["dim"].get<std::size_t>();
  if (j.contains("kraus")) {
    if (!j["kraus"].is_array() || j["kraus"].empty()) {
      throw ValidationError("channel JSON 'kraus' must be a nonempty array");
    }
    KrausChannel ch;
    ch.dim = dim;
    for (const auto& entry : j["kraus"]) ch.kraus_ops.push_back(matrix_from_json(entry));
    ch.validate();
    return ch;
  }
  if (j.contains("choi")) {
    ChoiMatrix choi{dim, matrix_from_json(j["choi"])};
    choi.validate();
    return channel_from_choi(choi);
  }
  throw ValidationError("channel JSON must contain 'kraus' or 'choi'");
}

}  // namespace qbayes
