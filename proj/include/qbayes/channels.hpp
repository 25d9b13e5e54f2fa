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
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbayes/bayes.hpp"
#include "qbayes/matrix.hpp"
#include "qbayes/rng.hpp"
#include "qbayes/states.hpp"
#include "qbayes/tensor.hpp"

namespace qbayes {

// Largest matrix dimension a Superoperator may reach (D^{2N}); beyond this
// the D^{4N}-entry matrices stop being desk-scale.
inline constexpr std::size_t kMaxSuperopDim = 1024;

// A completely positive map in operator-sum form. validate() additionally
// demands trace preservation; maps that deliberately break it (used by the
// trace filter demo) are built as bare structs and never validated.
struct KrausChannel {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> kraus_ops;

  // Throws ValidationError unless every operator is dim x dim, the list is
  // nonempty, and sum A_i^dagger A_i = I within 1e-9.
  void validate() const;

  static KrausChannel checked(std::size_t dim, std::vector<ComplexMatrix> ops);
};

// The channel's image of the maximally entangled state, normalized to unit
// trace. The matrix lives on reference (R) tensor output (Q) with R as the
// most significant factor; entry ((r,q),(r',q')) holds the ((q,q')) entry of
// the channel applied to |r><r'| divided by dim.
struct ChoiMatrix {
  std::size_t dim = 0;
  ComplexMatrix matrix;

  // Throws ValidationError unless matrix is dim^2 x dim^2, Hermitian, PSD
  // within 1e-9, and has unit trace within 1e-9.
  void validate() const;
};

// Matrix of a linear map on num_copies systems of local dimension dim,
// acting on column-stacked vectorizations (vec index = col * D^N + row,
// both composite indices big-endian in the copy label).
struct Superoperator {
  std::size_t num_copies = 0;
  std::size_t dim = 0;
  ComplexMatrix matrix;
};

// Column-stacked flattening and its inverse: vec(m)[c*D + r] = m(r, c).
std::vector<cxd> vec(const ComplexMatrix& m);
ComplexMatrix unvec(std::size_t dim, const std::vector<cxd>& v);

// sum_i A_i m A_i^dagger without any physicality checks on the output.
ComplexMatrix apply_map(const KrausChannel& ch, const ComplexMatrix& m);

// Same sum on a density operator, returning a validated density operator.
// Throws DimensionError on mismatched dims.
DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho);

// sum A_i^dagger A_i = I within tol.
bool is_trace_preserving(const KrausChannel& ch, double tol = 1e-9);
// Partial trace of the Choi over the output factor equals I/dim within tol.
bool is_trace_preserving(const ChoiMatrix& j, double tol = 1e-9);
// Dual condition vec(I)^T S = vec(I)^T within tol (single copy or many).
bool is_trace_preserving(const Superoperator& s, double tol = 1e-9);

// (identity tensor ch) applied to the maximally entangled state.
ChoiMatrix choi_from_channel(const KrausChannel& ch);

// Kraus operators from the spectral decomposition of dim * J, one per
// eigenvalue above 1e-10. Throws CompletePositivityError when J has an
// eigenvalue below -1e-8.
KrausChannel channel_from_choi(const ChoiMatrix& j);

// The Choi matrix reinterpreted as a state on the doubled space; unit trace
// and positivity make this a density operator, so channel estimation can
// reuse the state-tomography machinery verbatim.
DensityOperator choi_state(const KrausChannel& ch);

struct StinespringDilation {
  DensityOperator ancilla_state;  // first-basis-vector projector
  ComplexMatrix unitary;          // acts on system tensor ancilla, system first
};

// Extends V|psi> = sum_i (A_i|psi>) tensor |i> to a unitary on system tensor
// ancilla (ancilla dimension = #Kraus, padded to >= 2) by orthonormal
// completion, and self-checks that tracing out the ancilla reproduces the
// channel on a spanning basis within 1e-9. Throws IsometryError unless the
// channel is trace preserving.
StinespringDilation stinespring_dilate(const KrausChannel& ch);

// Matrix of ch_1 tensor ... tensor ch_N in the fixed vectorization
// convention. Throws DimensionError on mixed dims, ResourceLimitError past
// kMaxSuperopDim.
Superoperator superop_from_channels(const std::vector<KrausChannel>& chs);

// sum_i weights_i (chs_i)^{tensor n}: the discrete mixture-of-product-maps
// form that exchangeable operations decompose into.
Superoperator mixture_superop(const std::vector<double>& weights,
                              const std::vector<KrausChannel>& chs, std::size_t n);

// Applies the superoperator to an operator on its composite space.
ComplexMatrix apply_superop(const Superoperator& s, const ComplexMatrix& m);

struct OpSymmetryVerdict {
  bool symmetric = true;
  std::size_t swap_pos = 0;  // left index of the violating adjacent swap
};

// True iff the map commutes with relabeling the copies, tested on every
// adjacent transposition within 1e-9 in Frobenius norm. Requires >= 2 copies.
OpSymmetryVerdict op_symmetry_check(const Superoperator& phi);

// True iff discarding the last copy commutes with the maps: applying phi_n
// to the marginal matches marginalizing phi_n1's output, within 1e-9 over a
// spanning set of operators. Throws DimensionError unless phi_n1 has exactly
// one more copy at the same local dimension.
bool op_extendibility_check(const Superoperator& phi_n, const Superoperator& phi_n1);

struct TpFilterRow {
  std::size_t copies = 0;
  double value = 0.0;  // sum_i p_i [trace of map_i(rho)]^copies
};

struct TpFilterReport {
  std::vector<TpFilterRow> rows;
  std::size_t first_violation = 0;  // smallest N with |value - 1| > 0.01; 0 if none
  bool all_trace_preserving = false;
};

// Scalar shadow of why mixtures of product maps force trace preservation:
// any trace-deficient or trace-inflating component makes the mixture value
// drift from 1 as the copy count grows. All-TP input yields a table of ones.
TpFilterReport tp_filter_demo(const std::vector<double>& weights,
                              const std::vector<KrausChannel>& maps, const DensityOperator& rho,
                              std::size_t n_max);

// {sqrt(1 - 3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}; shrinks Bloch
// vectors by (1 - p). Valid for 0 <= p <= 4/3.
KrausChannel depolarizing_channel(double p);
KrausChannel identity_channel(std::size_t dim);

// Trace-preserving channel from a Haar-like random isometry: a Gaussian
// (dim * kraus_rank) x dim block orthonormalized column by column.
KrausChannel sample_channel(std::size_t dim, std::size_t kraus_rank, Rng& rng);

// Random qubit Pauli channel {sqrt(w_k) sigma_k} with w drawn uniformly from
// the probability simplex.
KrausChannel sample_pauli_channel(Rng& rng);

// kMixed alternates isometry and Pauli draws particle by particle.
enum class ChannelMeasure { kIsometry, kPauli, kMixed };

ChannelMeasure parse_channel_measure(const std::string& name);
std::string channel_measure_name(ChannelMeasure measure);

// `count` uniformly weighted channel particles stored as Choi states (dim
// squared). kraus_rank only affects the isometry measure.
ParticleEnsemble sample_channel_ensemble(std::size_t dim, std::size_t count, Rng& rng,
                                         ChannelMeasure measure, std::size_t kraus_rank = 2);

struct ProcessRunRow {
  std::size_t shots = 0;
  double choi_distance = 0.0;  // predictive Choi to truth Choi, trace distance
};

struct ProcessRunReport {
  std::vector<ProcessRunRow> rows;
  double threshold = 0.0;
  bool converged = false;
};

// Entanglement-assisted channel estimation: simulate measurements of the
// truth's Choi state under the minimal IC-POVM on the doubled space, then
// reweight the particle Chois, logging the predictive-to-truth trace
// distance at shot counts 0, 1, 2, 4, ... and the final count. Requires a
// qubit channel and a prior with weight within trace distance 0.2 of the
// truth Choi (PriorSupportError otherwise).
ProcessRunReport process_tomography_run(const KrausChannel& truth, std::size_t shots,
                                        const ParticleEnsemble& particles, Rng& rng,
                                        double threshold = 0.06);

struct ProcessRow {
  std::size_t shots = 0;
  double cross_prior_distance = 0.0;
  double prior1_truth = 0.0;
  double prior2_truth = 0.0;
  double choi_distance = 0.0;  // primary-prior predictive to truth (= prior1_truth)
};

struct ProcessReport {
  std::vector<ProcessRow> rows;
  double threshold = 0.0;
  bool converged = false;
};

// Ready-made two-prior process experiment on the same simulated data, the
// channel-space analogue of run_state_experiment. Substreams of `seed`:
// 1 -> prior1, 2 -> prior2, 3 -> measurements.
struct ProcessExperimentConfig {
  std::size_t shots = 10000;
  std::size_t particles = 4096;
  std::uint64_t seed = 7;
  ChannelMeasure prior1 = ChannelMeasure::kPauli;
  ChannelMeasure prior2 = ChannelMeasure::kMixed;
  std::size_t kraus_rank = 2;
  double threshold = 0.06;
};

ProcessReport run_process_experiment(const ProcessExperimentConfig& config,
                                     const KrausChannel& truth);

// Choi matrix of ch_1 tensor ... tensor ch_N with factors ordered
// R_1 Q_1 R_2 Q_2 ...: equals the plain Kronecker product of the single-copy
// Choi matrices. interleaved_to_grouped permutes that ordering to
// (R_1..R_N, Q_1..Q_N), under which it matches choi_from_channel of the
// product channel.
ComplexMatrix multi_choi(const std::vector<KrausChannel>& chs);
PermutationSpec interleaved_to_grouped(std::size_t n);

// {"dim": D, "kraus": [matrix, ...]}; readers also accept {"dim": D,
// "choi": matrix} and convert. Both forms are validated on read.
nlohmann::json channel_to_json(const KrausChannel& ch);
nlohmann::json choi_to_json(const ChoiMatrix& j);
KrausChannel channel_from_json(const nlohmann::json& j);

}  // namespace qbayes
