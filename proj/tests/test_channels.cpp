#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "qbayes/channels.hpp"
#include "qbayes/eig.hpp"
#include "qbayes/errors.hpp"
#include "qbayes/states.hpp"
#include "qbayes/tensor.hpp"
#include "test_helpers.hpp"

using namespace qbayes;
using qbayes::test::diag;
using qbayes::test::random_density_matrix;
using qbayes::test::random_matrix;

namespace {

ComplexMatrix max_entangled_projector(std::size_t d) {
  std::vector<cxd> psi(d * d, cxd(0.0));
  for (std::size_t k = 0; k < d; ++k) psi[k * d + k] = 1.0 / std::sqrt(double(d));
  return outer(psi);
}

KrausChannel scaled_identity_map(double trace_factor) {
  ComplexMatrix a = ComplexMatrix::identity(2);
  a *= cxd(std::sqrt(trace_factor));
  return KrausChannel{2, {std::move(a)}};
}

// All Kraus products (A_i tensor B_j), the direct two-copy oracle.
ComplexMatrix product_map_oracle(const KrausChannel& ch1, const KrausChannel& ch2,
                                 const ComplexMatrix& rho) {
  ComplexMatrix out(rho.dim());
  for (const ComplexMatrix& a : ch1.kraus_ops) {
    for (const ComplexMatrix& b : ch2.kraus_ops) {
      const ComplexMatrix k = kron(a, b);
      out += k * rho * k.adjoint();
    }
  }
  return out;
}

KrausChannel product_channel(const KrausChannel& ch1, const KrausChannel& ch2) {
  KrausChannel prod;
  prod.dim = ch1.dim * ch2.dim;
  for (const ComplexMatrix& a : ch1.kraus_ops)
    for (const ComplexMatrix& b : ch2.kraus_ops) prod.kraus_ops.push_back(kron(a, b));
  return prod;
}

}  // namespace

TEST_CASE("vectorization convention: vec(AXB) = (B^T kron A) vec(X)") {
  Rng rng(901);
  for (std::size_t d : {2, 3}) {
    const ComplexMatrix a = random_matrix(d, rng);
    const ComplexMatrix x = random_matrix(d, rng);
    const ComplexMatrix b = random_matrix(d, rng);
    const std::vector<cxd> lhs = vec(a * x * b);
    const std::vector<cxd> rhs = qbayes::apply(kron(b.transpose(), a), vec(x));
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12);
    }
    CHECK_MATRIX_NEAR(unvec(d, vec(x)), x, 0.0);
  }
}

TEST_CASE("identity channel leaves states unchanged") {
  Rng rng(902);
  const KrausChannel id = identity_channel(3);
  id.validate();
  const DensityOperator rho(random_density_matrix(3, rng));
  CHECK_MATRIX_NEAR(apply_channel(id, rho).matrix(), rho.matrix(), 1e-14);
}

TEST_CASE("collapse map projects onto the observed outcome") {
  Rng rng(903);
  const DensityOperator rho(random_density_matrix(2, rng));
  ComplexMatrix proj(2);
  proj.at(1, 1) = 1.0;
  const KrausChannel collapse{2, {proj}};
  ComplexMatrix post = apply_map(collapse, rho.matrix());
  const double p = post.trace().real();
  CHECK(p == doctest::Approx(rho.matrix().at(1, 1).real()).epsilon(1e-12));
  post *= cxd(1.0 / p);
  CHECK_MATRIX_NEAR(post, proj, 1e-12);
}

TEST_CASE("depolarizing channel shrinks Bloch vectors") {
  const BlochVector s{{0.3, -0.5, 0.6}};
  const KrausChannel dep = depolarizing_channel(0.3);
  dep.validate();
  const DensityOperator out = apply_channel(dep, bloch_to_rho(s));
  const BlochVector t = rho_to_bloch(out);
  for (int k = 0; k < 3; ++k) CHECK(t.s[k] == doctest::Approx(0.7 * s.s[k]).epsilon(1e-12));
  CHECK_THROWS_AS(depolarizing_channel(-0.1), ValidationError);
  CHECK_THROWS_AS(depolarizing_channel(1.5), ValidationError);
}

TEST_CASE("apply_channel rejects mismatched dimensions") {
  Rng rng(904);
  const KrausChannel id = identity_channel(2);
  CHECK_THROWS_AS(apply_channel(id, DensityOperator(random_density_matrix(3, rng))),
                  DimensionError);
}

TEST_CASE("Choi of the identity is the maximally entangled projector") {
  const ChoiMatrix j = choi_from_channel(identity_channel(2));
  j.validate();
  CHECK_MATRIX_NEAR(j.matrix, max_entangled_projector(2), 1e-14);
}

TEST_CASE("Choi of the fully depolarizing channel is maximally mixed") {
  const ChoiMatrix j = choi_from_channel(depolarizing_channel(1.0));
  ComplexMatrix expected = ComplexMatrix::identity(4);
  expected *= cxd(0.25);
  CHECK_MATRIX_NEAR(j.matrix, expected, 1e-14);
}

TEST_CASE("Choi of depolarizing(0.3) has the expected spectrum") {
  const EigResult eig = herm_eig(choi_from_channel(depolarizing_channel(0.3)).matrix);
  CHECK(eig.values[0] == doctest::Approx(0.775).epsilon(1e-12));
  for (int k = 1; k < 4; ++k) CHECK(eig.values[k] == doctest::Approx(0.075).epsilon(1e-12));
}

TEST_CASE("trace preservation matches the Choi marginal condition both ways") {
  Rng rng(905);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rank = 1 + std::size_t(trial % 4);
    const KrausChannel ch = sample_channel(2, rank, rng);
    CHECK(is_trace_preserving(ch));
    const ChoiMatrix j = choi_from_channel(ch);
    CHECK(is_trace_preserving(j, 1e-10));
  }
  for (int trial = 0; trial < 20; ++trial) {
    KrausChannel broken = sample_channel(2, 2, rng);
    broken.kraus_ops[0] *= cxd(trial % 2 == 0 ? 1.01 : 0.95);
    CHECK_FALSE(is_trace_preserving(broken));
    CHECK_FALSE(is_trace_preserving(choi_from_channel(broken)));
    CHECK_THROWS_AS(broken.validate(), ValidationError);
  }
}

TEST_CASE("maximally entangled Choi recovers the identity channel") {
  const ChoiMatrix j{2, max_entangled_projector(2)};
  const KrausChannel ch = channel_from_choi(j);
  REQUIRE(ch.kraus_ops.size() == 1);
  Rng rng(906);
  for (const ComplexMatrix& b : hermitian_basis(2)) {
    CHECK_MATRIX_NEAR(apply_map(ch, b), b, 1e-12);
  }
}

TEST_CASE("maximally mixed Choi recovers the trace-to-center map") {
  ComplexMatrix m = ComplexMatrix::identity(4);
  m *= cxd(0.25);
  const KrausChannel ch = channel_from_choi(ChoiMatrix{2, std::move(m)});
  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= cxd(0.5);
  CHECK_MATRIX_NEAR(apply_map(ch, ComplexMatrix::identity(2)), 2.0 * half, 1e-12);
  for (int k = 1; k <= 3; ++k) {
    CHECK(apply_map(ch, pauli(k)).max_abs() <= 1e-12);
  }
}

TEST_CASE("channel and Choi representations roundtrip on random channels") {
  Rng rng(907);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rank = 1 + std::size_t(trial % 4);
    const KrausChannel ch = sample_channel(2, rank, rng);
    const KrausChannel back = channel_from_choi(choi_from_channel(ch));
    for (const ComplexMatrix& b : hermitian_basis(2)) {
      CHECK_MATRIX_NEAR(apply_map(back, b), apply_map(ch, b), 1e-9);
    }
  }
}

TEST_CASE("non-CP Choi input is rejected") {
  ComplexMatrix m = max_entangled_projector(2);
  m *= cxd(1.05);
  ComplexMatrix rest = ComplexMatrix::identity(4) - max_entangled_projector(2);
  rest *= cxd(-0.05 / 3.0);
  m += rest;
  CHECK(std::abs(m.trace() - cxd(1.0)) <= 1e-12);
  CHECK_THROWS_AS(channel_from_choi(ChoiMatrix{2, std::move(m)}), CompletePositivityError);
}

TEST_CASE("Choi validation enforces shape, positivity, and trace") {
  ChoiMatrix good = choi_from_channel(depolarizing_channel(0.2));
  good.validate();
  ChoiMatrix wrong_size{2, ComplexMatrix::identity(2)};
  CHECK_THROWS_AS(wrong_size.validate(), DimensionError);
  ChoiMatrix off_trace{2, ComplexMatrix::identity(4)};
  CHECK_THROWS_AS(off_trace.validate(), ValidationError);
}

TEST_CASE("dilation of the identity channel is the identity unitary") {
  const StinespringDilation dil = stinespring_dilate(identity_channel(2));
  CHECK(dil.ancilla_state.dim() == 2);
  CHECK(dil.ancilla_state.matrix().at(0, 0).real() == doctest::Approx(1.0));
  CHECK_MATRIX_NEAR(dil.unitary, ComplexMatrix::identity(4), 1e-12);
}

TEST_CASE("dilation reproduces the channel through the ancilla trace") {
  Rng rng(908);
  const KrausChannel ch = sample_channel(2, 2, rng);
  const StinespringDilation dil = stinespring_dilate(ch);
  const std::size_t anc = dil.ancilla_state.dim();
  CHECK(anc == 2);
  CHECK_MATRIX_NEAR(dil.unitary * dil.unitary.adjoint(),
                    ComplexMatrix::identity(dil.unitary.dim()), 1e-10);
  const SystemShape shape{{2, anc}};
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix rho = random_density_matrix(2, rng);
    const ComplexMatrix embedded = kron(rho, dil.ancilla_state.matrix());
    const ComplexMatrix reduced =
        partial_trace(dil.unitary * embedded * dil.unitary.adjoint(), shape, {0});
    CHECK_MATRIX_NEAR(reduced, apply_map(ch, rho), 1e-9);
  }
}

TEST_CASE("unitarily remixed Kraus sets give distinct dilations of one channel") {
  Rng rng(909);
  const KrausChannel ch = sample_channel(2, 2, rng);
  const ComplexMatrix u = haar_unitary(2, rng);
  KrausChannel remixed;
  remixed.dim = 2;
  for (std::size_t i = 0; i < 2; ++i) {
    ComplexMatrix b(2);
    for (std::size_t j = 0; j < 2; ++j) {
      ComplexMatrix term = ch.kraus_ops[j];
      term *= u.at(i, j);
      b += term;
    }
    remixed.kraus_ops.push_back(std::move(b));
  }
  remixed.validate();

  // Same map, same Choi, different unitary extension.
  CHECK_MATRIX_NEAR(choi_from_channel(remixed).matrix, choi_from_channel(ch).matrix, 1e-12);
  const StinespringDilation d1 = stinespring_dilate(ch);
  const StinespringDilation d2 = stinespring_dilate(remixed);
  CHECK(max_abs_diff(d1.unitary, d2.unitary) > 1e-3);
  const SystemShape shape{{2, 2}};
  const ComplexMatrix rho = random_density_matrix(2, rng);
  const ComplexMatrix out1 = partial_trace(
      d1.unitary * kron(rho, d1.ancilla_state.matrix()) * d1.unitary.adjoint(), shape, {0});
  const ComplexMatrix out2 = partial_trace(
      d2.unitary * kron(rho, d2.ancilla_state.matrix()) * d2.unitary.adjoint(), shape, {0});
  CHECK_MATRIX_NEAR(out1, out2, 1e-9);
}

TEST_CASE("dilation then Choi agrees with the direct Choi") {
  Rng rng(910);
  const KrausChannel ch = sample_channel(2, 3, rng);
  const StinespringDilation dil = stinespring_dilate(ch);
  const std::size_t anc = dil.ancilla_state.dim();
  const SystemShape shape{{2, anc}};

  // Rebuild Kraus operators from unitary blocks: A_i = (<i| on ancilla) U (|0> on ancilla).
  KrausChannel rebuilt;
  rebuilt.dim = 2;
  for (std::size_t i = 0; i < anc; ++i) {
    ComplexMatrix a(2);
    for (std::size_t q = 0; q < 2; ++q)
      for (std::size_t s = 0; s < 2; ++s) a.at(q, s) = dil.unitary.at(q * anc + i, s * anc);
    rebuilt.kraus_ops.push_back(std::move(a));
  }
  rebuilt.validate();
  CHECK_MATRIX_NEAR(choi_from_channel(rebuilt).matrix, choi_from_channel(ch).matrix, 1e-9);
}

TEST_CASE("non-trace-preserving maps cannot be dilated") {
  CHECK_THROWS_AS(stinespring_dilate(scaled_identity_map(1.1)), IsometryError);
}

TEST_CASE("superoperator of identity channels is the identity matrix") {
  for (std::size_t n : {1, 2, 3}) {
    const Superoperator s =
        superop_from_channels(std::vector<KrausChannel>(n, identity_channel(2)));
    CHECK(s.num_copies == n);
    CHECK_MATRIX_NEAR(s.matrix, ComplexMatrix::identity(s.matrix.dim()), 1e-14);
    CHECK(is_trace_preserving(s));
  }
}

TEST_CASE("product superoperator acts factor-wise on product states") {
  Rng rng(911);
  const KrausChannel dep = depolarizing_channel(0.4);
  const Superoperator s = superop_from_channels({dep, identity_channel(2)});
  const ComplexMatrix rho = random_density_matrix(2, rng);
  const ComplexMatrix sigma = random_density_matrix(2, rng);
  CHECK_MATRIX_NEAR(apply_superop(s, kron(rho, sigma)), kron(apply_map(dep, rho), sigma),
                    1e-12);
}

TEST_CASE("two-copy superoperator matches the Kraus-product oracle") {
  Rng rng(912);
  for (int trial = 0; trial < 5; ++trial) {
    const KrausChannel ch1 = sample_channel(2, 2, rng);
    const KrausChannel ch2 = sample_channel(2, 1 + std::size_t(trial % 3), rng);
    const Superoperator s = superop_from_channels({ch1, ch2});
    const ComplexMatrix rho = random_density_matrix(4, rng);
    CHECK_MATRIX_NEAR(apply_superop(s, rho), product_map_oracle(ch1, ch2, rho), 1e-10);
    CHECK(is_trace_preserving(s));
  }
}

TEST_CASE("single-copy superoperator agrees with direct application") {
  Rng rng(913);
  const KrausChannel ch = sample_channel(2, 2, rng);
  const Superoperator s = superop_from_channels({ch});
  const ComplexMatrix m = random_matrix(2, rng);
  CHECK_MATRIX_NEAR(apply_superop(s, m), apply_map(ch, m), 1e-12);
}

TEST_CASE("superoperator size limit is enforced") {
  CHECK_THROWS_AS(
      superop_from_channels(std::vector<KrausChannel>(6, identity_channel(2))),
      ResourceLimitError);
}

TEST_CASE("mixture superoperator is the weighted sum of product maps") {
  Rng rng(914);
  const KrausChannel a = sample_channel(2, 2, rng);
  const KrausChannel b = sample_channel(2, 2, rng);
  const Superoperator single = mixture_superop({1.0}, {a}, 2);
  CHECK_MATRIX_NEAR(single.matrix, superop_from_channels({a, a}).matrix, 1e-13);

  const Superoperator mix = mixture_superop({0.5, 0.5}, {a, b}, 1);
  ComplexMatrix expected = superop_from_channels({a}).matrix;
  expected += superop_from_channels({b}).matrix;
  expected *= cxd(0.5);
  CHECK_MATRIX_NEAR(mix.matrix, expected, 1e-13);
  CHECK_THROWS_AS(mixture_superop({0.7, 0.7}, {a, b}, 1), ValidationError);
}

TEST_CASE("product and mixture maps pass the copy-symmetry check") {
  Rng rng(915);
  const KrausChannel ch = sample_channel(2, 2, rng);
  CHECK(op_symmetry_check(superop_from_channels({ch, ch})).symmetric);
  CHECK(op_symmetry_check(superop_from_channels({ch, ch, ch})).symmetric);

  std::vector<double> w{0.3, 0.7};
  std::vector<KrausChannel> comps{sample_channel(2, 1, rng), sample_channel(2, 2, rng)};
  CHECK(op_symmetry_check(mixture_superop(w, comps, 2)).symmetric);
}

TEST_CASE("asymmetric product maps fail the symmetry check at the swap") {
  const Superoperator s =
      superop_from_channels({depolarizing_channel(0.5), identity_channel(2)});
  const OpSymmetryVerdict verdict = op_symmetry_check(s);
  CHECK_FALSE(verdict.symmetric);
  CHECK(verdict.swap_pos == 0);
  CHECK_THROWS_AS(op_symmetry_check(superop_from_channels({identity_channel(2)})),
                  ValidationError);
}

TEST_CASE("product families are extendible") {
  Rng rng(916);
  const KrausChannel ch = sample_channel(2, 2, rng);
  CHECK(op_extendibility_check(superop_from_channels({ch, ch}),
                               superop_from_channels({ch, ch, ch})));
}

TEST_CASE("consistent mixtures are extendible, mismatched mixtures are not") {
  std::vector<KrausChannel> comps{identity_channel(2), depolarizing_channel(1.0)};
  const std::vector<double> w{0.5, 0.5};
  CHECK(op_extendibility_check(mixture_superop(w, comps, 1), mixture_superop(w, comps, 2)));
  CHECK(op_extendibility_check(mixture_superop(w, comps, 2), mixture_superop(w, comps, 3)));
  CHECK_FALSE(op_extendibility_check(mixture_superop({0.9, 0.1}, comps, 1),
                                     mixture_superop(w, comps, 2)));
  CHECK_THROWS_AS(op_extendibility_check(mixture_superop(w, comps, 1),
                                         mixture_superop(w, comps, 3)),
                  DimensionError);
}

TEST_CASE("trace filter reports all-ones for trace-preserving mixtures") {
  Rng rng(917);
  const DensityOperator rho(random_density_matrix(2, rng));
  const TpFilterReport report = tp_filter_demo(
      {0.4, 0.6}, {identity_channel(2), depolarizing_channel(0.8)}, rho, 12);
  CHECK(report.all_trace_preserving);
  CHECK(report.first_violation == 0);
  REQUIRE(report.rows.size() == 12);
  for (const TpFilterRow& row : report.rows) {
    CHECK(std::abs(row.value - 1.0) <= 1e-9);
  }
}

TEST_CASE("trace-inflating component diverges geometrically") {
  Rng rng(918);
  const DensityOperator rho(random_density_matrix(2, rng));
  const TpFilterReport report =
      tp_filter_demo({0.5, 0.5}, {identity_channel(2), scaled_identity_map(1.1)}, rho, 10);
  CHECK_FALSE(report.all_trace_preserving);
  CHECK(report.first_violation == 1);
  for (const TpFilterRow& row : report.rows) {
    const double expected = 0.5 + 0.5 * std::pow(1.1, double(row.copies));
    CHECK(row.value == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(report.rows.back().value > 1.01);
}

TEST_CASE("trace-deficient component pulls the mixture below one") {
  const DensityOperator rho(diag({0.5, 0.5}));
  const TpFilterReport report =
      tp_filter_demo({0.9, 0.1}, {identity_channel(2), scaled_identity_map(0.8)}, rho, 8);
  CHECK_FALSE(report.all_trace_preserving);
  CHECK(report.first_violation == 1);
  for (const TpFilterRow& row : report.rows) {
    const double expected = 0.9 + 0.1 * std::pow(0.8, double(row.copies));
    CHECK(row.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(row.value < 1.0);
  }
}

TEST_CASE("random isometry channels are trace preserving and reproducible") {
  Rng rng1(919);
  Rng rng2(919);
  const KrausChannel a = sample_channel(2, 3, rng1);
  const KrausChannel b = sample_channel(2, 3, rng2);
  REQUIRE(a.kraus_ops.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK_MATRIX_NEAR(a.kraus_ops[i], b.kraus_ops[i], 0.0);
  }
  a.validate();
}

TEST_CASE("random Pauli channels sit on the Bell-diagonal family") {
  Rng rng(920);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausChannel ch = sample_pauli_channel(rng);
    ch.validate();
    REQUIRE(ch.kraus_ops.size() == 4);
    // Choi eigenvalues recover the Pauli weights.
    const EigResult eig = herm_eig(choi_from_channel(ch).matrix);
    double sum = 0.0;
    for (double v : eig.values) {
      CHECK(v >= -1e-12);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("channel particle ensembles are Choi states on the doubled space") {
  Rng rng(921);
  const ParticleEnsemble pauli =
      sample_channel_ensemble(2, 8, rng, ChannelMeasure::kPauli);
  pauli.validate();
  CHECK(pauli.particles.size() == 8);
  for (const DensityOperator& p : pauli.particles) CHECK(p.dim() == 4);
  CHECK_THROWS_AS(sample_channel_ensemble(3, 4, rng, ChannelMeasure::kPauli),
                  DimensionError);
  const ParticleEnsemble iso =
      sample_channel_ensemble(3, 4, rng, ChannelMeasure::kIsometry);
  for (const DensityOperator& p : iso.particles) CHECK(p.dim() == 9);
}

TEST_CASE("process run with zero shots reports the prior mean distance") {
  Rng rng(922);
  ParticleEnsemble prior = sample_channel_ensemble(2, 64, rng, ChannelMeasure::kPauli);
  const KrausChannel truth = identity_channel(2);
  prior.particles.push_back(choi_state(truth));
  prior.weights.assign(prior.particles.size(), 1.0 / double(prior.particles.size()));
  const ProcessRunReport report = process_tomography_run(truth, 0, prior, rng);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].shots == 0);
  const double expected =
      trace_distance(predictive_state(prior), choi_state(truth));
  CHECK(report.rows[0].choi_distance == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("process tomography concentrates on the truth channel") {
  Rng rng(923);
  Rng prior_rng = rng.split(1);
  Rng data_rng = rng.split(2);
  const ParticleEnsemble prior =
      sample_channel_ensemble(2, 512, prior_rng, ChannelMeasure::kPauli);
  const KrausChannel truth = depolarizing_channel(0.3);
  const ProcessRunReport report = process_tomography_run(truth, 2000, prior, data_rng, 0.1);
  const double start = report.rows.front().choi_distance;
  const double end = report.rows.back().choi_distance;
  CHECK(end < start);
  CHECK(end < 0.1);
  CHECK(report.converged);
}

TEST_CASE("process run rejects priors with no support near the truth") {
  ParticleEnsemble lone;
  lone.particles.push_back(choi_state(identity_channel(2)));
  lone.weights.push_back(1.0);
  Rng rng(924);
  CHECK_THROWS_AS(process_tomography_run(depolarizing_channel(0.3), 10, lone, rng),
                  PriorSupportError);
}

TEST_CASE("two-copy Choi is the reordered product of single-copy Chois") {
  Rng rng(925);
  const KrausChannel ch1 = sample_channel(2, 2, rng);
  const KrausChannel ch2 = sample_pauli_channel(rng);
  const ComplexMatrix interleaved = multi_choi({ch1, ch2});
  CHECK(std::abs(interleaved.trace() - cxd(1.0)) <= 1e-12);
  const ComplexMatrix grouped = permute_systems(interleaved, SystemShape::uniform(4, 2),
                                                interleaved_to_grouped(2));
  const ComplexMatrix direct = choi_from_channel(product_channel(ch1, ch2)).matrix;
  CHECK_MATRIX_NEAR(grouped, direct, 1e-10);
}

TEST_CASE("channel JSON roundtrips through both encodings") {
  Rng rng(926);
  const KrausChannel ch = sample_channel(2, 2, rng);
  const KrausChannel from_kraus = channel_from_json(channel_to_json(ch));
  REQUIRE(from_kraus.kraus_ops.size() == ch.kraus_ops.size());
  for (std::size_t i = 0; i < ch.kraus_ops.size(); ++i) {
    CHECK_MATRIX_NEAR(from_kraus.kraus_ops[i], ch.kraus_ops[i], 1e-15);
  }
  const KrausChannel from_choi = channel_from_json(choi_to_json(choi_from_channel(ch)));
  for (const ComplexMatrix& b : hermitian_basis(2)) {
    CHECK_MATRIX_NEAR(apply_map(from_choi, b), apply_map(ch, b), 1e-9);
  }
  CHECK_THROWS_AS(channel_from_json(nlohmann::json{{"dim", 2}}), ValidationError);
  CHECK_THROWS_AS(channel_from_json(nlohmann::json::array()), ValidationError);
}
