#include <doctest.h>

#include <cmath>

#include "qbayes/eig.hpp"
#include "qbayes/errors.hpp"
#include "qbayes/povm.hpp"
#include "qbayes/states.hpp"
#include "test_helpers.hpp"

using namespace qbayes;
using qbayes::test::diag;
using qbayes::test::random_density_matrix;

TEST_CASE("projector family for a qubit matches the closed forms") {
  const auto family = build_projector_family(2);
  REQUIRE(family.size() == 4);
  CHECK_MATRIX_NEAR(family[0], diag({1, 0}), 0.0);
  CHECK_MATRIX_NEAR(family[1], diag({0, 1}), 0.0);
  ComplexMatrix plus(2);
  plus.at(0, 0) = 0.5;
  plus.at(0, 1) = 0.5;
  plus.at(1, 0) = 0.5;
  plus.at(1, 1) = 0.5;
  CHECK_MATRIX_NEAR(family[2], plus, 0.0);
  ComplexMatrix imag(2);
  imag.at(0, 0) = 0.5;
  imag.at(0, 1) = cxd{0.0, -0.5};
  imag.at(1, 0) = cxd{0.0, 0.5};
  imag.at(1, 1) = 0.5;
  CHECK_MATRIX_NEAR(family[3], imag, 0.0);
  CHECK_THROWS_AS(build_projector_family(1), DimensionError);
}

TEST_CASE("projector family members are rank-1 projectors for d = 2..5") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto family = build_projector_family(d);
    REQUIRE(family.size() == d * d);
    for (const ComplexMatrix& p : family) {
      CHECK(frobenius_diff(p * p, p) <= 1e-12);
      CHECK(std::abs(p.trace() - cxd{1.0, 0.0}) <= 1e-12);
    }
  }
}

TEST_CASE("projector family is linearly independent for d = 2..5") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto family = build_projector_family(d);
    const std::size_t n = family.size();
    ComplexMatrix gram(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        gram.at(a, b) = trace_of_product(family[a].adjoint(), family[b]);
      }
    }
    const EigResult eig = herm_eig(gram);
    std::size_t rank = 0;
    for (double v : eig.values) {
      if (v > 1e-10) ++rank;
    }
    CHECK(rank == n);
  }
}

TEST_CASE("qubit frame operator matches the hand-summed value") {
  const auto family = build_projector_family(2);
  ComplexMatrix g(2);
  for (const auto& p : family) g += p;
  ComplexMatrix expected(2);
  expected.at(0, 0) = 2.0;
  expected.at(1, 1) = 2.0;
  expected.at(0, 1) = cxd{0.5, -0.5};
  expected.at(1, 0) = cxd{0.5, 0.5};
  CHECK_MATRIX_NEAR(g, expected, 1e-15);
}

TEST_CASE("minimal IC POVM passes its axioms") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const Povm povm = build_min_ic_povm(d);
    CHECK(povm.dim == d);
    CHECK(povm.minimal_ic);
    REQUIRE(povm.elements.size() == d * d);
    ComplexMatrix sum(d);
    for (const auto& e : povm.elements) {
      sum += e;
      CHECK(min_eigenvalue(e) >= -1e-10);
    }
    const double residual = frobenius_diff(sum, ComplexMatrix::identity(d));
    CHECK(residual <= (d == 2 ? 1e-12 : 1e-10));
    CHECK_NOTHROW(povm.validate());
  }
}

TEST_CASE("minimal IC POVM elements are rank 1") {
  for (std::size_t d = 2; d <= 4; ++d) {
    const Povm povm = build_min_ic_povm(d);
    for (const auto& e : povm.elements) {
      const EigResult eig = herm_eig(e);
      CHECK(eig.values[0] > 1e-10);
      CHECK(std::abs(eig.values[1]) <= 1e-10);
    }
  }
}

TEST_CASE("Povm::validate rejects broken inputs") {
  Povm povm = build_min_ic_povm(2);
  Povm missing = povm;
  missing.elements.pop_back();
  CHECK_THROWS_AS(missing.validate(), ValidationError);

  Povm negated = povm;
  negated.elements[0] *= cxd{-1.0, 0.0};
  CHECK_THROWS_AS(negated.validate(), ValidationError);

  // Doubling an element breaks the resolution of the identity.
  Povm doubled = povm;
  doubled.elements[0] *= cxd{2.0, 0.0};
  CHECK_THROWS_AS(doubled.validate(), ValidationError);

  // A repeated element keeps the sum only if another is dropped; instead
  // check the rank test directly with a dependent family.
  Povm dependent;
  dependent.dim = 2;
  dependent.minimal_ic = true;
  ComplexMatrix quarter = ComplexMatrix::identity(2);
  quarter *= cxd{0.25, 0.0};
  dependent.elements = {quarter, quarter, quarter, quarter};
  CHECK_THROWS_AS(dependent.validate(), ValidationError);
}

TEST_CASE("ProbVector clamps tiny negatives and validates sums") {
  const ProbVector p({1.0 - 1e-13, -1e-13, 1e-13, 1e-13});
  CHECK(p.prob(1) == 0.0);
  CHECK(p.prob(0) > 0.0);
  CHECK_THROWS_AS(ProbVector({0.5, 0.5, -1e-6}), ValidationError);
  CHECK_THROWS_AS(ProbVector({0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(ProbVector({}), ValidationError);
}

TEST_CASE("outcome probabilities of the maximally mixed state") {
  const Povm povm = build_min_ic_povm(3);
  ComplexMatrix mixed = ComplexMatrix::identity(3);
  mixed *= cxd{1.0 / 3.0, 0.0};
  const ProbVector p = outcome_probabilities(DensityOperator(mixed), povm);
  for (std::size_t a = 0; a < p.size(); ++a) {
    CHECK(p.prob(a) ==
          doctest::Approx(povm.elements[a].trace().real() / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("outcome probabilities of a von Neumann measurement") {
  Povm vn;
  vn.dim = 2;
  vn.elements = {diag({1, 0}), diag({0, 1})};
  vn.validate();
  const ProbVector p = outcome_probabilities(DensityOperator(diag({1, 0})), vn);
  CHECK(p.prob(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.prob(1) == doctest::Approx(0.0));
}

TEST_CASE("outcome probabilities match an elementwise trace oracle") {
  const Povm povm = build_min_ic_povm(2);
  const DensityOperator rho = bloch_to_rho({{0, 0, 0.5}});
  const ProbVector p = outcome_probabilities(rho, povm);
  for (std::size_t a = 0; a < p.size(); ++a) {
    // Oracle: form the product explicitly and sum its diagonal.
    const ComplexMatrix prod = rho.matrix() * povm.elements[a];
    cxd tr = 0.0;
    for (std::size_t i = 0; i < 2; ++i) tr += prod.at(i, i);
    CHECK(p.prob(a) == doctest::Approx(tr.real()).epsilon(1e-14));
  }
  const DensityOperator qutrit(diag({0.5, 0.3, 0.2}));
  CHECK_THROWS_AS(outcome_probabilities(qutrit, povm), DimensionError);
}

TEST_CASE("hermitian basis spans with correct counts and traces") {
  for (std::size_t d = 2; d <= 4; ++d) {
    const auto basis = hermitian_basis(d);
    REQUIRE(basis.size() == d * d);
    CHECK(std::abs(basis[0].trace() - cxd{static_cast<double>(d), 0.0}) <= 1e-15);
    for (std::size_t b = 1; b < basis.size(); ++b) {
      CHECK(std::abs(basis[b].trace()) <= 1e-12);
      CHECK(basis[b].hermiticity_defect() <= 1e-15);
    }
  }
}

TEST_CASE("reconstruction round-trips the maximally mixed state") {
  const Povm povm = build_min_ic_povm(2);
  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= cxd{0.5, 0.0};
  const ProbVector p = outcome_probabilities(DensityOperator(half), povm);
  const ReconstructedOperator a = reconstruct_operator(p, povm);
  CHECK(frobenius_diff(a.matrix, half) <= 1e-12);
  CHECK(a.is_physical);
}

TEST_CASE("reconstruction round-trips random states") {
  Rng rng(201);
  for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
    const Povm povm = build_min_ic_povm(d);
    for (int rep = 0; rep < 100; ++rep) {
      const DensityOperator rho(random_density_matrix(d, rng));
      const ReconstructedOperator a =
          reconstruct_operator(outcome_probabilities(rho, povm), povm);
      CHECK(frobenius_diff(a.matrix, rho.matrix()) <= 1e-9);
      CHECK(a.is_physical);
    }
  }
}

TEST_CASE("reconstruction is linear in the probability vector") {
  Rng rng(202);
  const Povm povm = build_min_ic_povm(2);
  const DensityOperator r1(random_density_matrix(2, rng));
  const DensityOperator r2(random_density_matrix(2, rng));
  const ProbVector p1 = outcome_probabilities(r1, povm);
  const ProbVector p2 = outcome_probabilities(r2, povm);
  const double lambda = 0.3;
  std::vector<double> mixed(p1.size());
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    mixed[i] = lambda * p1.raw()[i] + (1.0 - lambda) * p2.raw()[i];
  }
  const ComplexMatrix lhs = reconstruct_operator(ProbVector(mixed), povm).matrix;
  ComplexMatrix rhs = reconstruct_operator(p1, povm).matrix;
  rhs *= cxd{lambda, 0.0};
  ComplexMatrix tail = reconstruct_operator(p2, povm).matrix;
  tail *= cxd{1.0 - lambda, 0.0};
  rhs += tail;
  CHECK(frobenius_diff(lhs, rhs) <= 1e-9);
}

TEST_CASE("probability vectors outside the state space reconstruct as nonphysical") {
  const Povm povm = build_min_ic_povm(2);
  // Start from a pure state: its reconstruction has a zero eigenvalue, so a
  // small push along the right direction in probability space drives it
  // negative while probabilities stay inside the simplex.
  const DensityOperator pure(diag({1, 0}));
  const ProbVector base = outcome_probabilities(pure, povm);
  const ProbVector mixed =
      outcome_probabilities(DensityOperator(diag({0.5, 0.5})), povm);
  // Move away from the mixed point, past the pure state. The reconstructed
  // operator becomes diag(1 + step/2, -step/2), so any step well above the
  // 1e-8 physicality threshold works; keep it small enough that every
  // pushed probability stays nonnegative.
  std::vector<double> pushed(base.size());
  const double step = 1e-4;
  for (std::size_t i = 0; i < pushed.size(); ++i) {
    pushed[i] = (1.0 + step) * base.raw()[i] - step * mixed.raw()[i];
  }
  bool valid_simplex = true;
  double sum = 0.0;
  for (double v : pushed) {
    if (v < -1e-12) valid_simplex = false;
    sum += v;
  }
  REQUIRE(valid_simplex);
  REQUIRE(std::abs(sum - 1.0) <= 1e-10);
  const ReconstructedOperator a = reconstruct_operator(ProbVector(pushed), povm);
  CHECK(a.matrix.hermiticity_defect() <= 1e-9);
  CHECK(std::abs(a.matrix.trace() - cxd{1.0, 0.0}) <= 1e-9);
  CHECK_FALSE(a.is_physical);
  CHECK(min_eigenvalue(a.matrix) < -1e-8);
}

TEST_CASE("reconstruction rejects unsuitable POVMs") {
  Povm vn;
  vn.dim = 2;
  vn.elements = {diag({1, 0}), diag({0, 1})};
  CHECK_THROWS_AS(reconstruct_operator(ProbVector({0.5, 0.5}), vn), OvercompletenessError);

  const Povm povm = build_min_ic_povm(2);
  CHECK_THROWS_AS(reconstruct_operator(ProbVector({0.5, 0.5}), povm), DimensionError);
}

TEST_CASE("informational completeness separates distinct states") {
  Rng rng(203);
  const Povm povm = build_min_ic_povm(2);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityOperator r1(random_density_matrix(2, rng));
    const DensityOperator r2(random_density_matrix(2, rng));
    if (frobenius_diff(r1.matrix(), r2.matrix()) <= 1e-6) continue;
    const ProbVector p1 = outcome_probabilities(r1, povm);
    const ProbVector p2 = outcome_probabilities(r2, povm);
    double max_gap = 0.0;
    for (std::size_t i = 0; i < p1.size(); ++i) {
      max_gap = std::max(max_gap, std::abs(p1.raw()[i] - p2.raw()[i]));
    }
    CHECK(max_gap > 1e-12);
  }
}

TEST_CASE("max_prob_bound closed-form values") {
  // d = 2: cot(3 pi / 8) = tan(pi / 8), so the bound is
  // 1 / (2 - (1 + tan(pi/8)) / 2).
  const double tan_pi_8 = std::tan(M_PI / 8.0);
  const double expected2 = 1.0 / (2.0 - 0.5 * (1.0 + tan_pi_8));
  CHECK(max_prob_bound(2) == doctest::Approx(expected2).epsilon(1e-14));
  CHECK(max_prob_bound(2) == doctest::Approx(0.7735).epsilon(1e-3));
  // d = 3: cot(pi/4) = 1 makes the bound exactly 1/2.
  CHECK(max_prob_bound(3) == doctest::Approx(0.5).epsilon(1e-14));
  // Large d: bound approaches (0.79 d)^{-1}.
  CHECK(max_prob_bound(200) * 0.79 * 200 == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(max_prob_bound(2) < 1.0);
  CHECK_THROWS_AS(max_prob_bound(1), DimensionError);
}

TEST_CASE("sampled outcome probabilities respect the bound") {
  for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
    const Povm povm = build_min_ic_povm(d);
    const double bound = max_prob_bound(d);
    Rng rng(204 + d);
    double max_seen = 0.0;
    // Pure states suffice: extreme points maximize linear functionals.
    for (int rep = 0; rep < 100000; ++rep) {
      const DensityOperator rho = sample_density(d, rng, StateMeasure::kPureHaar);
      const ProbVector p = outcome_probabilities(rho, povm);
      for (std::size_t a = 0; a < p.size(); ++a) {
        max_seen = std::max(max_seen, p.prob(a));
      }
    }
    CHECK(max_seen <= bound + 1e-9);
  }
}

TEST_CASE("POVM JSON round-trip preserves elements in order") {
  const Povm povm = build_min_ic_povm(3);
  const Povm back = povm_from_json(povm_to_json(povm));
  CHECK(back.dim == povm.dim);
  CHECK(back.minimal_ic == povm.minimal_ic);
  REQUIRE(back.elements.size() == povm.elements.size());
  for (std::size_t a = 0; a < back.elements.size(); ++a) {
    CHECK(max_abs_diff(back.elements[a], povm.elements[a]) == 0.0);
  }
  nlohmann::json broken = povm_to_json(povm);
  broken["elements"].erase(0);
  CHECK_THROWS_AS(povm_from_json(broken), ValidationError);
}
