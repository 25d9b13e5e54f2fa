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

#include "qbayes/states.hpp"

#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include "qbayes/eig.hpp"
#include "qbayes/errors.hpp"
#include "qbayes/json_io.hpp"

namespace qbayes {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

ComplexMatrix random_complex_gaussian(std::size_t d, Rng& rng) {
  ComplexMatrix g(d);
  for (cxd& e : g.entries()) e = rng.gauss_complex();
  return g;
}

ComplexMatrix normalized_to_unit_trace(const ComplexMatrix& m) {
  const double tr = m.trace().real();
  if (!(tr > 0.0)) {
    throw SingularityError("cannot normalize matrix with trace " + fmt_double(tr));
  }
  ComplexMatrix out = m;
  out *= cxd{1.0 / tr, 0.0};
  return out;
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {
  const double herm = matrix_.hermiticity_defect();
  if (herm > kDensityTol) {
    throw ValidationError("density operator is not Hermitian (defect " + fmt_double(herm) + ")");
  }
  const double tr_err = std::abs(matrix_.trace() - cxd{1.0, 0.0});
  if (tr_err > kDensityTol) {
    throw ValidationError("density operator trace differs from 1 by " + fmt_double(tr_err));
  }
  const double min_eig = min_eigenvalue(matrix_);
  if (min_eig < -kDensityTol) {
    throw ValidationError("density operator has negative eigenvalue " + fmt_double(min_eig));
  }
}

double BlochVector::norm() const {
  return std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
}

void QubitEnsemble::validate() const {
  if (weights.size() != directions.size() || weights.empty()) {
    throw ValidationError("ensemble needs matching, nonempty weights and directions");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) {
      throw ValidationError("ensemble weight is negative: " + fmt_double(w));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("ensemble weights sum to " + fmt_double(sum) + ", not 1");
  }
  for (const auto& n : directions) {
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(len - 1.0) > 1e-12) {
      throw ValidationError("ensemble direction has norm " + fmt_double(len) + ", not 1");
    }
  }
}

ComplexMatrix pauli(int k) {
  ComplexMatrix m(2);
  switch (k) {
    case 1:
      m.at(0, 1) = 1.0;
      m.at(1, 0) = 1.0;
      break;
    case 2:
      m.at(0, 1) = cxd{0.0, -1.0};
      m.at(1, 0) = cxd{0.0, 1.0};
      break;
    case 3:
      m.at(0, 0) = 1.0;
      m.at(1, 1) = -1.0;
      break;
    default:
      throw ValidationError("pauli index must be 1, 2, or 3");
  }
  return m;
}

DensityOperator bloch_to_rho(const BlochVector& s) {
  if (s.norm() > 1.0 + 1e-12) {
    throw ValidationError("Bloch vector norm " + fmt_double(s.norm()) + " exceeds 1");
  }
  ComplexMatrix rho = ComplexMatrix::identity(2);
  for (int k = 1; k <= 3; ++k) {
    ComplexMatrix term = pauli(k);
    term *= cxd{s.s[static_cast<std::size_t>(k - 1)], 0.0};
    rho += term;
  }
  rho *= cxd{0.5, 0.0};
  return DensityOperator(rho);
}

BlochVector rho_to_bloch(const DensityOperator& rho) {
  if (rho.dim() != 2) {
    throw DimensionError("Bloch coordinates are defined for dimension 2, got " +
                         std::to_string(rho.dim()));
  }
  BlochVector s;
  for (int k = 1; k <= 3; ++k) {
    s.s[static_cast<std::size_t>(k - 1)] = trace_of_product(rho.matrix(), pauli(k)).real();
  }
  return s;
}

DensityOperator ensemble_to_rho(const QubitEnsemble& e) {
  e.validate();
  ComplexMatrix rho(2);
  for (std::size_t j = 0; j < e.weights.size(); ++j) {
    BlochVector n;
    n.s = e.directions[j];
    ComplexMatrix pure = bloch_to_rho(n).matrix();
    pure *= cxd{e.weights[j], 0.0};
    rho += pure;
  }
  return DensityOperator(rho);
}

StateMeasure parse_state_measure(const std::string& name) {
  if (name == "hilbert-schmidt") return StateMeasure::kHilbertSchmidt;
  if (name == "bures-like") return StateMeasure::kBuresLike;
  if (name == "pure-haar") return StateMeasure::kPureHaar;
  throw ValidationError("unknown state measure: " + name);
}

std::string state_measure_name(StateMeasure measure) {
  switch (measure) {
    case StateMeasure::kHilbertSchmidt:
      return "hilbert-schmidt";
    case StateMeasure::kBuresLike:
      return "bures-like";
    case StateMeasure::kPureHaar:
      return "pure-haar";
  }
  throw ValidationError("unknown state measure enum value");
}

DensityOperator sample_density(std::size_t d, Rng& rng, StateMeasure measure) {
  if (d < 2) {
    throw DimensionError("state dimension must be at least 2, got " + std::to_string(d));
  }
  switch (measure) {
    case StateMeasure::kHilbertSchmidt: {
      const ComplexMatrix g = random_complex_gaussian(d, rng);
      return DensityOperator(normalized_to_unit_trace(g * g.adjoint()));
    }
    case StateMeasure::kBuresLike: {
      const ComplexMatrix g = random_complex_gaussian(d, rng);
      ComplexMatrix mixer = ComplexMatrix::identity(d);
      mixer += haar_unitary(d, rng);
      const ComplexMatrix core = mixer * g;
      return DensityOperator(normalized_to_unit_trace(core * core.adjoint()));
    }
    case StateMeasure::kPureHaar: {
      std::vector<cxd> v(d);
      double norm_sq = 0.0;
      for (cxd& e : v) {
        e = rng.gauss_complex();
        norm_sq += std::norm(e);
      }
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (cxd& e : v) e *= inv;
      return DensityOperator(outer(v));
    }
  }
  throw ValidationError("unknown state measure enum value");
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  const ComplexMatrix g = random_complex_gaussian(d, rng);
  using EMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic>;
  EMat eg(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) eg(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = g.at(r, c);
  }
  const Eigen::HouseholderQR<EMat> qr(eg);
  EMat q = qr.householderQ();
  const EMat r = qr.matrixQR().template triangularView<Eigen::Upper>();
  // Fix the phase freedom so the sample depends only on the Gaussian input.
  for (std::size_t c = 0; c < d; ++c) {
    const cxd diag = r(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
    const double mag = std::abs(diag);
    const cxd phase = mag > 0.0 ? diag / mag : cxd{1.0, 0.0};
    q.col(static_cast<Eigen::Index>(c)) *= phase;
  }
  ComplexMatrix u(d);
  for (std::size_t rr = 0; rr < d; ++rr) {
    for (std::size_t c = 0; c < d; ++c) u.at(rr, c) = q(static_cast<Eigen::Index>(rr), static_cast<Eigen::Index>(c));
  }
  return u;
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  return trace_distance_herm(a.matrix(), b.matrix());
}

nlohmann::json density_to_json(const DensityOperator& rho) {
  return matrix_to_json(rho.matrix());
}

DensityOperator density_from_json(const nlohmann::json& j) {
  return DensityOperator(matrix_from_json(j));
}

nlohmann::json ensemble_to_json(const QubitEnsemble& e) {
  e.validate();
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto& n : e.directions) {
    dirs.push_back(nlohmann::json::array({n[0], n[1], n[2]}));
  }
  return nlohmann::json{{"weights", e.weights}, {"directions", std::move(dirs)}};
}

QubitEnsemble ensemble_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("weights") || !j.contains("directions")) {
    throw ValidationError("ensemble JSON must contain 'weights' and 'directions'");
  }
  QubitEnsemble e;
  for (const auto& w : j["weights"]) {
    if (!w.is_number()) throw ValidationError("ensemble weight is not a number");
    e.weights.push_back(w.get<double>());
  }
  for (const auto& dir : j["directions"]) {
    if (!dir.is_array() || dir.size() != 3) {
      throw ValidationError("ensemble direction is not a 3-vector");
    }
    e.directions.push_back({dir[0].get<double>(), dir[1].get<double>(), dir[2].get<double>()});
  }
  e.validate();
  return e;
}

}  // namespace qbayes
