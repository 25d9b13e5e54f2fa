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

#include "qbayes/simplex.hpp"

#include <cmath>
#include <limits>

#include "qbayes/errors.hpp"

namespace qbayes {

LpFeasibility solve_equality_feasibility(const std::vector<std::vector<double>>& a,
                                         const std::vector<double>& b, double tol) {
  const std::size_t m = a.size();
  if (b.size() != m) {
    throw DimensionError("feasibility solve needs one right-hand side per constraint row");
  }
  const std::size_t n = m == 0 ? 0 : a[0].size();
  for (const auto& row : a) {
    if (row.size() != n) {
      throw DimensionError("feasibility solve needs rectangular constraint data");
    }
  }

  // Tableau over [real variables | artificial variables | rhs], with one
  // artificial per row forming the starting basis.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
    t[i][n + i] = 1.0;
    t[i][cols - 1] = sign * b[i];
  }

  // Cost row for minimizing the sum of artificials, already reduced against
  // the artificial basis: r_j = c_j - sum_i t[i][j].
  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double col_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) col_sum += t[i][j];
    cost[j] = -col_sum;
  }

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  const double pivot_tol = 1e-11;
  const std::size_t max_iterations = 10000 * (m + n + 1);
  for (std::size_t iteration = 0;; ++iteration) {
    if (iteration > max_iterations) {
      throw ResourceLimitError("feasibility solve exceeded its pivot budget");
    }
    // Bland's rule: smallest-index column with a negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (cost[j] < -pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;  // optimal

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > pivot_tol) {
        const double ratio = t[i][cols - 1] / t[i][enter];
        if (ratio < best_ratio - pivot_tol ||
            (std::abs(ratio - best_ratio) <= pivot_tol &&
             (leave == m || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) {
      // The phase-one objective is bounded below by zero, so an unbounded
      // ray cannot occur; reaching this means numerical breakdown.
      throw SingularityError("feasibility solve lost boundedness; input badly scaled");
    }

    const double pivot = t[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double factor = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    const double cost_factor = cost[enter];
    if (cost_factor != 0.0) {
      for (std::size_t j = 0; j < cols; ++j) cost[j] -= cost_factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  double residual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) residual += t[i][cols - 1];
  }

  LpFeasibility out;
  if (residual <= tol) {
    out.feasible = true;
    out.solution.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) {
        out.solution[basis[i]] = std::max(0.0, t[i][cols - 1]);
      }
    }
  } else {
    out.feasible = false;
    // Dual certificate from the final reduced costs of the artificials:
    // y_i = 1 - r_{n+i} satisfies y.b = objective > 0 and y^T A <= 0.
    out.certificate.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double y = 1.0 - cost[n + i];
      out.certificate[i] = b[i] < 0.0 ? -y : y;
    }
  }
  return out;
}

}  // namespace qbayes
