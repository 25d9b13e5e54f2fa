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
#include <vector>

namespace qbayes {

// Outcome of an exact feasibility solve for A x = b, x >= 0.
struct LpFeasibility {
  bool feasible = false;
  // When feasible: an x with A x = b, x >= 0 (a basic solution).
  std::vector<double> solution;
  // When infeasible: a separating vector y with y.b > 0 and (y^T A)_j <= tol
  // for every column j, certifying that no nonnegative solution exists.
  std::vector<double> certificate;
};

// Phase-one simplex with Bland's anti-cycling rule. `a` is row-major with
// m rows (constraints) and n columns (variables); `b` must have m entries.
// Rows with negative right-hand side are negated internally. Feasibility is
// decided at the given tolerance on the artificial objective.
LpFeasibility solve_equality_feasibility(const std::vector<std::vector<double>>& a,
                                         const std::vector<double>& b, double tol = 1e-9);

}  // namespace qbayes
