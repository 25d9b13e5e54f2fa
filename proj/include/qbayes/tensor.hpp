// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include "qbayes/matrix.hpp"

// Multi-index convention used throughout: factor 0 is the most significant
// digit. A basis index i of a matrix on d_0 x d_1 x ... decomposes as
// i = ((i_0 * d_1 + i_1) * d_2 + i_2) * ...

namespace qbayes {

struct SystemShape {
  std::vector<std::size_t> local_dims;

  static SystemShape uniform(std::size_t num_systems, std::size_t local_dim);

  std::size_t num_systems() const { return local_dims.size(); }
  std::size_t total_dim() const;
  bool uniform_dims() const;

  // Throws DimensionError unless total_dim() == m.dim().
  void require_matches(const ComplexMatrix& m) const;

  std::vector<std::size_t> decompose(std::size_t index) const;
  std::size_t compose(const std::vector<std::size_t>& digits) const;
};

// A permutation of tensor factors. map[t] is the source slot feeding output
// slot t, i.e. applying the spec sends digit vector i to (i[map[0]], i[map[1]], ...).
struct PermutationSpec {
  std::vector<std::size_t> map;

  static PermutationSpec identity(std::size_t n);
  static PermutationSpec transposition(std::size_t n, std::size_t a, std::size_t b);

  std::size_t size() const { return map.size(); }
  bool is_bijection() const;
  PermutationSpec inverse() const;
  // Permutation equal to applying `first`, then this one: result.map[t] = map[first.map[t]].
  PermutationSpec after(const PermutationSpec& first) const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);

// Marginal over the factors *not* listed in keep (ascending, deduplicated
// internally). Keeping every factor copies the input; keep must be nonempty.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemShape& shape,
                            const std::vector<std::size_t>& keep);

// Relabels tensor factors. Output entry at digit vector i equals the input
// entry at (i[pi[0]], i[pi[1]], ...), applied to rows and columns alike; pure
// entry relocation, so round-tripping through the inverse is bitwise exact.
// Requires uniform local dimensions.
ComplexMatrix permute_systems(const ComplexMatrix& m, const SystemShape& shape,
                              const PermutationSpec& pi);

// Unitary P with P m P† == permute_systems(m, shape, pi).
ComplexMatrix permutation_matrix(const SystemShape& shape, const PermutationSpec& pi);

}  // namespace qbayes
