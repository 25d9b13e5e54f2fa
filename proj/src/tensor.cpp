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

#include "qbayes/tensor.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "qbayes/errors.hpp"

namespace qbayes {

SystemShape SystemShape::uniform(std::size_t num_systems, std::size_t local_dim) {
  return SystemShape{std::vector<std::size_t>(num_systems, local_dim)};
}

std::size_t SystemShape::total_dim() const {
  std::size_t total = 1;
  for (std::size_t d : local_dims) {
    if (d == 0) throw DimensionError("system shape with zero local dimension");
    if (total > std::numeric_limits<std::size_t>::max() / d)
      throw ResourceLimitError("system shape total dimension overflows");
    total *= d;
  }
  return total;
}

bool SystemShape::uniform_dims() const {
  for (std::size_t d : local_dims)
    if (d != local_dims.front()) return false;
  return true;
}

void SystemShape::require_matches(const ComplexMatrix& m) const {
  if (total_dim() != m.dim()) {
    throw DimensionError("system shape total dim " + std::to_string(total_dim()) +
                         " does not match matrix dim " + std::to_string(m.dim()));
  }
}

std::vector<std::size_t> SystemShape::decompose(std::size_t index) const {
  std::vector<std::size_t> digits(local_dims.size());
  for (std::size_t t = local_dims.size(); t-- > 0;) {
    digits[t] = index % local_dims[t];
    index /= local_dims[t];
  }
  return digits;
}

std::size_t SystemShape::compose(const std::vector<std::size_t>& digits) const {
  if (digits.size() != local_dims.size())
    throw DimensionError("digit count does not match system count");
  std::size_t index = 0;
  for (std::size_t t = 0; t < digits.size(); ++t) index = index * local_dims[t] + digits[t];
  return index;
}

PermutationSpec PermutationSpec::identity(std::size_t n) {
  PermutationSpec p;
  p.map.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.map[i] = i;
  return p;
}

PermutationSpec PermutationSpec::transposition(std::size_t n, std::size_t a, std::size_t b) {
  if (a >= n || b >= n) throw DimensionError("transposition slot out of range");
  PermutationSpec p = identity(n);
  std::swap(p.map[a], p.map[b]);
  return p;
}

bool PermutationSpec::is_bijection() const {
  std::vector<bool> seen(map.size(), false);
  for (std::size_t s : map) {
    if (s >= map.size() || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

PermutationSpec PermutationSpec::inverse() const {
  PermutationSpec p;
  p.map.resize(map.size());
  for (std::size_t t = 0; t < map.size(); ++t) p.map[map[t]] = t;
  return p;
}

PermutationSpec PermutationSpec::after(const PermutationSpec& first) const {
  if (first.size() != size()) throw DimensionError("composing permutations of different sizes");
  PermutationSpec p;
  p.map.resize(size());
  for (std::size_t t = 0; t < size(); ++t) p.map[t] = map[first.map[t]];
  return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t ra = 0; ra < na; ++ra)
    for (std::size_t ca = 0; ca < na; ++ca) {
      const cxd f = a.at(ra, ca);
      if (f == cxd{0.0, 0.0}) continue;
      for (std::size_t rb = 0; rb < nb; ++rb)
        for (std::size_t cb = 0; cb < nb; ++cb)
          out.at(ra * nb + rb, ca * nb + cb) = f * b.at(rb, cb);
    }
  return out;
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) throw DimensionError("kron_all on empty factor list");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemShape& shape,
                            const std::vector<std::size_t>& keep) {
  shape.require_matches(m);
  const std::size_t n = shape.num_systems();
  std::vector<std::size_t> kept(keep);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) throw DimensionError("partial_trace must keep at least one factor");
  for (std::size_t t : kept)
    if (t >= n) throw DimensionError("partial_trace keep index out of range");

  std::vector<std::size_t> traced;
  for (std::size_t t = 0; t < n; ++t)
    if (!std::binary_search(kept.begin(), kept.end(), t)) traced.push_back(t);

  SystemShape kept_shape, traced_shape;
  for (std::size_t t : kept) kept_shape.local_dims.push_back(shape.local_dims[t]);
  for (std::size_t t : traced) traced_shape.local_dims.push_back(shape.local_dims[t]);

  const std::size_t dim_out = kept_shape.total_dim();
  const std::size_t dim_tr = traced_shape.total_dim();
  ComplexMatrix out(dim_out);

  std::vector<std::size_t> digits(n);
  for (std::size_t r = 0; r < dim_out; ++r) {
    const std::vector<std::size_t> rk = kept_shape.decompose(r);
    for (std::size_t c = 0; c < dim_out; ++c) {
      const std::vector<std::size_t> ck = kept_shape.decompose(c);
      cxd sum = 0.0;
      for (std::size_t s = 0; s < dim_tr; ++s) {
        const std::vector<std::size_t> st = traced_shape.decompose(s);
        for (std::size_t i = 0; i < kept.size(); ++i) digits[kept[i]] = rk[i];
        for (std::size_t i = 0; i < traced.size(); ++i) digits[traced[i]] = st[i];
        const std::size_t row = shape.compose(digits);
        for (std::size_t i = 0; i < kept.size(); ++i) digits[kept[i]] = ck[i];
        const std::size_t col = shape.compose(digits);
        sum += m.at(row, col);
      }
      out.at(r, c) = sum;
    }
  }
  return out;
}

ComplexMatrix permute_systems(const ComplexMatrix& m, const SystemShape& shape,
                              const PermutationSpec& pi) {
  shape.require_matches(m);
  if (!shape.uniform_dims())
    throw DimensionError("permute_systems requires uniform local dimensions");
  if (pi.size() != shape.num_systems() || !pi.is_bijection())
    throw DimensionError("permutation does not match system count");

  const std::size_t dim = m.dim();
  // Precompute the row/column relabeling f: out index -> in index.
  std::vector<std::size_t> f(dim);
  std::vector<std::size_t> src(shape.num_systems());
  for (std::size_t i = 0; i < dim; ++i) {
    const std::vector<std::size_t> digits = shape.decompose(i);
    for (std::size_t t = 0; t < src.size(); ++t) src[t] = digits[pi.map[t]];
    f[i] = shape.compose(src);
  }
  ComplexMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) out.at(r, c) = m.at(f[r], f[c]);
  return out;
}

ComplexMatrix permutation_matrix(const SystemShape& shape, const PermutationSpec& pi) {
  if (!shape.uniform_dims())
    throw DimensionError("permutation_matrix requires uniform local dimensions");
  if (pi.size() != shape.num_systems() || !pi.is_bijection())
    throw DimensionError("permutation does not match system count");
  const std::size_t dim = shape.total_dim();
  ComplexMatrix p(dim);
  std::vector<std::size_t> src(shape.num_systems());
  for (std::size_t i = 0; i < dim; ++i) {
    const std::vector<std::size_t> digits = shape.decompose(i);
    for (std::size_t t = 0; t < src.size(); ++t) src[t] = digits[pi.map[t]];
    p.at(i, shape.compose(src)) = 1.0;
  }
  return p;
}

}  // namespace qbayes
