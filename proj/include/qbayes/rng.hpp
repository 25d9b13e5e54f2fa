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

#include <cstdint>
#include <random>
#include <vector>

#include "qbayes/matrix.hpp"

namespace qbayes {

// Deterministic random stream. All mappings from raw engine output to doubles
// are spelled out here (no std::*_distribution), so identical seeds produce
// bitwise-identical samples on any conforming platform. Streams are
// caller-owned: parallel work must derive independent substreams via split().
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller; caches the second variate.
  double gauss();

  // re and im independent standard normals.
  cxd gauss_complex();

  // Inverse-CDF sample from nonnegative weights (need not be normalized).
  std::size_t discrete(const std::vector<double>& weights);

  // Independent substream keyed by `stream`; stable across unrelated draws
  // from this object.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qbayes
