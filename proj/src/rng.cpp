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

#include "qbayes/rng.hpp"

#include <cmath>
#include <numbers>

#include "qbayes/errors.hpp"

namespace qbayes {

namespace {

// splitmix64 finalizer; decorrelates derived stream seeds.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gauss() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

cxd Rng::gauss_complex() {
  const double re = gauss();
  const double im = gauss();
  return {re, im};
}

std::size_t Rng::discrete(const std::vector<double>& weights) {
  if (weights.empty()) throw ValidationError("discrete sample from empty weight list");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("discrete sample with negative weight");
    total += w;
  }
  if (total <= 0.0) throw ValidationError("discrete sample with zero total weight");
  const double target = uniform() * total;
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) last_positive = i;
    cum += weights[i];
    if (target < cum && weights[i] > 0.0) return i;
  }
  return last_positive;  // guard against accumulated rounding at the top end
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix(seed_ ^ mix(stream)));
}

}  // namespace qbayes
