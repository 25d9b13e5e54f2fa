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

#include <stdexcept>
#include <string>

namespace qbayes {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched matrix/tensor dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input violates a documented contract (non-Hermitian, bad probabilities,
// malformed serialized data, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A required strictly-positive eigenvalue fell at or below the floor.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// A Choi matrix has an eigenvalue below the complete-positivity tolerance.
class CompletePositivityError : public Error {
 public:
  using Error::Error;
};

// Reconstruction asked for on a POVM whose linear system is not square.
class OvercompletenessError : public Error {
 public:
  using Error::Error;
};

// A requested table or operator exceeds the configured size limits.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// Every particle was assigned zero likelihood; the prior excludes the data.
class DegeneratePosteriorError : public Error {
 public:
  using Error::Error;
};

// A prior places no weight near the ground truth.
class PriorSupportError : public Error {
 public:
  using Error::Error;
};

// Witness extraction requested for an operator with no negative eigenvalue.
class NoWitnessError : public Error {
 public:
  using Error::Error;
};

// Stinespring dilation requested for a map whose Kraus stack is not an isometry.
class IsometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbayes
