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

#include <string>

#include <json.hpp>

#include "qbayes/matrix.hpp"

namespace qbayes {

// Matrix wire format: {"dim": n, "entries": [[re, im], ...]} in row-major
// order. Doubles are emitted with enough digits to round-trip exactly.
nlohmann::json matrix_to_json(const ComplexMatrix& m);

// Parses the matrix wire format; throws ValidationError on malformed input.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// File helpers. Readers throw ValidationError on missing files or parse
// failures; writers throw ValidationError when the path is not writable.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace qbayes
