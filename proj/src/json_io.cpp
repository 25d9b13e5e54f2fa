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

#include "qbayes/json_io.hpp"

#include <fstream>

#include "qbayes/errors.hpp"

namespace qbayes {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const cxd& e : m.entries()) {
    entries.push_back(nlohmann::json::array({e.real(), e.imag()}));
  }
  return nlohmann::json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ValidationError("matrix JSON must be an object with 'dim' and 'entries'");
  }
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    throw ValidationError("matrix JSON 'dim' must be a positive integer");
  }
  const std::size_t dim = j["dim"].get<std::size_t>();
  const auto& entries = j["entries"];
  if (!entries.is_array() || entries.size() != dim * dim) {
    throw ValidationError("matrix JSON 'entries' must list dim*dim [re, im] pairs");
  }
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& pair = entries[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw ValidationError("matrix JSON entry " + std::to_string(i) +
                            " is not an [re, im] pair");
    }
    m.entries()[i] = cxd(pair[0].get<double>(), pair[1].get<double>());
  }
  return m;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open file for reading: " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot open file for writing: " + path);
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw ValidationError("write failed for: " + path);
  }
}

}  // namespace qbayes
