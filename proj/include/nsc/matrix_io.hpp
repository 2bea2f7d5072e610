// Copyright 2026 The nscert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "nsc/linalg.hpp"

namespace nsc {

/// Sidecar metadata stored next to a matrix CSV as <stem>.meta.json.
struct MatrixMeta {
  std::string kind;  // "A" (sensing) or "H" (null-space basis)
  int rows = 0;
  int cols = 0;
  std::optional<std::string> ensemble;
  std::optional<std::int64_t> seed;
};

/// Plain-text CSV, one row per line, decimal floats, no header.
/// Values are written with enough digits to round-trip exactly.
DenseMatrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m);

std::filesystem::path meta_path_for(const std::filesystem::path& csv_path);

/// nullopt when the sidecar does not exist; throws on a malformed one.
std::optional<MatrixMeta> read_matrix_meta(
    const std::filesystem::path& csv_path);
void write_matrix_meta(const std::filesystem::path& csv_path,
                       const MatrixMeta& meta);

/// Shortest decimal form of d that parses back to the same double.
std::string format_double(double d);

}  // namespace nsc
