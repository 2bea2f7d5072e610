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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nsc/bounds.hpp"
#include "nsc/linalg.hpp"

namespace nsc {

/// Stable hex digest of a matrix (dimensions + entry bytes); cache keys
/// are this digest plus the subset size.
std::string matrix_content_key(const DenseMatrix& m);

/// Score list serialization: header line "subset_indices;alpha", then one
/// "i j ...;alpha" line per subset in lexicographic order.
void write_scores_csv(std::ostream& out, const std::vector<SubsetScore>& scores);
std::vector<SubsetScore> read_scores_csv(std::istream& in);

/// NSC_CACHE_DIR, else $XDG_CACHE_HOME/nscert, else $HOME/.cache/nscert,
/// else ./.nscert-cache.
std::filesystem::path default_cache_dir();

/// nullopt on miss or on any stale/malformed entry (which is treated as a
/// miss, never an error).
std::optional<std::vector<SubsetScore>> load_cached_scores(
    const std::filesystem::path& dir, const DenseMatrix& H, int l);

void store_cached_scores(const std::filesystem::path& dir,
                         const DenseMatrix& H, int l,
                         const std::vector<SubsetScore>& scores);

}  // namespace nsc
