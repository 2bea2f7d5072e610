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
#include <span>
#include <vector>

namespace nsc {

/// C(n, k), saturating at UINT64_MAX instead of overflowing.
std::uint64_t binomial(int n, int k);

/// True iff C(n, k) > limit. Safe against overflow.
bool binomial_exceeds(int n, int k, std::uint64_t limit);

/// {0, 1, ..., l-1}, the lexicographically first l-subset.
std::vector<int> first_combination(int l);

/// Advances comb to its lexicographic successor among l-subsets of
/// {0..n-1}. Returns false when comb was already the last subset.
bool next_combination(std::vector<int>& comb, int n);

/// Rank of a sorted l-subset of {0..n-1} in lexicographic order.
std::uint64_t combination_rank(int n, std::span<const int> comb);

/// Inverse of combination_rank.
std::vector<int> combination_unrank(int n, int l, std::uint64_t rank);

/// True iff the indices are strictly increasing and within [0, n).
bool is_sorted_index_set(int n, std::span<const int> indices);

}  // namespace nsc
