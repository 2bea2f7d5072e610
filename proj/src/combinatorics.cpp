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

#include "nsc/combinatorics.hpp"

#include <limits>
#include <numeric>

#include "nsc/errors.hpp"

namespace nsc {

namespace {
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // c * num / i is exact at every step; saturate instead of overflowing.
    if (c > kSaturated / num) return kSaturated;
    c = c * num / static_cast<std::uint64_t>(i);
  }
  return c;
}

bool binomial_exceeds(int n, int k, std::uint64_t limit) {
  return binomial(n, k) > limit;
}

std::vector<int> first_combination(int l) {
  std::vector<int> comb(static_cast<std::size_t>(l));
  std::iota(comb.begin(), comb.end(), 0);
  return comb;
}

bool next_combination(std::vector<int>& comb, int n) {
  const int l = static_cast<int>(comb.size());
  int i = l - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - l + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < l; ++j)
    comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

std::uint64_t combination_rank(int n, std::span<const int> comb) {
  const int l = static_cast<int>(comb.size());
  std::uint64_t rank = 0;
  int prev = -1;
  for (int j = 0; j < l; ++j) {
    for (int v = prev + 1; v < comb[static_cast<std::size_t>(j)]; ++v)
      rank += binomial(n - 1 - v, l - 1 - j);
    prev = comb[static_cast<std::size_t>(j)];
  }
  return rank;
}

std::vector<int> combination_unrank(int n, int l, std::uint64_t rank) {
  if (rank >= binomial(n, l))
    throw ArgumentError("combination rank out of range");
  std::vector<int> comb;
  comb.reserve(static_cast<std::size_t>(l));
  int v = 0;
  for (int j = 0; j < l; ++j) {
    for (;; ++v) {
      const std::uint64_t block = binomial(n - 1 - v, l - 1 - j);
      if (rank < block) break;
      rank -= block;
    }
    comb.push_back(v);
    ++v;
  }
  return comb;
}

bool is_sorted_index_set(int n, std::span<const int> indices) {
  int prev = -1;
  for (int idx : indices) {
    if (idx <= prev || idx >= n) return false;
    prev = idx;
  }
  return true;
}

}  // namespace nsc
