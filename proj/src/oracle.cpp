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

#include "nsc/oracle.hpp"

#include <mutex>
#include <string>
#include <vector>

#include "nsc/combinatorics.hpp"
#include "nsc/errors.hpp"
#include "nsc/parallel.hpp"
#include "nsc/sandwich.hpp"

namespace nsc {

OracleResult exhaustive_alpha(const DenseMatrix& H, int k,
                              const SolveOptions& opts) {
  const int n = static_cast<int>(H.rows());
  if (k < 1 || k >= n) throw ArgumentError("exhaustive_alpha: need 1 <= k < n");
  if (binomial_exceeds(n, k, opts.oracle_limit))
    throw CapacityError("exhaustive_alpha: C(" + std::to_string(n) + "," +
                        std::to_string(k) + ") exceeds the oracle limit");
  const std::uint64_t total = binomial(n, k);

  struct Best {
    AlphaValue alpha;
    std::uint64_t rank = 0;
    bool set = false;
  };
  // Strictly better alpha wins; equal alphas keep the smaller rank, so the
  // result does not depend on how the work was partitioned.
  auto better = [](const Best& cand, const Best& cur) {
    if (!cand.set) return false;
    if (!cur.set) return true;
    if (cand.alpha.alpha != cur.alpha.alpha)
      return cand.alpha.alpha > cur.alpha.alpha;
    return cand.rank < cur.rank;
  };

  Best best;
  std::mutex merge_mutex;
  parallel_for_blocks(total, opts.threads, [&](std::size_t b, std::size_t e) {
    Best local;
    std::vector<int> K = combination_unrank(n, k, b);
    for (std::size_t r = b; r < e; ++r) {
      const AlphaValue a = alpha_exact_on_set(H, K, opts.feas_tol, 1);
      Best cand{a, r, true};
      if (better(cand, local)) local = cand;
      next_combination(K, n);
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    if (better(local, best)) best = local;
  });
  if (!best.set)
    throw NumericalBreakdown("exhaustive_alpha: no subsets examined");

  OracleResult res;
  res.alpha = best.alpha;
  res.best_set = combination_unrank(n, k, best.rank);
  res.subsets_examined = total;
  return res;
}

}  // namespace nsc
