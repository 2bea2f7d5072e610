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
#include <vector>

#include "nsc/bounds.hpp"
#include "nsc/linalg.hpp"
#include "nsc/solve_options.hpp"

namespace nsc {

struct OracleResult {
  AlphaValue alpha;
  std::vector<int> best_set;  // lexicographically smallest argmax
  std::uint64_t subsets_examined = 0;
};

/// Ground truth for small instances: evaluates alpha_{k,K} on every
/// k-subset and returns the maximum. Deliberately bypasses all bound and
/// pruning machinery. Throws CapacityError when C(n,k) exceeds
/// opts.oracle_limit.
OracleResult exhaustive_alpha(const DenseMatrix& H, int k,
                              const SolveOptions& opts = {});

}  // namespace nsc
