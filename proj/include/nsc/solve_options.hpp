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

namespace nsc {

/// Tolerances and capacity limits shared by the subset, bound, and
/// verification routines.
struct SolveOptions {
  double feas_tol = 1e-9;   // LP feasibility/optimality tolerance
  double cmp_tol = 1e-9;    // GLB vs CUB/LPUB comparison tolerance
  std::uint64_t subset_limit = 10'000'000;  // materialized subsets/constraints
  std::uint64_t oracle_limit = 100'000;     // exhaustive-search subsets
  unsigned threads = 0;                     // 0 = all hardware threads
};

}  // namespace nsc
