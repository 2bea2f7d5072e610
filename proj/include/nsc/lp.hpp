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

#include "nsc/linalg.hpp"

namespace nsc {

constexpr double kDefaultFeasTol = 1e-9;

/// maximize objective . v  subject to  constraint_matrix * v <= rhs,
/// v_j >= 0 where nonneg[j] != 0, v_j free otherwise.
struct LpProblem {
  Vector objective;
  DenseMatrix constraint_matrix;
  Vector rhs;
  std::vector<std::uint8_t> nonneg;
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;  // meaningful only when Optimal
  Vector point;        // meaningful only when Optimal
};

/// Two-phase dense tableau simplex. Free variables are split into positive
/// and negative parts. Pivoting uses Dantzig's rule with lowest-index tie
/// breaks and falls back to Bland's rule after a run of degenerate pivots,
/// so every solve is deterministic and cannot cycle.
///
/// Throws NumericalBreakdown if pivoting exceeds 50*(vars+constraints)
/// iterations in a phase, or if the final point fails the feasibility
/// re-check; a wrong answer is never returned silently.
LpOutcome solve_lp(const LpProblem& p, double feas_tol = kDefaultFeasTol);

}  // namespace nsc
