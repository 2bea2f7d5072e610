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

#include <span>
#include <string>
#include <vector>

#include "nsc/linalg.hpp"
#include "nsc/lp.hpp"
#include "nsc/solve_options.hpp"

namespace nsc {

/// alpha = beta / (1 + beta) for the optimum beta of a subset program.
/// An unbounded beta is recorded as alpha = 1 exactly.
struct AlphaValue {
  double alpha = 0.0;
  bool beta_unbounded = false;

  static AlphaValue from_beta(double beta);
  static AlphaValue unbounded();
};

struct SubsetScore {
  std::vector<int> indices;  // sorted subset L of {0..n-1}
  AlphaValue score;          // exact alpha_{l,L}
};

enum class BoundMethod { Pick1, PickL, PickLOptimized };

const char* bound_method_name(BoundMethod m);

/// Upper bound on alpha_k. Raw sums are reported as-is and may exceed 1;
/// certification simply fails in that case.
struct BoundReport {
  int k = 0;
  int l = 0;
  BoundMethod method = BoundMethod::Pick1;
  double bound = 0.0;
  bool nsc_certified = false;  // bound < 1/2
};

/// Exact alpha_{l,L}: the maximum of |(Hx)_L|_1 subject to
/// |(Hx)_{complement}|_1 <= 1, taken over x in R^m. The l1 objective is
/// split into 2^(l-1) sign-pattern LPs (the leading sign is fixed to +1,
/// remaining signs run through binary counting order); any unbounded
/// pattern makes the score alpha = 1.
///
/// threads > 1 solves the sign patterns in parallel.
AlphaValue beta_subset(const DenseMatrix& H, std::span<const int> L,
                       double feas_tol = kDefaultFeasTol, unsigned threads = 1);

/// One SubsetScore per l-subset of {0..n-1}, in lexicographic order.
/// Throws CapacityError when C(n,l) exceeds opts.subset_limit.
std::vector<SubsetScore> score_all_subsets(const DenseMatrix& H, int l,
                                           const SolveOptions& opts = {});

/// Sum of the k largest l=1 scores (descending order, lexicographic
/// tie-break).
BoundReport pick_one_bound(const std::vector<SubsetScore>& scores, int k);

/// (1 / C(k-1,l-1)) * sum of the C(k,l) largest scores. Reduces to
/// pick_one_bound when l = 1.
BoundReport pick_l_bound(const std::vector<SubsetScore>& scores, int k, int l);

/// Optimized-coefficients bound: maximize sum gamma_i * alpha_i over
/// gamma >= 0 with sum gamma <= k/l and, for every b in {1..l} and every
/// b-subset I, sum over {i : I subset of L_i} of gamma_i bounded by
/// C(k-b,l-b)/C(k-1,l-1). Never looser than pick_l_bound.
BoundReport pick_l_optimized_bound(const std::vector<SubsetScore>& scores,
                                   int k, int l, int n,
                                   const SolveOptions& opts = {});

/// Indices into scores sorted by (alpha descending, subset lexicographic).
std::vector<std::size_t> sorted_score_order(
    const std::vector<SubsetScore>& scores);

/// Validates that scores is the complete lexicographic list of l-subsets
/// of {0..n-1}; throws ArgumentError otherwise. Returns n.
int checked_score_universe(const std::vector<SubsetScore>& scores, int l);

}  // namespace nsc
