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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nsc/bounds.hpp"
#include "nsc/linalg.hpp"
#include "nsc/solve_options.hpp"

namespace nsc {

struct CheapBoundEntry {
  std::vector<int> K;  // sorted, |K| = k
  double cub = 0.0;
};

/// Live state of a sandwiching run. glb never decreases, gub never
/// increases, and glb <= gub (+ float slack) at every step.
struct SandwichState {
  double gub = 0.0;
  double glb = 0.0;
  std::uint64_t step = 0;
  std::optional<std::vector<int>> best_set;
};

/// One row per examined support. Skipped gates leave the optional fields
/// empty; a run that exhausts the list appends a terminal row with no K.
struct SandwichTraceRow {
  std::uint64_t step = 0;
  std::vector<int> K;
  std::optional<double> cub;
  std::optional<double> lpub;
  std::optional<double> exact_alpha;
  double gub = 0.0;
  double glb = 0.0;
};

struct SandwichTrace {
  std::vector<SandwichTraceRow> rows;
};

struct VerificationReport {
  int n = 0;
  int m = 0;
  int k = 0;
  double rho = 0.0;     // (n - m) / n
  double alpha_k = 0.0; // exact value or bound, per method
  std::string method;   // "Exact", "Exhaustive", or a bound method name
  std::uint64_t steps_examined = 0;
  std::optional<int> max_certified_k;
  double wall_seconds = 0.0;
};

/// Exact alpha_{k,K} on a fixed support. Same subset program as
/// beta_subset with |L| = k; kept as its own entry point so traces name
/// the exact solves explicitly.
AlphaValue alpha_exact_on_set(const DenseMatrix& H, std::span<const int> K,
                              double feas_tol = kDefaultFeasTol,
                              unsigned threads = 1);

/// Cheap upper bound on alpha_{k,K}:
/// (1 / C(k-1,l-1)) * sum of alpha_{l,L} over all l-subsets L of K.
/// scores must be the complete lexicographic list for subset size l.
double cheap_upper_bound(const std::vector<SubsetScore>& scores, int n,
                         std::span<const int> K, int l);

/// LP-based upper bound on alpha_{k,K}: maximize sum of z_t over t in K,
/// z >= 0, subject to sum_{t in L} z_t <= alpha_{l,L} for every l-subset
/// L of K. Never larger than the cheap bound.
double lp_upper_bound(const std::vector<SubsetScore>& scores, int n,
                      std::span<const int> K, int l,
                      double feas_tol = kDefaultFeasTol);

using TraceSink = std::function<void(const SandwichTraceRow&)>;

struct SandwichResult {
  AlphaValue alpha;
  std::optional<std::vector<int>> best_set;
  SandwichTrace trace;
  VerificationReport report;
};

/// Exact alpha_k by sandwiching: rank all k-supports by cheap upper bound
/// descending (lexicographic tie-break), then walk the list keeping a
/// global lower bound from exact evaluations. The per-support LP bound
/// gates each exact solve; the walk stops as soon as the next cheap bound
/// cannot beat the lower bound. Bounds are compared with opts.cmp_tol so
/// exact ties terminate instead of forcing useless solves.
///
/// Every visited support appends a trace row, pushed to sink (when given)
/// as soon as the row is complete, so a failing run still leaves the trace
/// written up to the failure point. The final row always has gub == glb.
///
/// precomputed_scores, when non-null, must be the complete lexicographic
/// score list for subset size l and skips the internal scoring pass.
SandwichResult sandwich(const DenseMatrix& H, int k, int l,
                        const SolveOptions& opts = {},
                        const TraceSink& sink = {},
                        const std::vector<SubsetScore>* precomputed_scores =
                            nullptr);

enum class VerifyMode { Exact, Pick1, PickL, PickLOptimized };

const char* verify_mode_name(VerifyMode m);

/// alpha_k (exact or bound, per mode) for k = 1..k_max, one report per k.
/// Subset size min(l, k) is used at each k and score passes are shared
/// across k. Each report carries the running max certified k; the last
/// report's value is the overall answer.
///
/// With early_stop, the sweep ends after the first k whose exact value
/// reaches 1/2 (alpha_k is nondecreasing in k) or, in bound modes, whose
/// bound reaches 1.
///
/// score_provider, when set, replaces the internal score pass (callers
/// can plug a disk cache in); it must return the complete lexicographic
/// list for the requested subset size.
using ScoreProvider = std::function<std::vector<SubsetScore>(int l)>;

std::vector<VerificationReport> find_max_certified_k(
    const DenseMatrix& H, int k_max, int l, VerifyMode mode,
    const SolveOptions& opts = {}, bool early_stop = false,
    const ScoreProvider& score_provider = {});

}  // namespace nsc
