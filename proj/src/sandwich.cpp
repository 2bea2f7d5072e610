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

#include "nsc/sandwich.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "nsc/combinatorics.hpp"
#include "nsc/errors.hpp"
#include "nsc/lp.hpp"
#include "nsc/parallel.hpp"

namespace nsc {

const char* verify_mode_name(VerifyMode m) {
  switch (m) {
    case VerifyMode::Exact: return "Exact";
    case VerifyMode::Pick1: return "Pick1";
    case VerifyMode::PickL: return "PickL";
    case VerifyMode::PickLOptimized: return "PickLOptimized";
  }
  return "?";
}

AlphaValue alpha_exact_on_set(const DenseMatrix& H, std::span<const int> K,
                              double feas_tol, unsigned threads) {
  return beta_subset(H, K, feas_tol, threads);
}

namespace {

void check_support(int n, std::span<const int> K, int l) {
  const int k = static_cast<int>(K.size());
  if (l < 1 || l > k)
    throw ArgumentError("need 1 <= l <= |K|");
  if (!is_sorted_index_set(n, K))
    throw ArgumentError("support must be sorted and within range");
}

}  // namespace

double cheap_upper_bound(const std::vector<SubsetScore>& scores, int n,
                         std::span<const int> K, int l) {
  check_support(n, K, l);
  if (checked_score_universe(scores, l) != n)
    throw ArgumentError("cheap_upper_bound: scores do not match n");
  const int k = static_cast<int>(K.size());

  double sum = 0.0;
  std::vector<int> pos = first_combination(l);
  std::vector<int> L(static_cast<std::size_t>(l));
  for (;;) {
    for (int t = 0; t < l; ++t)
      L[static_cast<std::size_t>(t)] =
          K[static_cast<std::size_t>(pos[static_cast<std::size_t>(t)])];
    sum += scores[combination_rank(n, L)].score.alpha;
    if (!next_combination(pos, k)) break;
  }
  return sum / static_cast<double>(binomial(k - 1, l - 1));
}

double lp_upper_bound(const std::vector<SubsetScore>& scores, int n,
                      std::span<const int> K, int l, double feas_tol) {
  check_support(n, K, l);
  if (checked_score_universe(scores, l) != n)
    throw ArgumentError("lp_upper_bound: scores do not match n");
  const int k = static_cast<int>(K.size());
  const std::uint64_t nrows = binomial(k, l);

  LpProblem p;
  p.objective = Vector::Ones(k);
  p.constraint_matrix =
      DenseMatrix::Zero(static_cast<Eigen::Index>(nrows), k);
  p.rhs = Vector::Zero(static_cast<Eigen::Index>(nrows));
  p.nonneg.assign(static_cast<std::size_t>(k), 1);

  std::vector<int> pos = first_combination(l);
  std::vector<int> L(static_cast<std::size_t>(l));
  std::uint64_t r = 0;
  for (;;) {
    for (int t = 0; t < l; ++t) {
      const int pt = pos[static_cast<std::size_t>(t)];
      L[static_cast<std::size_t>(t)] = K[static_cast<std::size_t>(pt)];
      p.constraint_matrix(static_cast<Eigen::Index>(r), pt) = 1.0;
    }
    p.rhs(static_cast<Eigen::Index>(r)) =
        scores[combination_rank(n, L)].score.alpha;
    ++r;
    if (!next_combination(pos, k)) break;
  }

  const LpOutcome o = solve_lp(p, feas_tol);
  if (o.status != LpStatus::Optimal)
    throw NumericalBreakdown(
        "lp_upper_bound: packing program must be bounded and feasible");
  return o.value;
}

SandwichResult sandwich(const DenseMatrix& H, int k, int l,
                        const SolveOptions& opts, const TraceSink& sink,
                        const std::vector<SubsetScore>* precomputed_scores) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = static_cast<int>(H.rows());
  const int m = static_cast<int>(H.cols());
  if (m < 1 || m >= n)
    throw DimensionError("sandwich: basis must be tall (n > m >= 1)");
  if (k < 1 || l < 1 || l > k || k >= n)
    throw ArgumentError("sandwich: need 1 <= l <= k < n");
  if (binomial_exceeds(n, k, opts.subset_limit))
    throw CapacityError("sandwich: C(n,k) exceeds the materialization limit");

  std::vector<SubsetScore> own_scores;
  const std::vector<SubsetScore>* scores = precomputed_scores;
  if (scores == nullptr) {
    own_scores = score_all_subsets(H, l, opts);
    scores = &own_scores;
  }
  if (checked_score_universe(*scores, l) != n)
    throw ArgumentError("sandwich: score list does not match the basis");

  // Cheap upper bound for every k-support, kept as (cub, rank) so the
  // materialized list stays flat. Rank order is lexicographic order, which
  // gives the tie-break for free.
  const std::uint64_t total = binomial(n, k);
  struct Entry {
    double cub;
    std::uint64_t rank;
  };
  std::vector<Entry> entries(total);
  parallel_for_blocks(total, opts.threads, [&](std::size_t b, std::size_t e) {
    std::vector<int> K = combination_unrank(n, k, b);
    for (std::size_t r = b; r < e; ++r) {
      entries[r] = Entry{cheap_upper_bound(*scores, n, K, l), r};
      next_combination(K, n);
    }
  });
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.cub != b.cub) return a.cub > b.cub;
    return a.rank < b.rank;
  });

  SandwichResult res;
  SandwichState state;
  auto emit = [&](SandwichTraceRow row) {
    res.trace.rows.push_back(row);
    if (sink) sink(res.trace.rows.back());
  };

  AlphaValue best_alpha{0.0, false};
  bool stopped_early = false;
  for (const Entry& entry : entries) {
    ++state.step;
    SandwichTraceRow row;
    row.step = state.step;
    row.K = combination_unrank(n, k, entry.rank);
    row.cub = entry.cub;

    if (state.glb + opts.cmp_tol >= entry.cub) {
      // No remaining support can beat the lower bound: close the sandwich.
      state.gub = state.glb;
      row.gub = state.gub;
      row.glb = state.glb;
      emit(std::move(row));
      stopped_early = true;
      break;
    }
    state.gub = entry.cub;

    const double lpub = lp_upper_bound(*scores, n, row.K, l, opts.feas_tol);
    row.lpub = lpub;
    if (state.glb + opts.cmp_tol < lpub) {
      const AlphaValue exact =
          alpha_exact_on_set(H, row.K, opts.feas_tol, opts.threads);
      row.exact_alpha = exact.alpha;
      if (exact.alpha > state.glb) {
        state.glb = exact.alpha;
        state.best_set = row.K;
        best_alpha = exact;
      }
    }
    row.gub = state.gub;
    row.glb = state.glb;
    emit(std::move(row));
  }

  if (!stopped_early) {
    // List exhausted: the lower bound has seen every support.
    state.gub = state.glb;
    SandwichTraceRow row;
    row.step = state.step + 1;
    row.gub = state.gub;
    row.glb = state.glb;
    emit(std::move(row));
  }

  res.alpha = state.best_set.has_value() ? best_alpha : AlphaValue{0.0, false};
  res.best_set = state.best_set;

  VerificationReport rep;
  rep.n = n;
  rep.m = m;
  rep.k = k;
  rep.rho = static_cast<double>(n - m) / static_cast<double>(n);
  rep.alpha_k = res.alpha.alpha;
  rep.method = "Exact";
  rep.steps_examined = state.step;
  if (res.alpha.alpha < 0.5) rep.max_certified_k = k;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  res.report = rep;
  return res;
}

std::vector<VerificationReport> find_max_certified_k(
    const DenseMatrix& H, int k_max, int l, VerifyMode mode,
    const SolveOptions& opts, bool early_stop,
    const ScoreProvider& score_provider) {
  const int n = static_cast<int>(H.rows());
  const int m = static_cast<int>(H.cols());
  if (m < 1 || m >= n)
    throw DimensionError("find_max_certified_k: basis must be tall (n > m >= 1)");
  if (k_max < 1 || k_max >= n)
    throw ArgumentError("find_max_certified_k: need 1 <= k_max < n");
  if (l < 1 || l >= n)
    throw ArgumentError("find_max_certified_k: need 1 <= l < n");

  // Scores are k-independent, so one pass per subset size serves the whole
  // sweep.
  std::map<int, std::vector<SubsetScore>> score_cache;
  auto scores_for = [&](int size) -> const std::vector<SubsetScore>& {
    auto it = score_cache.find(size);
    if (it == score_cache.end()) {
      std::vector<SubsetScore> scores = score_provider
                                            ? score_provider(size)
                                            : score_all_subsets(H, size, opts);
      if (checked_score_universe(scores, size) != n)
        throw ArgumentError(
            "find_max_certified_k: provided scores do not match the basis");
      it = score_cache.emplace(size, std::move(scores)).first;
    }
    return it->second;
  };

  std::vector<VerificationReport> reports;
  std::optional<int> certified;
  for (int k = 1; k <= k_max; ++k) {
    const int lk = std::min(l, k);
    const int l_eff = mode == VerifyMode::Pick1 ? 1 : lk;
    VerificationReport rep;
    if (mode == VerifyMode::Exact) {
      rep = sandwich(H, k, l_eff, opts, {}, &scores_for(l_eff)).report;
    } else {
      const auto t0 = std::chrono::steady_clock::now();
      BoundReport bound;
      switch (mode) {
        case VerifyMode::Pick1:
          bound = pick_one_bound(scores_for(1), k);
          break;
        case VerifyMode::PickL:
          bound = pick_l_bound(scores_for(l_eff), k, l_eff);
          break;
        default:
          bound = pick_l_optimized_bound(scores_for(l_eff), k, l_eff, n, opts);
          break;
      }
      rep.n = n;
      rep.m = m;
      rep.k = k;
      rep.rho = static_cast<double>(n - m) / static_cast<double>(n);
      rep.alpha_k = bound.bound;
      rep.method = bound_method_name(bound.method);
      rep.steps_examined = 0;
      rep.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
    if (rep.alpha_k < 0.5) certified = k;
    rep.max_certified_k = certified;
    reports.push_back(rep);

    if (early_stop) {
      if (mode == VerifyMode::Exact && rep.alpha_k >= 0.5)
        break;  // alpha_k is nondecreasing in k
      if (mode != VerifyMode::Exact && rep.alpha_k >= 1.0) break;
    }
  }
  return reports;
}

}  // namespace nsc
