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

#include "nsc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nsc/combinatorics.hpp"
#include "nsc/errors.hpp"
#include "nsc/lp.hpp"
#include "nsc/parallel.hpp"

namespace nsc {

AlphaValue AlphaValue::from_beta(double beta) {
  // beta >= 0 always (x = 0 is feasible); tiny negatives are LP rounding.
  if (beta < 0.0) beta = 0.0;
  return AlphaValue{beta / (1.0 + beta), false};
}

AlphaValue AlphaValue::unbounded() { return AlphaValue{1.0, true}; }

const char* bound_method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::Pick1: return "Pick1";
    case BoundMethod::PickL: return "PickL";
    case BoundMethod::PickLOptimized: return "PickLOptimized";
  }
  return "?";
}

namespace {

// Shared LP skeleton for one subset L: variables are x in R^m (free) and
// u_j >= 0 for each j outside L, with
//   row_j(H).x - u_j <= 0,  -row_j(H).x - u_j <= 0   for j outside L,
//   sum_j u_j <= 1.
// Only the objective changes between sign patterns.
LpProblem subset_program(const DenseMatrix& H, std::span<const int> L) {
  const int n = static_cast<int>(H.rows());
  const int m = static_cast<int>(H.cols());
  const int l = static_cast<int>(L.size());

  std::vector<int> comp;
  comp.reserve(static_cast<std::size_t>(n - l));
  {
    std::size_t li = 0;
    for (int j = 0; j < n; ++j) {
      if (li < L.size() && L[li] == j)
        ++li;
      else
        comp.push_back(j);
    }
  }
  const int nc = static_cast<int>(comp.size());

  LpProblem p;
  const int nvars = m + nc;
  p.objective = Vector::Zero(nvars);
  p.constraint_matrix = DenseMatrix::Zero(2 * nc + 1, nvars);
  p.rhs = Vector::Zero(2 * nc + 1);
  p.nonneg.assign(static_cast<std::size_t>(nvars), 0);
  for (int t = 0; t < nc; ++t) {
    const int j = comp[static_cast<std::size_t>(t)];
    p.constraint_matrix.block(2 * t, 0, 1, m) = H.row(j);
    p.constraint_matrix(2 * t, m + t) = -1.0;
    p.constraint_matrix.block(2 * t + 1, 0, 1, m) = -H.row(j);
    p.constraint_matrix(2 * t + 1, m + t) = -1.0;
    p.nonneg[static_cast<std::size_t>(m + t)] = 1;
  }
  for (int t = 0; t < nc; ++t) p.constraint_matrix(2 * nc, m + t) = 1.0;
  p.rhs(2 * nc) = 1.0;
  return p;
}

Vector pattern_objective(const DenseMatrix& H, std::span<const int> L,
                         std::uint64_t pattern, int nvars) {
  Vector c = Vector::Zero(nvars);
  const int m = static_cast<int>(H.cols());
  for (std::size_t i = 0; i < L.size(); ++i) {
    // Leading sign fixed to +1; remaining signs follow the bits of the
    // pattern counter.
    const double s =
        (i == 0 || ((pattern >> (i - 1)) & 1ULL) == 0) ? 1.0 : -1.0;
    c.head(m) += s * H.row(static_cast<Eigen::Index>(L[i])).transpose();
  }
  return c;
}

}  // namespace

AlphaValue beta_subset(const DenseMatrix& H, std::span<const int> L,
                       double feas_tol, unsigned threads) {
  const int n = static_cast<int>(H.rows());
  const int l = static_cast<int>(L.size());
  if (H.cols() < 1 || n < 2)
    throw DimensionError("beta_subset: basis must be n x m with n >= 2");
  if (l < 1 || l >= n)
    throw ArgumentError("beta_subset: need 1 <= |L| < n");
  if (!is_sorted_index_set(n, L))
    throw ArgumentError("beta_subset: indices must be sorted and in range");
  if (!all_finite(H))
    throw ArgumentError("beta_subset: basis has non-finite entries");
  if (l - 1 >= 63) throw CapacityError("beta_subset: too many sign patterns");

  const LpProblem base = subset_program(H, L);
  const std::uint64_t npat = 1ULL << (l - 1);

  auto solve_pattern = [&](std::uint64_t t) {
    LpProblem q = base;
    q.objective =
        pattern_objective(H, L, t, static_cast<int>(base.objective.size()));
    LpOutcome o = solve_lp(q, feas_tol);
    if (o.status == LpStatus::Infeasible)
      throw NumericalBreakdown(
          "beta_subset: subset program reported infeasible (x = 0 is "
          "feasible)");
    return o;
  };

  bool unbounded = false;
  double beta = 0.0;
  if (threads > 1 && npat >= 4) {
    std::vector<LpOutcome> slots(npat);
    parallel_for_blocks(npat, threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t t = b; t < e; ++t) slots[t] = solve_pattern(t);
    });
    for (const auto& o : slots) {
      if (o.status == LpStatus::Unbounded)
        unbounded = true;
      else
        beta = std::max(beta, o.value);
    }
  } else {
    for (std::uint64_t t = 0; t < npat; ++t) {
      const LpOutcome o = solve_pattern(t);
      if (o.status == LpStatus::Unbounded) {
        unbounded = true;
        break;  // alpha is already pinned at 1
      }
      beta = std::max(beta, o.value);
    }
  }
  return unbounded ? AlphaValue::unbounded() : AlphaValue::from_beta(beta);
}

std::vector<SubsetScore> score_all_subsets(const DenseMatrix& H, int l,
                                           const SolveOptions& opts) {
  const int n = static_cast<int>(H.rows());
  if (l < 1 || l >= n) throw ArgumentError("score_all_subsets: need 1 <= l < n");
  if (binomial_exceeds(n, l, opts.subset_limit))
    throw CapacityError("score_all_subsets: C(" + std::to_string(n) + "," +
                        std::to_string(l) + ") exceeds limit " +
                        std::to_string(opts.subset_limit));
  const std::uint64_t total = binomial(n, l);

  std::vector<SubsetScore> scores(total);
  parallel_for_blocks(total, opts.threads, [&](std::size_t b, std::size_t e) {
    std::vector<int> comb = combination_unrank(n, l, b);
    for (std::size_t r = b; r < e; ++r) {
      scores[r].indices = comb;
      scores[r].score = beta_subset(H, comb, opts.feas_tol, 1);
      next_combination(comb, n);
    }
  });
  return scores;
}

std::vector<std::size_t> sorted_score_order(
    const std::vector<SubsetScore>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  // Input is lexicographic, so a stable sort on alpha keeps lexicographic
  // tie-breaks for free.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a].score.alpha > scores[b].score.alpha;
                   });
  return order;
}

int checked_score_universe(const std::vector<SubsetScore>& scores, int l) {
  if (l < 1) throw ArgumentError("subset size must be positive");
  if (scores.empty()) throw ArgumentError("score list is empty");
  const auto& last = scores.back().indices;
  if (static_cast<int>(last.size()) != l)
    throw ArgumentError("score list has wrong subset size");
  const int n = last.back() + 1;
  if (binomial(n, l) != scores.size() ||
      scores.front().indices != first_combination(l))
    throw ArgumentError("score list is not a complete lexicographic pass");
  return n;
}

BoundReport pick_one_bound(const std::vector<SubsetScore>& scores, int k) {
  const int n = checked_score_universe(scores, 1);
  if (k < 1 || k > n) throw ArgumentError("pick_one_bound: need 1 <= k <= n");
  const std::vector<std::size_t> order = sorted_score_order(scores);
  double bound = 0.0;
  for (int j = 0; j < k; ++j)
    bound += scores[order[static_cast<std::size_t>(j)]].score.alpha;
  return BoundReport{k, 1, BoundMethod::Pick1, bound, bound < 0.5};
}

BoundReport pick_l_bound(const std::vector<SubsetScore>& scores, int k, int l) {
  const int n = checked_score_universe(scores, l);
  if (l < 1 || l > k || k > n)
    throw ArgumentError("pick_l_bound: need 1 <= l <= k <= n");
  const std::uint64_t take = binomial(k, l);
  const double coeff = static_cast<double>(binomial(k - 1, l - 1));
  const std::vector<std::size_t> order = sorted_score_order(scores);
  double sum = 0.0;
  for (std::uint64_t j = 0; j < take; ++j)
    sum += scores[order[static_cast<std::size_t>(j)]].score.alpha;
  const double bound = sum / coeff;
  return BoundReport{k, l, l == 1 ? BoundMethod::Pick1 : BoundMethod::PickL,
                     bound, bound < 0.5};
}

BoundReport pick_l_optimized_bound(const std::vector<SubsetScore>& scores,
                                   int k, int l, int n,
                                   const SolveOptions& opts) {
  if (l < 1 || l > k || k > n)
    throw ArgumentError("pick_l_optimized_bound: need 1 <= l <= k <= n");
  if (checked_score_universe(scores, l) != n)
    throw ArgumentError("pick_l_optimized_bound: scores do not match n");

  std::uint64_t nconstraints = 1;
  for (int b = 1; b <= l; ++b) {
    if (binomial_exceeds(n, b, opts.subset_limit))
      throw CapacityError("pick_l_optimized_bound: constraint count exceeds limit");
    nconstraints += binomial(n, b);
    if (nconstraints > opts.subset_limit)
      throw CapacityError("pick_l_optimized_bound: constraint count exceeds limit");
  }

  const std::uint64_t nsets = scores.size();
  LpProblem p;
  p.objective = Vector::Zero(static_cast<Eigen::Index>(nsets));
  for (std::uint64_t i = 0; i < nsets; ++i)
    p.objective(static_cast<Eigen::Index>(i)) =
        scores[static_cast<std::size_t>(i)].score.alpha;
  p.constraint_matrix = DenseMatrix::Zero(
      static_cast<Eigen::Index>(nconstraints), static_cast<Eigen::Index>(nsets));
  p.rhs = Vector::Zero(static_cast<Eigen::Index>(nconstraints));
  p.nonneg.assign(static_cast<std::size_t>(nsets), 1);

  p.rhs(0) = static_cast<double>(k) / static_cast<double>(l);
  for (std::uint64_t i = 0; i < nsets; ++i)
    p.constraint_matrix(0, static_cast<Eigen::Index>(i)) = 1.0;

  // Row block for cardinality b starts after the blocks for 1..b-1; the
  // row for a b-subset I collects every gamma_i whose L_i contains I.
  std::vector<std::uint64_t> block_offset(static_cast<std::size_t>(l) + 1, 1);
  for (int b = 1; b < l; ++b)
    block_offset[static_cast<std::size_t>(b) + 1] =
        block_offset[static_cast<std::size_t>(b)] + binomial(n, b);

  const double denom = static_cast<double>(binomial(k - 1, l - 1));
  for (int b = 1; b <= l; ++b) {
    const double cap = static_cast<double>(binomial(k - b, l - b)) / denom;
    const std::uint64_t off = block_offset[static_cast<std::size_t>(b)];
    const std::uint64_t count = binomial(n, b);
    for (std::uint64_t r = 0; r < count; ++r)
      p.rhs(static_cast<Eigen::Index>(off + r)) = cap;
    std::vector<int> I(static_cast<std::size_t>(b));
    for (std::uint64_t i = 0; i < nsets; ++i) {
      const auto& L = scores[static_cast<std::size_t>(i)].indices;
      // All b-subsets I of L_i, enumerated by position.
      std::vector<int> pos(static_cast<std::size_t>(b));
      std::iota(pos.begin(), pos.end(), 0);
      for (;;) {
        for (int t = 0; t < b; ++t)
          I[static_cast<std::size_t>(t)] =
              L[static_cast<std::size_t>(pos[static_cast<std::size_t>(t)])];
        const std::uint64_t row = off + combination_rank(n, I);
        p.constraint_matrix(static_cast<Eigen::Index>(row),
                            static_cast<Eigen::Index>(i)) = 1.0;
        if (!next_combination(pos, l)) break;
      }
    }
  }

  const LpOutcome o = solve_lp(p, opts.feas_tol);
  if (o.status != LpStatus::Optimal)
    throw NumericalBreakdown(
        "pick_l_optimized_bound: coefficient program must be bounded and "
        "feasible");
  return BoundReport{k, l, BoundMethod::PickLOptimized, o.value,
                     o.value < 0.5};
}

}  // namespace nsc
