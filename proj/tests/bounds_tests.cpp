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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "nsc/bounds.hpp"
#include "nsc/ensembles.hpp"
#include "nsc/errors.hpp"
#include "nsc/oracle.hpp"

using namespace nsc;

namespace {

DenseMatrix ones_column(int n) { return DenseMatrix::Ones(n, 1); }

DenseMatrix three_row_basis() {
  DenseMatrix H(3, 2);
  H << 1, 0,
       0, 1,
       1, 1;
  return H;
}

}  // namespace

TEST_CASE("alpha from beta") {
  CHECK(AlphaValue::from_beta(0.0).alpha == 0.0);
  CHECK(AlphaValue::from_beta(1.0).alpha == 0.5);
  CHECK(AlphaValue::from_beta(1.0 / 3.0).alpha ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(AlphaValue::from_beta(-1e-12).alpha == 0.0);  // LP rounding clamps
  CHECK(AlphaValue::unbounded().alpha == 1.0);
  CHECK(AlphaValue::unbounded().beta_unbounded);
}

TEST_CASE("beta_subset on the all-ones column") {
  // (Hx)_i = x for every row, so beta for L={2} is max |x| with 3|x| <= 1.
  const DenseMatrix H = ones_column(4);
  const std::vector<int> L{2};
  const AlphaValue a = beta_subset(H, L);
  CHECK(!a.beta_unbounded);
  CHECK(a.alpha == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("beta_subset detects an unbounded direction") {
  // x = (t, -t) zeroes the only complement row.
  const DenseMatrix H = three_row_basis();
  const std::vector<int> L{0, 1};
  const AlphaValue a = beta_subset(H, L);
  CHECK(a.beta_unbounded);
  CHECK(a.alpha == 1.0);
}

TEST_CASE("beta_subset on the summed row") {
  // max |x1 + x2| s.t. |x1| + |x2| <= 1 gives beta = 1.
  const DenseMatrix H = three_row_basis();
  const std::vector<int> L{2};
  const AlphaValue a = beta_subset(H, L);
  CHECK(!a.beta_unbounded);
  CHECK(a.alpha == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("beta_subset argument errors") {
  const DenseMatrix H = ones_column(4);
  CHECK_THROWS_AS(beta_subset(H, std::vector<int>{}), ArgumentError);
  CHECK_THROWS_AS(beta_subset(H, std::vector<int>{0, 1, 2, 3}), ArgumentError);
  CHECK_THROWS_AS(beta_subset(H, std::vector<int>{2, 1}), ArgumentError);
  CHECK_THROWS_AS(beta_subset(H, std::vector<int>{4}), ArgumentError);
}

TEST_CASE("alpha is the maximum of the subset ratio") {
  // Sampling the ratio |(Hx)_L|_1 / |Hx|_1 never beats the computed score.
  const DenseMatrix H = gaussian_matrix(6, 3, 42);
  const std::vector<int> L{1, 4};
  const double alpha = beta_subset(H, L).alpha;
  std::mt19937_64 eng(7);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 500; ++trial) {
    Vector x(3);
    for (int j = 0; j < 3; ++j) x(j) = normal(eng);
    const Vector y = H * x;
    const double num = std::abs(y(1)) + std::abs(y(4));
    const double den = y.cwiseAbs().sum();
    if (den > 1e-12) CHECK(num / den <= alpha + 1e-9);
  }
}

TEST_CASE("score_all_subsets enumerates in lexicographic order") {
  const DenseMatrix H = ones_column(4);
  const auto singles = score_all_subsets(H, 1);
  REQUIRE(singles.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(singles[static_cast<std::size_t>(i)].indices == std::vector<int>{i});
    CHECK(singles[static_cast<std::size_t>(i)].score.alpha ==
          doctest::Approx(0.25).epsilon(1e-12));
  }

  const auto pairs = score_all_subsets(H, 2);
  REQUIRE(pairs.size() == 6);
  CHECK(pairs.front().indices == std::vector<int>{0, 1});
  CHECK(pairs.back().indices == std::vector<int>{2, 3});
  for (const auto& s : pairs)
    CHECK(s.score.alpha == doctest::Approx(0.5).epsilon(1e-12));

  const auto triple = score_all_subsets(three_row_basis(), 1);
  REQUIRE(triple.size() == 3);
  for (const auto& s : triple)
    CHECK(s.score.alpha == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("score_all_subsets respects the materialization limit") {
  SolveOptions opts;
  opts.subset_limit = 5;
  CHECK_THROWS_AS(score_all_subsets(ones_column(5), 2, opts), CapacityError);
}

TEST_CASE("score_all_subsets is thread-count invariant") {
  const DenseMatrix H = gaussian_matrix(7, 3, 11);
  SolveOptions seq;
  seq.threads = 1;
  SolveOptions par;
  par.threads = 4;
  const auto a = score_all_subsets(H, 2, seq);
  const auto b = score_all_subsets(H, 2, par);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].indices == b[i].indices);
    CHECK(a[i].score.alpha == b[i].score.alpha);
  }
}

TEST_CASE("pick_one_bound on the all-ones column") {
  const auto scores = score_all_subsets(ones_column(4), 1);
  CHECK(pick_one_bound(scores, 2).bound == doctest::Approx(0.5).epsilon(1e-12));
  const BoundReport r1 = pick_one_bound(scores, 1);
  CHECK(r1.bound == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r1.nsc_certified);
  CHECK_THROWS_AS(pick_one_bound(scores, 5), ArgumentError);
  CHECK_THROWS_AS(pick_one_bound(scores, 0), ArgumentError);
}

TEST_CASE("pick_l_bound basics") {
  const DenseMatrix H = ones_column(4);
  const auto pairs = score_all_subsets(H, 2);
  const BoundReport r = pick_l_bound(pairs, 2, 2);
  CHECK(r.bound == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(!r.nsc_certified);

  CHECK_THROWS_AS(pick_l_bound(pairs, 1, 2), ArgumentError);  // l > k
  auto incomplete = pairs;
  incomplete.pop_back();
  CHECK_THROWS_AS(pick_l_bound(incomplete, 2, 2), ArgumentError);
}

TEST_CASE("pick_l_bound with l=1 reduces to pick_one_bound") {
  const DenseMatrix H = gaussian_matrix(8, 4, 3);
  const auto singles = score_all_subsets(H, 1);
  for (int k = 1; k <= 5; ++k)
    CHECK(pick_l_bound(singles, k, 1).bound ==
          doctest::Approx(pick_one_bound(singles, k).bound).epsilon(1e-14));
}

TEST_CASE("pick_l_optimized_bound with l=1 matches the sorted sum") {
  const DenseMatrix H = gaussian_matrix(8, 4, 5);
  const auto singles = score_all_subsets(H, 1);
  for (int k = 1; k <= 4; ++k) {
    const double lp = pick_l_optimized_bound(singles, k, 1, 8).bound;
    const double direct = pick_one_bound(singles, k).bound;
    CHECK(lp == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("pick_l_optimized_bound with equal scores and l=k") {
  // Every pair score of the all-ones column equals 2/5; with l = k the
  // best gamma saturates a single set at weight 1, so the bound is that
  // common score.
  const auto pairs = score_all_subsets(ones_column(5), 2);
  const double common = pairs.front().score.alpha;
  CHECK(common == doctest::Approx(0.4).epsilon(1e-12));
  for (const auto& s : pairs)
    CHECK(s.score.alpha == doctest::Approx(common).epsilon(1e-12));
  const BoundReport r = pick_l_optimized_bound(pairs, 2, 2, 5);
  CHECK(r.bound == doctest::Approx(common).epsilon(1e-9));
}

TEST_CASE("pick_l_optimized_bound respects the constraint limit") {
  const auto pairs = score_all_subsets(ones_column(6), 2);
  SolveOptions opts;
  opts.subset_limit = 10;  // 1 + C(6,1) + C(6,2) = 22 rows needed
  CHECK_THROWS_AS(pick_l_optimized_bound(pairs, 3, 2, 6, opts), CapacityError);
}

TEST_CASE("pick_l_optimized_bound sandwiched between pick_l and the oracle") {
  const DenseMatrix H = gaussian_matrix(10, 4, 17);
  const auto pairs = score_all_subsets(H, 2);
  const double opt = pick_l_optimized_bound(pairs, 4, 2, 10).bound;
  const double plain = pick_l_bound(pairs, 4, 2).bound;
  const double exact = exhaustive_alpha(H, 4).alpha.alpha;
  CHECK(opt <= plain + 1e-9);
  CHECK(opt >= exact - 1e-9);
}

TEST_CASE("bound soundness and dominance on a small corpus") {
  for (std::uint64_t seed : {101, 102, 103, 104, 105}) {
    const DenseMatrix H = gaussian_matrix(8, 4, seed);
    const auto singles = score_all_subsets(H, 1);
    const auto pairs = score_all_subsets(H, 2);
    for (int k = 1; k <= 3; ++k) {
      const double exact = exhaustive_alpha(H, k).alpha.alpha;
      const double p1 = pick_one_bound(singles, k).bound;
      const double opt1 = pick_l_optimized_bound(singles, k, 1, 8).bound;
      CHECK(p1 >= exact - 1e-8);
      CHECK(opt1 <= p1 + 1e-9);
      CHECK(opt1 >= exact - 1e-8);
      if (k >= 2) {
        const double p2 = pick_l_bound(pairs, k, 2).bound;
        const double opt2 = pick_l_optimized_bound(pairs, k, 2, 8).bound;
        CHECK(p2 >= exact - 1e-8);
        CHECK(opt2 <= p2 + 1e-9);
        CHECK(opt2 <= opt1 + 1e-9);  // larger l never loosens the bound
        CHECK(opt2 >= exact - 1e-8);
      }
    }
  }
}

TEST_CASE("pick_l_bound at l=k equals the exact alpha") {
  const DenseMatrix H = gaussian_matrix(7, 3, 23);
  for (int k = 1; k <= 3; ++k) {
    const auto scores = score_all_subsets(H, k);
    const double bound = pick_l_bound(scores, k, k).bound;
    const double exact = exhaustive_alpha(H, k).alpha.alpha;
    CHECK(bound == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("scores and bounds are scale invariant") {
  const DenseMatrix H = gaussian_matrix(7, 3, 29);
  for (double factor : {3.7, -2.0, 1e-3}) {
    const DenseMatrix scaled = factor * H;
    const auto a = score_all_subsets(H, 2);
    const auto b = score_all_subsets(scaled, 2);
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(std::abs(a[i].score.alpha - b[i].score.alpha) <= 1e-10);
    CHECK(std::abs(pick_l_bound(a, 3, 2).bound - pick_l_bound(b, 3, 2).bound) <=
          1e-10);
  }
}

TEST_CASE("row permutation permutes scores and keeps bounds") {
  const DenseMatrix H = gaussian_matrix(6, 3, 31);
  // Rotate the rows by two.
  DenseMatrix P = H;
  for (int r = 0; r < 6; ++r) P.row(r) = H.row((r + 2) % 6);

  const auto orig = score_all_subsets(H, 1);
  const auto perm = score_all_subsets(P, 1);
  for (int r = 0; r < 6; ++r)
    CHECK(perm[static_cast<std::size_t>(r)].score.alpha ==
          doctest::Approx(orig[static_cast<std::size_t>((r + 2) % 6)].score.alpha)
              .epsilon(1e-10));

  const auto op = score_all_subsets(H, 2);
  const auto pp = score_all_subsets(P, 2);
  for (int k = 2; k <= 4; ++k)
    CHECK(pick_l_bound(op, k, 2).bound ==
          doctest::Approx(pick_l_bound(pp, k, 2).bound).epsilon(1e-10));
}

TEST_CASE("median pick bounds replicate the published 40x20 levels") {
  // Ten seeded 40x20 gaussian bases; the pick-1 medians for k=1 and k=5
  // land in the windows around the published values 0.27 and 1.27.
  std::vector<double> a1, a5;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const DenseMatrix H = gaussian_matrix(40, 20, seed);
    SolveOptions opts;
    opts.threads = 0;
    const auto singles = score_all_subsets(H, 1, opts);
    a1.push_back(pick_one_bound(singles, 1).bound);
    a5.push_back(pick_one_bound(singles, 5).bound);
  }
  std::sort(a1.begin(), a1.end());
  std::sort(a5.begin(), a5.end());
  const double med1 = 0.5 * (a1[4] + a1[5]);
  const double med5 = 0.5 * (a5[4] + a5[5]);
  CHECK(med1 >= 0.22);
  CHECK(med1 <= 0.32);
  CHECK(med5 >= 1.17);
  CHECK(med5 <= 1.37);
}
