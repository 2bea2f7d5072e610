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

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "nsc/combinatorics.hpp"
#include "nsc/ensembles.hpp"
#include "nsc/errors.hpp"
#include "nsc/linalg.hpp"
#include "nsc/matrix_io.hpp"
#include "nsc/parallel.hpp"

using namespace nsc;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("binomial values and saturation") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(40, 5) == 658008);
  CHECK(binomial(40, 3) == 9880);
  CHECK(binomial(12, 3) == 220);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(70, 35) == std::numeric_limits<std::uint64_t>::max());
  CHECK(binomial_exceeds(40, 20, 1000000));
  CHECK(!binomial_exceeds(12, 2, 66));
}

TEST_CASE("combination enumeration, rank, unrank agree") {
  const int n = 7, l = 3;
  std::vector<int> comb = first_combination(l);
  std::uint64_t rank = 0;
  std::set<std::vector<int>> seen;
  do {
    CHECK(combination_rank(n, comb) == rank);
    CHECK(combination_unrank(n, l, rank) == comb);
    seen.insert(comb);
    ++rank;
  } while (next_combination(comb, n));
  CHECK(rank == binomial(n, l));
  CHECK(seen.size() == rank);
  CHECK_THROWS_AS(combination_unrank(n, l, rank), ArgumentError);
}

TEST_CASE("parallel_for_blocks covers every index once") {
  const std::size_t count = 1000;
  std::vector<std::atomic<int>> hits(count);
  parallel_for_blocks(count, 4, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) hits[i].fetch_add(1);
  });
  for (std::size_t i = 0; i < count; ++i) CHECK(hits[i].load() == 1);
}

TEST_CASE("parallel_for_blocks propagates exceptions") {
  CHECK_THROWS_AS(
      parallel_for_blocks(100, 4,
                          [&](std::size_t b, std::size_t) {
                            if (b == 0) throw ArgumentError("boom");
                          }),
      ArgumentError);
}

TEST_CASE("matrix csv round-trips exactly") {
  DenseMatrix m(2, 3);
  m << 1.0, -0.125, 3.141592653589793, 1e-17, -2.5e100, 0.1;
  const auto path = temp_file("nscert_roundtrip.csv");
  write_matrix_csv(path, m);
  const DenseMatrix back = read_matrix_csv(path);
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  CHECK(back == m);
  std::filesystem::remove(path);
}

TEST_CASE("matrix csv rejects malformed input") {
  const auto path = temp_file("nscert_bad.csv");
  {
    std::ofstream out(path);
    out << "1,2\n3\n";
  }
  CHECK_THROWS_AS(read_matrix_csv(path), ArgumentError);
  {
    std::ofstream out(path);
    out << "1,nan\n";
  }
  CHECK_THROWS_AS(read_matrix_csv(path), ArgumentError);
  {
    std::ofstream out(path);
    out << "1,2x\n";
  }
  CHECK_THROWS_AS(read_matrix_csv(path), ArgumentError);
  std::filesystem::remove(path);
}

TEST_CASE("metadata sidecar round-trip") {
  const auto path = temp_file("nscert_meta.csv");
  MatrixMeta meta;
  meta.kind = "A";
  meta.rows = 20;
  meta.cols = 40;
  meta.ensemble = "gaussian";
  meta.seed = 7;
  write_matrix_meta(path, meta);
  const auto back = read_matrix_meta(path);
  REQUIRE(back.has_value());
  CHECK(back->kind == "A");
  CHECK(back->rows == 20);
  CHECK(back->cols == 40);
  CHECK(back->ensemble == "gaussian");
  CHECK(back->seed == 7);
  CHECK(!read_matrix_meta(temp_file("nscert_missing.csv")).has_value());
  std::filesystem::remove(meta_path_for(path));
}

TEST_CASE("null space of a single row") {
  DenseMatrix A(1, 2);
  A << 1.0, 1.0;
  const NullBasis basis = null_space_basis(A);
  REQUIRE(basis.H.rows() == 2);
  REQUIRE(basis.H.cols() == 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(basis.H(0, 0)) - inv_sqrt2) < 1e-12);
  CHECK(basis.H(0, 0) == doctest::Approx(-basis.H(1, 0)).epsilon(1e-12));
  CHECK(basis.residual <= default_basis_tol(A));
}

TEST_CASE("null space of an identity block") {
  DenseMatrix A(2, 3);
  A << 1, 0, 0,
       0, 1, 0;
  const NullBasis basis = null_space_basis(A);
  REQUIRE(basis.H.cols() == 1);
  CHECK(std::abs(basis.H(0, 0)) < 1e-12);
  CHECK(std::abs(basis.H(1, 0)) < 1e-12);
  CHECK(std::abs(std::abs(basis.H(2, 0)) - 1.0) < 1e-12);
}

TEST_CASE("null space of a seeded gaussian sensing matrix") {
  const DenseMatrix A = generate({EnsembleKind::Gaussian, 20, 40, 7});
  const NullBasis basis = null_space_basis(A);
  REQUIRE(basis.H.rows() == 40);
  REQUIRE(basis.H.cols() == 20);
  CHECK(max_abs(A * basis.H) <= 1e-10);
  // Orthonormal columns.
  CHECK(max_abs(basis.H.transpose() * basis.H -
                DenseMatrix::Identity(20, 20)) < 1e-12);
}

TEST_CASE("null space error cases") {
  DenseMatrix wide(2, 2);
  wide << 1, 0, 0, 1;
  CHECK_THROWS_AS(null_space_basis(wide), DimensionError);

  DenseMatrix dup(2, 3);
  dup << 1, 2, 3,
         2, 4, 6;
  CHECK_THROWS_AS(null_space_basis(dup), RankDeficientError);

  DenseMatrix one_col(1, 1);
  one_col << 1;
  CHECK_THROWS_AS(null_space_basis(one_col), DimensionError);
}

TEST_CASE("validate_basis examples") {
  DenseMatrix A(1, 2);
  A << 1.0, 1.0;
  DenseMatrix good(2, 1);
  good << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  CHECK(validate_basis(A, good, 1e-10));

  DenseMatrix bad(2, 1);
  bad << 1.0, 1.0;
  CHECK(!validate_basis(A, bad, 1e-10));

  DenseMatrix A2(2, 3);
  A2 << 1, 0, 0,
        0, 1, 0;
  DenseMatrix H2(3, 1);
  H2 << 0, 0, 1;
  CHECK(validate_basis(A2, H2, 1e-12));

  CHECK_THROWS_AS(validate_basis(A, H2, 1e-10), DimensionError);

  // Full column rank is required, not just a zero residual.
  DenseMatrix degenerate(2, 2);
  degenerate.col(0) = good.col(0);
  degenerate.col(1) = good.col(0);
  CHECK(!validate_basis(A, degenerate, 1e-10));
}
