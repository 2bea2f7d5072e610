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

#include "nsc/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nsc/errors.hpp"

namespace nsc {

bool all_finite(const DenseMatrix& m) { return m.allFinite(); }

double max_abs(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double default_basis_tol(const DenseMatrix& A) {
  return 1e-10 * max_abs(A);
}

NullBasis null_space_basis(const DenseMatrix& A, double basis_tol) {
  const Eigen::Index rows = A.rows();
  const Eigen::Index cols = A.cols();
  if (cols < 2)
    throw DimensionError("null_space_basis: need at least 2 columns");
  if (rows >= cols)
    throw DimensionError(
        "null_space_basis: row count must be smaller than column count");
  if (!all_finite(A))
    throw ArgumentError("null_space_basis: matrix has non-finite entries");
  if (basis_tol <= 0.0) basis_tol = default_basis_tol(A);

  Eigen::JacobiSVD<DenseMatrix> svd(A, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double rank_tol = static_cast<double>(std::max(rows, cols)) *
                          std::numeric_limits<double>::epsilon() * sigma_max;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol) ++rank;
  if (rank < rows)
    throw RankDeficientError("null_space_basis: numerical rank " +
                             std::to_string(rank) + " below row count " +
                             std::to_string(rows));

  // Right singular vectors for the zero singular values span null(A).
  NullBasis basis;
  basis.H = svd.matrixV().rightCols(cols - rows);
  basis.residual = max_abs(A * basis.H);
  if (basis.residual > basis_tol)
    throw NumericalBreakdown("null_space_basis: residual " +
                             std::to_string(basis.residual) +
                             " exceeds tolerance");
  return basis;
}

bool validate_basis(const DenseMatrix& A, const DenseMatrix& H,
                    double basis_tol) {
  if (A.cols() != H.rows())
    throw DimensionError("validate_basis: cols(A) must equal rows(H)");
  if (max_abs(A * H) > basis_tol) return false;
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(H);
  return qr.rank() == H.cols();
}

}  // namespace nsc
