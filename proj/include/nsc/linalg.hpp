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

#include <Eigen/Dense>

namespace nsc {

// A is the (n-m) x n sensing matrix; H is the n x m basis of its null space.
// All downstream quantities depend on H only through its column span.
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

bool all_finite(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);

/// Relative residual tolerance turned absolute for a concrete A:
/// 1e-10 * max-abs entry of A.
double default_basis_tol(const DenseMatrix& A);

struct NullBasis {
  DenseMatrix H;     // n rows, m columns, orthonormal
  double residual;   // max-abs of A * H
};

/// Orthonormal basis of the null space of A, computed from a full SVD.
/// basis_tol is the absolute residual bound on max-abs(A*H); pass a value
/// <= 0 to use default_basis_tol(A).
///
/// Throws DimensionError when A has no nontrivial null space by shape,
/// RankDeficientError when the numerical rank of A is below its row count.
NullBasis null_space_basis(const DenseMatrix& A, double basis_tol = 0.0);

/// True iff max-abs(A*H) <= basis_tol and H has full column rank.
/// basis_tol is absolute, as in null_space_basis.
bool validate_basis(const DenseMatrix& A, const DenseMatrix& H,
                    double basis_tol);

}  // namespace nsc
