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

#include "nsc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nsc/errors.hpp"

namespace nsc {

namespace {

constexpr double kPivotFloor = 1e-9;     // below this a column entry is zero
constexpr double kPivotRelative = 1e-6;  // admission relative to column max
constexpr double kDegenerateStep = 1e-12;
constexpr int kDegenerateRunLimit = 40;
constexpr long kRefactorInterval = 60;   // pivots between tableau rebuilds

// Standard form after free-variable splitting and rhs sign normalization:
// maximize c2 . x  s.t.  A x = b, x >= 0, with column blocks
// [structural | slack | artificial] and b >= 0.
struct StdForm {
  int nrows = 0;
  int ncols = 0;
  int ns = 0;         // structural column count
  int art_begin = 0;  // first artificial column (== ncols if none)
  DenseMatrix A;
  Vector b;
  Vector c2;
  std::vector<std::pair<int, double>> svar;  // structural -> (var, sign)
};

// Dense tableau in max form. row[r] has ncols coefficient entries plus the
// rhs in slot ncols; rhs stays nonnegative up to rounding. obj and aux hold
// reduced costs with the negated objective value in slot ncols and receive
// the same row operations as the constraint rows.
struct Tableau {
  int nrows = 0;
  int ncols = 0;
  std::vector<std::vector<double>> row;
  std::vector<double> obj;
  std::vector<double> aux;
  std::vector<int> basis;  // basis[r] = column basic in row r
  std::vector<char> col_active;
  std::vector<char> row_live;
};

void eliminate(std::vector<double>& target,
               const std::vector<double>& pivot_row, double factor, int ncols,
               int pcol) {
  if (factor == 0.0) return;
  for (int j = 0; j <= ncols; ++j)
    target[static_cast<std::size_t>(j)] -=
        factor * pivot_row[static_cast<std::size_t>(j)];
  target[static_cast<std::size_t>(pcol)] = 0.0;
}

void pivot(Tableau& tb, int prow, int pcol, bool with_aux) {
  auto& pr = tb.row[static_cast<std::size_t>(prow)];
  const double inv = 1.0 / pr[static_cast<std::size_t>(pcol)];
  for (double& v : pr) v *= inv;
  pr[static_cast<std::size_t>(pcol)] = 1.0;
  // Rounding can leave a hair-negative rhs on the pivot row; clamp it so
  // later ratio tests see a clean degenerate zero.
  double& prhs = pr[static_cast<std::size_t>(tb.ncols)];
  if (prhs < 0.0 && prhs > -1e-11) prhs = 0.0;

  for (int r = 0; r < tb.nrows; ++r) {
    if (r == prow || !tb.row_live[static_cast<std::size_t>(r)]) continue;
    auto& tr = tb.row[static_cast<std::size_t>(r)];
    eliminate(tr, pr, tr[static_cast<std::size_t>(pcol)], tb.ncols, pcol);
  }
  eliminate(tb.obj, pr, tb.obj[static_cast<std::size_t>(pcol)], tb.ncols, pcol);
  if (with_aux)
    eliminate(tb.aux, pr, tb.aux[static_cast<std::size_t>(pcol)], tb.ncols,
              pcol);
  tb.basis[static_cast<std::size_t>(prow)] = pcol;
}

// Rebuilds rows and reduced costs from the original data through the
// current basis. Gauss-Jordan tableaus accumulate elimination error
// multiplicatively; resyncing against the exact data every few dozen
// pivots keeps the walk honest.
void rebuild_from_basis(Tableau& tb, const StdForm& sf, bool with_aux) {
  std::vector<int> live;
  for (int r = 0; r < tb.nrows; ++r)
    if (tb.row_live[static_cast<std::size_t>(r)]) live.push_back(r);
  const int nlive = static_cast<int>(live.size());
  if (nlive == 0) return;

  DenseMatrix B(nlive, nlive);
  for (int i = 0; i < nlive; ++i)
    for (int t = 0; t < nlive; ++t)
      B(i, t) = sf.A(live[static_cast<std::size_t>(i)],
                     tb.basis[static_cast<std::size_t>(
                         live[static_cast<std::size_t>(t)])]);
  Eigen::PartialPivLU<DenseMatrix> lu(B);

  DenseMatrix rhs_all(nlive, sf.ncols + 1);
  for (int i = 0; i < nlive; ++i) {
    rhs_all.block(i, 0, 1, sf.ncols) = sf.A.row(live[static_cast<std::size_t>(i)]);
    rhs_all(i, sf.ncols) = sf.b(live[static_cast<std::size_t>(i)]);
  }
  const DenseMatrix T = lu.solve(rhs_all);
  if (!T.allFinite())
    throw NumericalBreakdown("simplex: singular basis during refactorization");

  Vector cb2 = Vector::Zero(nlive);
  Vector cb1 = Vector::Zero(nlive);
  for (int t = 0; t < nlive; ++t) {
    const int col =
        tb.basis[static_cast<std::size_t>(live[static_cast<std::size_t>(t)])];
    cb2(t) = sf.c2(col);
    if (col >= sf.art_begin) cb1(t) = -1.0;
  }
  const Vector red2 = sf.c2.transpose() - cb2.transpose() * T.leftCols(sf.ncols);
  Vector red1;
  if (with_aux) {
    Vector c1 = Vector::Zero(sf.ncols);
    for (int j = sf.art_begin; j < sf.ncols; ++j) c1(j) = -1.0;
    red1 = c1.transpose() - cb1.transpose() * T.leftCols(sf.ncols);
  }

  for (int i = 0; i < nlive; ++i) {
    auto& row = tb.row[static_cast<std::size_t>(live[static_cast<std::size_t>(i)])];
    for (int j = 0; j <= sf.ncols; ++j)
      row[static_cast<std::size_t>(j)] = T(i, j);
    double& b = row[static_cast<std::size_t>(sf.ncols)];
    if (b < 0.0 && b > -1e-11) b = 0.0;
  }
  for (int j = 0; j < sf.ncols; ++j)
    tb.obj[static_cast<std::size_t>(j)] = red2(j);
  tb.obj[static_cast<std::size_t>(sf.ncols)] =
      -cb2.dot(T.col(sf.ncols));
  if (with_aux) {
    for (int j = 0; j < sf.ncols; ++j)
      tb.aux[static_cast<std::size_t>(j)] = red1(j);
    tb.aux[static_cast<std::size_t>(sf.ncols)] = -cb1.dot(T.col(sf.ncols));
  }
  // Basic columns carry exact unit vectors by definition.
  for (int t = 0; t < nlive; ++t) {
    const int col =
        tb.basis[static_cast<std::size_t>(live[static_cast<std::size_t>(t)])];
    for (int i = 0; i < nlive; ++i)
      tb.row[static_cast<std::size_t>(live[static_cast<std::size_t>(i)])]
            [static_cast<std::size_t>(col)] = (i == t) ? 1.0 : 0.0;
    tb.obj[static_cast<std::size_t>(col)] = 0.0;
    if (with_aux) tb.aux[static_cast<std::size_t>(col)] = 0.0;
  }
}

enum class PhaseEnd { Optimal, Unbounded };

// Dantzig entering rule with lowest-index tie breaks; after a run of
// degenerate steps, Bland's rule takes over until the objective moves
// again, which rules out cycling. The ratio test admits pivots relative to
// the column maximum and prefers the largest pivot among near-minimal
// ratios; under Bland's rule the lowest basic index among exact minimum
// ratios wins instead.
PhaseEnd run_phase(Tableau& tb, const StdForm& sf, bool phase1,
                   double feas_tol, long cap) {
  std::vector<double>& d = phase1 ? tb.aux : tb.obj;
  long iters = 0;
  long since_refactor = 0;
  int degenerate_run = 0;
  bool bland = false;
  for (;;) {
    if (++iters > cap)
      throw NumericalBreakdown("simplex: iteration cap " +
                               std::to_string(cap) + " exceeded");
    if (++since_refactor >= kRefactorInterval) {
      rebuild_from_basis(tb, sf, phase1);
      since_refactor = 0;
    }

    int pcol = -1;
    if (bland) {
      for (int j = 0; j < tb.ncols; ++j)
        if (tb.col_active[static_cast<std::size_t>(j)] &&
            d[static_cast<std::size_t>(j)] > feas_tol) {
          pcol = j;
          break;
        }
    } else {
      double best = feas_tol;
      for (int j = 0; j < tb.ncols; ++j)
        if (tb.col_active[static_cast<std::size_t>(j)] &&
            d[static_cast<std::size_t>(j)] > best) {
          best = d[static_cast<std::size_t>(j)];
          pcol = j;
        }
    }
    if (pcol < 0) return PhaseEnd::Optimal;

    auto entry = [&](int r) {
      return tb.row[static_cast<std::size_t>(r)][static_cast<std::size_t>(pcol)];
    };
    auto row_rhs = [&](int r) {
      const double b =
          tb.row[static_cast<std::size_t>(r)][static_cast<std::size_t>(tb.ncols)];
      return b > 0.0 ? b : 0.0;
    };
    double colmax = 0.0;
    for (int r = 0; r < tb.nrows; ++r)
      if (tb.row_live[static_cast<std::size_t>(r)])
        colmax = std::max(colmax, entry(r));
    if (colmax <= kPivotFloor) return PhaseEnd::Unbounded;
    const double admit = std::max(kPivotFloor, kPivotRelative * colmax);

    double theta = std::numeric_limits<double>::infinity();
    for (int r = 0; r < tb.nrows; ++r) {
      if (!tb.row_live[static_cast<std::size_t>(r)]) continue;
      const double a = entry(r);
      if (a > admit) theta = std::min(theta, row_rhs(r) / a);
    }
    if (!std::isfinite(theta)) return PhaseEnd::Unbounded;

    int prow = -1;
    if (bland) {
      for (int r = 0; r < tb.nrows; ++r) {
        if (!tb.row_live[static_cast<std::size_t>(r)]) continue;
        const double a = entry(r);
        if (a > admit && row_rhs(r) / a == theta &&
            (prow < 0 || tb.basis[static_cast<std::size_t>(r)] <
                             tb.basis[static_cast<std::size_t>(prow)]))
          prow = r;
      }
    } else {
      const double window = theta + 1e-9 * (1.0 + theta);
      double best_a = 0.0;
      for (int r = 0; r < tb.nrows; ++r) {
        if (!tb.row_live[static_cast<std::size_t>(r)]) continue;
        const double a = entry(r);
        if (a > admit && row_rhs(r) / a <= window &&
            (a > best_a ||
             (a == best_a && tb.basis[static_cast<std::size_t>(r)] <
                                 tb.basis[static_cast<std::size_t>(prow)]))) {
          best_a = a;
          prow = r;
        }
      }
    }
    if (prow < 0) return PhaseEnd::Unbounded;

    if (theta <= kDegenerateStep) {
      if (++degenerate_run >= kDegenerateRunLimit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
    pivot(tb, prow, pcol, phase1);
  }
}

}  // namespace

LpOutcome solve_lp(const LpProblem& p, double feas_tol) {
  const int nvars = static_cast<int>(p.objective.size());
  const int nrows = static_cast<int>(p.rhs.size());
  if (p.constraint_matrix.rows() != nrows ||
      (nrows > 0 && p.constraint_matrix.cols() != nvars) ||
      static_cast<int>(p.nonneg.size()) != nvars)
    throw DimensionError("solve_lp: problem dimensions do not conform");
  if (!p.objective.allFinite() || !p.rhs.allFinite() ||
      !p.constraint_matrix.allFinite())
    throw ArgumentError("solve_lp: non-finite problem data");
  if (!(feas_tol > 0.0)) throw ArgumentError("solve_lp: feas_tol must be > 0");

  // Structural columns: one per nonnegative variable, a +/- pair per free
  // variable.
  StdForm sf;
  sf.svar.reserve(static_cast<std::size_t>(nvars) * 2);
  for (int j = 0; j < nvars; ++j) {
    sf.svar.emplace_back(j, 1.0);
    if (!p.nonneg[static_cast<std::size_t>(j)]) sf.svar.emplace_back(j, -1.0);
  }
  sf.ns = static_cast<int>(sf.svar.size());
  sf.nrows = nrows;

  int nart = 0;
  for (int r = 0; r < nrows; ++r)
    if (p.rhs(r) < 0.0) ++nart;
  sf.art_begin = sf.ns + nrows;
  sf.ncols = sf.ns + nrows + nart;

  sf.A = DenseMatrix::Zero(nrows, sf.ncols);
  sf.b = Vector::Zero(nrows);
  sf.c2 = Vector::Zero(sf.ncols);
  for (int t = 0; t < sf.ns; ++t)
    sf.c2(t) = p.objective(sf.svar[static_cast<std::size_t>(t)].first) *
               sf.svar[static_cast<std::size_t>(t)].second;

  Tableau tb;
  tb.nrows = nrows;
  tb.ncols = sf.ncols;
  tb.row.assign(static_cast<std::size_t>(nrows),
                std::vector<double>(static_cast<std::size_t>(sf.ncols) + 1, 0.0));
  tb.obj.assign(static_cast<std::size_t>(sf.ncols) + 1, 0.0);
  tb.aux.assign(static_cast<std::size_t>(sf.ncols) + 1, 0.0);
  tb.basis.assign(static_cast<std::size_t>(nrows), -1);
  tb.col_active.assign(static_cast<std::size_t>(sf.ncols), 1);
  tb.row_live.assign(static_cast<std::size_t>(nrows), 1);

  int art_next = sf.art_begin;
  for (int r = 0; r < nrows; ++r) {
    const double flip = p.rhs(r) < 0.0 ? -1.0 : 1.0;
    for (int t = 0; t < sf.ns; ++t)
      sf.A(r, t) = flip *
                   p.constraint_matrix(r, sf.svar[static_cast<std::size_t>(t)].first) *
                   sf.svar[static_cast<std::size_t>(t)].second;
    sf.A(r, sf.ns + r) = flip;  // slack (surplus if flipped)
    sf.b(r) = flip * p.rhs(r);
    if (flip < 0.0) {
      sf.A(r, art_next) = 1.0;
      tb.basis[static_cast<std::size_t>(r)] = art_next++;
    } else {
      tb.basis[static_cast<std::size_t>(r)] = sf.ns + r;
    }
    auto& row = tb.row[static_cast<std::size_t>(r)];
    for (int j = 0; j < sf.ncols; ++j)
      row[static_cast<std::size_t>(j)] = sf.A(r, j);
    row[static_cast<std::size_t>(sf.ncols)] = sf.b(r);
  }
  for (int j = 0; j < sf.ncols; ++j)
    tb.obj[static_cast<std::size_t>(j)] = sf.c2(j);

  const long cap = 50L * (static_cast<long>(nvars) + static_cast<long>(nrows));

  LpOutcome out;
  if (nart > 0) {
    // Phase-1 reduced costs: sum of the artificial rows, with the basic
    // artificial columns themselves zeroed. The rhs cell then tracks the
    // current sum of artificial values.
    for (int r = 0; r < nrows; ++r) {
      if (tb.basis[static_cast<std::size_t>(r)] < sf.art_begin) continue;
      const auto& row = tb.row[static_cast<std::size_t>(r)];
      for (int j = 0; j <= sf.ncols; ++j)
        tb.aux[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j)];
    }
    for (int j = sf.art_begin; j < sf.ncols; ++j)
      tb.aux[static_cast<std::size_t>(j)] = 0.0;

    const PhaseEnd end = run_phase(tb, sf, /*phase1=*/true, feas_tol, cap);
    if (end == PhaseEnd::Unbounded)
      throw NumericalBreakdown("simplex: phase 1 reported unbounded");
    if (tb.aux[static_cast<std::size_t>(sf.ncols)] > feas_tol) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive leftover artificials out of the basis; a row with no usable
    // pivot is a redundant constraint and is dropped.
    for (int r = 0; r < nrows; ++r) {
      if (!tb.row_live[static_cast<std::size_t>(r)]) continue;
      if (tb.basis[static_cast<std::size_t>(r)] < sf.art_begin) continue;
      int pc = -1;
      for (int j = 0; j < sf.art_begin; ++j)
        if (tb.col_active[static_cast<std::size_t>(j)] &&
            std::abs(tb.row[static_cast<std::size_t>(r)]
                           [static_cast<std::size_t>(j)]) > kPivotFloor) {
          pc = j;
          break;
        }
      if (pc >= 0)
        pivot(tb, r, pc, /*with_aux=*/true);
      else
        tb.row_live[static_cast<std::size_t>(r)] = 0;
    }
    for (int j = sf.art_begin; j < sf.ncols; ++j)
      tb.col_active[static_cast<std::size_t>(j)] = 0;
    rebuild_from_basis(tb, sf, /*with_aux=*/false);
  }

  const PhaseEnd end = run_phase(tb, sf, /*phase1=*/false, feas_tol, cap);
  if (end == PhaseEnd::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  // Recompute the vertex from the original data through the final basis.
  std::vector<int> live_rows;
  for (int r = 0; r < nrows; ++r)
    if (tb.row_live[static_cast<std::size_t>(r)]) live_rows.push_back(r);
  const int nlive = static_cast<int>(live_rows.size());

  Vector v = Vector::Zero(nvars);
  if (nlive > 0) {
    DenseMatrix B(nlive, nlive);
    Vector b_live(nlive);
    for (int i = 0; i < nlive; ++i) {
      const int r = live_rows[static_cast<std::size_t>(i)];
      b_live(i) = sf.b(r);
      for (int t = 0; t < nlive; ++t)
        B(i, t) = sf.A(r, tb.basis[static_cast<std::size_t>(
                              live_rows[static_cast<std::size_t>(t)])]);
    }
    const Vector y = Eigen::PartialPivLU<DenseMatrix>(B).solve(b_live);
    if (!y.allFinite())
      throw NumericalBreakdown("simplex: singular final basis");
    for (int t = 0; t < nlive; ++t) {
      const int col = tb.basis[static_cast<std::size_t>(
          live_rows[static_cast<std::size_t>(t)])];
      if (col < sf.ns)
        v(sf.svar[static_cast<std::size_t>(col)].first) +=
            sf.svar[static_cast<std::size_t>(col)].second * y(t);
    }
  }

  // Outcome invariants are re-checked on the recovered point; violations
  // are reported as breakdowns, never returned.
  for (int j = 0; j < nvars; ++j)
    if (p.nonneg[static_cast<std::size_t>(j)] && v(j) < -feas_tol)
      throw NumericalBreakdown("simplex: sign violation " +
                               std::to_string(v(j)) +
                               " on recovered point component " +
                               std::to_string(j));
  if (nrows > 0) {
    const Vector resid = p.constraint_matrix * v - p.rhs;
    if (resid.maxCoeff() > feas_tol)
      throw NumericalBreakdown("simplex: recovered point violates a " +
                               std::string("constraint by ") +
                               std::to_string(resid.maxCoeff()));
  }

  out.status = LpStatus::Optimal;
  out.point = std::move(v);
  out.value = p.objective.dot(out.point);
  return out;
}

}  // namespace nsc
