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

#include "nsc/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nsc/errors.hpp"

namespace nsc {

const char* ensemble_kind_name(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::Gaussian: return "gaussian";
    case EnsembleKind::Bernoulli: return "bernoulli";
    case EnsembleKind::PartialFourier: return "fourier";
  }
  return "?";
}

EnsembleKind parse_ensemble_kind(const std::string& name) {
  if (name == "gaussian") return EnsembleKind::Gaussian;
  if (name == "bernoulli") return EnsembleKind::Bernoulli;
  if (name == "fourier") return EnsembleKind::PartialFourier;
  throw ArgumentError("unknown ensemble \"" + name + "\"");
}

namespace {

// Uniform in [0,1) built from the top 53 engine bits; the variate stream
// is pinned to the engine, not to a standard-library distribution.
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Box-Muller pair from two uniforms.
void normal_pair(std::mt19937_64& eng, double& z0, double& z1) {
  const double u1 = 1.0 - uniform01(eng);  // (0, 1], keeps log finite
  const double u2 = uniform01(eng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(t);
  z1 = r * std::sin(t);
}

DenseMatrix gaussian_fill(int rows, int cols, std::mt19937_64& eng) {
  DenseMatrix m(rows, cols);
  const std::size_t count = static_cast<std::size_t>(rows) * cols;
  double spare = 0.0;
  bool have_spare = false;
  for (std::size_t i = 0; i < count; ++i) {
    const int r = static_cast<int>(i) / cols;
    const int c = static_cast<int>(i) % cols;
    if (have_spare) {
      m(r, c) = spare;
      have_spare = false;
    } else {
      double z0, z1;
      normal_pair(eng, z0, z1);
      m(r, c) = z0;
      spare = z1;
      have_spare = true;
    }
  }
  return m;
}

DenseMatrix bernoulli_fill(int rows, int cols, std::mt19937_64& eng) {
  DenseMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = (eng() >> 63) ? -1.0 : 1.0;
  return m;
}

DenseMatrix fourier_fill(int rows, int cols, std::mt19937_64& eng) {
  const int n = cols;
  // Candidate harmonics cos(2*pi*q*t/n) and sin(2*pi*q*t/n) for
  // q = 0 .. ceil(n/2)-1; the identically-zero sin(q=0) row is dropped.
  const int qmax = (n + 1) / 2;
  const double scale = std::sqrt(2.0 / static_cast<double>(n));
  std::vector<Vector> candidates;
  candidates.reserve(static_cast<std::size_t>(2 * qmax));
  for (int q = 0; q < qmax; ++q) {
    Vector row(n);
    for (int t = 0; t < n; ++t)
      row(t) = scale * std::cos(2.0 * std::numbers::pi * q * t / n);
    candidates.push_back(row);
    if (q == 0) continue;
    for (int t = 0; t < n; ++t)
      row(t) = scale * std::sin(2.0 * std::numbers::pi * q * t / n);
    candidates.push_back(row);
  }
  if (rows > static_cast<int>(candidates.size()))
    throw ArgumentError("fourier ensemble: only " +
                        std::to_string(candidates.size()) +
                        " distinct harmonics available for " +
                        std::to_string(rows) + " rows");

  // Fisher-Yates draw without replacement.
  std::vector<int> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(eng() % (i + 1));
    std::swap(order[i], order[j]);
  }

  DenseMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    m.row(r) = candidates[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])]
                   .transpose();
  return m;
}

bool full_row_rank(const DenseMatrix& m) {
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(m.transpose());
  return qr.rank() == m.rows();
}

}  // namespace

DenseMatrix gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  if (rows < 1 || cols < 1)
    throw ArgumentError("gaussian_matrix: dimensions must be positive");
  std::mt19937_64 eng(seed);
  return gaussian_fill(rows, cols, eng);
}

DenseMatrix generate(const EnsembleSpec& spec, std::uint64_t* effective_seed) {
  if (spec.rows < 1 || spec.rows >= spec.cols)
    throw ArgumentError("generate: need 0 < rows < cols");

  std::uint64_t seed = spec.seed;
  if (effective_seed) *effective_seed = seed;
  switch (spec.kind) {
    case EnsembleKind::Gaussian: {
      // A rank-deficient draw has probability zero but would poison
      // everything downstream; retry on the next seed and record it.
      for (int attempt = 0; attempt < 16; ++attempt) {
        std::mt19937_64 eng(seed);
        DenseMatrix A = gaussian_fill(spec.rows, spec.cols, eng);
        if (full_row_rank(A)) {
          if (effective_seed) *effective_seed = seed;
          return A;
        }
        ++seed;
      }
      throw NumericalBreakdown("generate: no full-rank gaussian draw found");
    }
    case EnsembleKind::Bernoulli: {
      std::mt19937_64 eng(seed);
      return bernoulli_fill(spec.rows, spec.cols, eng);
    }
    case EnsembleKind::PartialFourier: {
      std::mt19937_64 eng(seed);
      return fourier_fill(spec.rows, spec.cols, eng);
    }
  }
  throw ArgumentError("generate: unknown ensemble kind");
}

}  // namespace nsc
