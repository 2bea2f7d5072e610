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
#include <string>

#include "nsc/linalg.hpp"

namespace nsc {

enum class EnsembleKind { Gaussian, Bernoulli, PartialFourier };

const char* ensemble_kind_name(EnsembleKind k);
EnsembleKind parse_ensemble_kind(const std::string& name);

/// A sensing matrix family: rows = n - m measurements of a length-cols = n
/// signal. The seed-to-matrix map is stable for this implementation.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Gaussian;
  int rows = 0;  // n - m, must satisfy 0 < rows < cols
  int cols = 0;  // n
  std::uint64_t seed = 0;
};

/// Draws the matrix for spec. Gaussian entries are i.i.d. N(0,1) via
/// Box-Muller on uniforms taken straight from the engine words, so the
/// output is reproducible across standard libraries. Bernoulli entries
/// are i.i.d. uniform +-1. PartialFourier rows are sampled without
/// replacement from the real harmonics cos(2*pi*q*t/n), sin(2*pi*q*t/n)
/// (zero rows excluded), scaled by sqrt(2/n); rows are mutually
/// orthogonal.
///
/// Gaussian draws are checked for full row rank and regenerated with an
/// incremented seed on failure; effective_seed (when non-null) receives
/// the seed that actually produced the returned matrix.
DenseMatrix generate(const EnsembleSpec& spec,
                     std::uint64_t* effective_seed = nullptr);

/// i.i.d. N(0,1) matrix of any shape, same variate stream as generate().
/// This is the carrier for basis matrices drawn directly as H.
DenseMatrix gaussian_matrix(int rows, int cols, std::uint64_t seed);

}  // namespace nsc
