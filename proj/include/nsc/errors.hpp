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

#include <stdexcept>
#include <string>

namespace nsc {

/// Base class for every library failure. Failures always surface as typed
/// exceptions; no operation reports errors through its return value.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

/// Shapes of the inputs do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DimensionError"; }
};

/// An argument violates a documented precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ArgumentError"; }
};

/// A matrix does not have the rank the operation requires.
class RankDeficientError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "RankDeficient"; }
};

/// A combinatorial object would exceed the configured materialization limit.
class CapacityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "CapacityError"; }
};

/// Numerical procedure stalled or produced an inconsistent state.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NumericalBreakdown"; }
};

}  // namespace nsc
