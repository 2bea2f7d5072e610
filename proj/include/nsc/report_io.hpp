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

#include <iosfwd>

#include <json.hpp>

#include "nsc/sandwich.hpp"

namespace nsc {

/// Trace CSV: "step,K,cub,lpub,exact_alpha,gub,glb". K is a
/// space-separated index list; skipped gates leave their field empty.
void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const SandwichTraceRow& row);
void write_trace_csv(std::ostream& out, const SandwichTrace& trace);

/// Report JSON object: {n, m, k, rho, alpha, method, steps_examined,
/// max_certified_k, wall_seconds}. Key order is fixed so identical runs
/// serialize identically.
nlohmann::ordered_json report_to_json(const VerificationReport& report);

}  // namespace nsc
