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

#include "nsc/report_io.hpp"

#include <ostream>

#include "nsc/matrix_io.hpp"

namespace nsc {

void write_trace_header(std::ostream& out) {
  out << "step,K,cub,lpub,exact_alpha,gub,glb\n";
}

void write_trace_row(std::ostream& out, const SandwichTraceRow& row) {
  out << row.step << ',';
  for (std::size_t i = 0; i < row.K.size(); ++i) {
    if (i > 0) out << ' ';
    out << row.K[i];
  }
  out << ',';
  if (row.cub) out << format_double(*row.cub);
  out << ',';
  if (row.lpub) out << format_double(*row.lpub);
  out << ',';
  if (row.exact_alpha) out << format_double(*row.exact_alpha);
  out << ',' << format_double(row.gub) << ',' << format_double(row.glb)
      << '\n';
}

void write_trace_csv(std::ostream& out, const SandwichTrace& trace) {
  write_trace_header(out);
  for (const SandwichTraceRow& row : trace.rows) write_trace_row(out, row);
}

nlohmann::ordered_json report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["m"] = report.m;
  j["k"] = report.k;
  j["rho"] = report.rho;
  j["alpha"] = report.alpha_k;
  j["method"] = report.method;
  j["steps_examined"] = report.steps_examined;
  j["max_certified_k"] = report.max_certified_k.has_value()
                             ? nlohmann::ordered_json(*report.max_certified_k)
                             : nlohmann::ordered_json(nullptr);
  j["wall_seconds"] = report.wall_seconds;
  return j;
}

}  // namespace nsc
