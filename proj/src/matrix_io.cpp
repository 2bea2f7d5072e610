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

#include "nsc/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsc/errors.hpp"

namespace nsc {

std::string format_double(double d) {
  char buf[40];
  // Shortest representation that round-trips: try increasing precision.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, d);
    if (std::strtod(buf, nullptr) == d) return buf;
  }
  return buf;
}

DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open matrix file " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw ArgumentError("malformed number \"" + cell + "\" in " +
                            path.string());
      }
      while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos])))
        ++pos;
      if (pos != cell.size())
        throw ArgumentError("malformed number \"" + cell + "\" in " +
                            path.string());
      if (!std::isfinite(v))
        throw ArgumentError("non-finite entry in " + path.string());
      row.push_back(v);
    }
    if (row.empty())
      throw ArgumentError("empty row in " + path.string());
    if (!rows.empty() && row.size() != rows.front().size())
      throw ArgumentError("ragged rows in " + path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ArgumentError("empty matrix file " + path.string());

  DenseMatrix m(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return m;
}

void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write matrix file " + path.string());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

std::filesystem::path meta_path_for(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension();
  p += ".meta.json";
  return p;
}

std::optional<MatrixMeta> read_matrix_meta(
    const std::filesystem::path& csv_path) {
  const std::filesystem::path p = meta_path_for(csv_path);
  std::ifstream in(p);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
    MatrixMeta meta;
    meta.kind = j.at("kind").get<std::string>();
    meta.rows = j.at("rows").get<int>();
    meta.cols = j.at("cols").get<int>();
    if (j.contains("ensemble") && !j["ensemble"].is_null())
      meta.ensemble = j["ensemble"].get<std::string>();
    if (j.contains("seed") && !j["seed"].is_null())
      meta.seed = j["seed"].get<std::int64_t>();
    if (meta.kind != "A" && meta.kind != "H")
      throw ArgumentError("matrix kind must be \"A\" or \"H\"");
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError("malformed metadata " + p.string() + ": " + e.what());
  }
}

void write_matrix_meta(const std::filesystem::path& csv_path,
                       const MatrixMeta& meta) {
  nlohmann::ordered_json j;
  j["kind"] = meta.kind;
  j["rows"] = meta.rows;
  j["cols"] = meta.cols;
  j["ensemble"] = meta.ensemble.has_value()
                      ? nlohmann::ordered_json(*meta.ensemble)
                      : nlohmann::ordered_json(nullptr);
  j["seed"] = meta.seed.has_value() ? nlohmann::ordered_json(*meta.seed)
                                    : nlohmann::ordered_json(nullptr);
  std::ofstream out(meta_path_for(csv_path));
  if (!out)
    throw ArgumentError("cannot write metadata for " + csv_path.string());
  out << j.dump(2) << '\n';
}

}  // namespace nsc
