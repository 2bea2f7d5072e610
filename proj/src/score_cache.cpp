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

#include "nsc/score_cache.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "nsc/combinatorics.hpp"
#include "nsc/errors.hpp"
#include "nsc/matrix_io.hpp"

namespace nsc {

namespace {

void fnv1a(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
}

}  // namespace

std::string matrix_content_key(const DenseMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  const std::int64_t rows = m.rows(), cols = m.cols();
  fnv1a(h, &rows, sizeof rows);
  fnv1a(h, &cols, sizeof cols);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      fnv1a(h, &v, sizeof v);
    }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_scores_csv(std::ostream& out,
                      const std::vector<SubsetScore>& scores) {
  out << "subset_indices;alpha\n";
  for (const SubsetScore& s : scores) {
    for (std::size_t i = 0; i < s.indices.size(); ++i) {
      if (i > 0) out << ' ';
      out << s.indices[i];
    }
    out << ';' << format_double(s.score.alpha) << '\n';
  }
}

std::vector<SubsetScore> read_scores_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("subset_indices;alpha", 0) != 0)
    throw ArgumentError("score file: missing header");
  std::vector<SubsetScore> scores;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t sep = line.find(';');
    if (sep == std::string::npos)
      throw ArgumentError("score file: missing ';' separator");
    SubsetScore s;
    {
      std::stringstream ss(line.substr(0, sep));
      int idx;
      while (ss >> idx) s.indices.push_back(idx);
      if (s.indices.empty())
        throw ArgumentError("score file: empty subset");
    }
    try {
      s.score.alpha = std::stod(line.substr(sep + 1));
    } catch (const std::exception&) {
      throw ArgumentError("score file: malformed alpha");
    }
    if (!(s.score.alpha >= 0.0 && s.score.alpha <= 1.0))
      throw ArgumentError("score file: alpha out of [0,1]");
    // alpha = 1 can only come from an unbounded subset program.
    s.score.beta_unbounded = (s.score.alpha == 1.0);
    scores.push_back(std::move(s));
  }
  return scores;
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("NSC_CACHE_DIR"); env && *env)
    return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "nscert";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "nscert";
  return std::filesystem::path(".nscert-cache");
}

namespace {

std::filesystem::path cache_file(const std::filesystem::path& dir,
                                 const DenseMatrix& H, int l) {
  return dir / (matrix_content_key(H) + "_l" + std::to_string(l) +
                ".scores.csv");
}

}  // namespace

std::optional<std::vector<SubsetScore>> load_cached_scores(
    const std::filesystem::path& dir, const DenseMatrix& H, int l) {
  std::ifstream in(cache_file(dir, H, l));
  if (!in) return std::nullopt;
  try {
    std::vector<SubsetScore> scores = read_scores_csv(in);
    const int n = static_cast<int>(H.rows());
    if (scores.size() != binomial(n, l)) return std::nullopt;
    std::vector<int> expect = first_combination(l);
    for (const SubsetScore& s : scores) {
      if (s.indices != expect) return std::nullopt;
      next_combination(expect, n);
    }
    return scores;
  } catch (const Error&) {
    return std::nullopt;  // corrupt cache entry counts as a miss
  }
}

void store_cached_scores(const std::filesystem::path& dir,
                         const DenseMatrix& H, int l,
                         const std::vector<SubsetScore>& scores) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path target = cache_file(dir, H, l);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;  // caching is best-effort
    write_scores_csv(out, scores);
  }
  std::filesystem::rename(tmp, target, ec);
}

}  // namespace nsc
