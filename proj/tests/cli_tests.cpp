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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nsc/linalg.hpp"
#include "nsc/matrix_io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "nscert_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args) {
  const fs::path dir = work_dir();
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = "cd '" + dir.string() + "' && NSC_CACHE_DIR='" +
                          (dir / "cache").string() + "' '" + NSC_CLI_PATH +
                          "' " + args + " > '" + out.string() + "' 2> '" +
                          err.string() + "'";
  const int raw = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  res.out = slurp(out);
  res.err = slurp(err);
  return res;
}

// Report text with the timing lines removed; everything else must be
// byte-identical across reruns.
std::string strip_wall_seconds(const std::string& text) {
  std::stringstream in(text), out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("wall_seconds") == std::string::npos) out << line << '\n';
  return out.str();
}

void write_ones_column(const fs::path& p, int n) {
  std::ofstream out(p);
  for (int i = 0; i < n; ++i) out << "1\n";
}

}  // namespace

TEST_CASE("gen is deterministic and writes the sidecar") {
  auto first = run_cli(
      "gen --ensemble bernoulli --rows 4 --cols 10 --seed 3 --out b1.csv");
  REQUIRE(first.exit_code == 0);
  auto second = run_cli(
      "gen --ensemble bernoulli --rows 4 --cols 10 --seed 3 --out b2.csv");
  REQUIRE(second.exit_code == 0);
  CHECK(slurp(work_dir() / "b1.csv") == slurp(work_dir() / "b2.csv"));

  const auto meta = nsc::read_matrix_meta(work_dir() / "b1.csv");
  REQUIRE(meta.has_value());
  CHECK(meta->kind == "A");
  CHECK(meta->ensemble == "bernoulli");
  CHECK(meta->seed == 3);

  const nsc::DenseMatrix A = nsc::read_matrix_csv(work_dir() / "b1.csv");
  for (Eigen::Index r = 0; r < A.rows(); ++r)
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      CHECK(std::abs(A(r, c)) == 1.0);
}

TEST_CASE("nullspace writes a valid basis") {
  REQUIRE(run_cli("gen --ensemble gaussian --rows 5 --cols 12 --seed 9 "
                  "--out ns_a.csv")
              .exit_code == 0);
  REQUIRE(run_cli("nullspace --matrix ns_a.csv --out ns_h.csv").exit_code == 0);
  const nsc::DenseMatrix A = nsc::read_matrix_csv(work_dir() / "ns_a.csv");
  const nsc::DenseMatrix H = nsc::read_matrix_csv(work_dir() / "ns_h.csv");
  REQUIRE(H.rows() == 12);
  REQUIRE(H.cols() == 7);
  CHECK(nsc::validate_basis(A, H, nsc::default_basis_tol(A)));
  const auto meta = nsc::read_matrix_meta(work_dir() / "ns_h.csv");
  REQUIRE(meta.has_value());
  CHECK(meta->kind == "H");
  CHECK(meta->ensemble == "gaussian");  // provenance carried over

  // The sidecar marks the file as a basis, so no second extraction runs;
  // the result matches the run on the sensing matrix itself.
  REQUIRE(run_cli("exact --matrix ns_h.csv --k 1 --l 1 --report ns_h.json")
              .exit_code == 0);
  REQUIRE(run_cli("exact --matrix ns_a.csv --k 1 --l 1 --report ns_a.json")
              .exit_code == 0);
  const json from_h = json::parse(slurp(work_dir() / "ns_h.json"));
  const json from_a = json::parse(slurp(work_dir() / "ns_a.json"));
  CHECK(from_h["inputs"]["source_kind"] == "H");
  CHECK(from_a["inputs"]["source_kind"] == "A");
  CHECK(std::abs(double(from_h["alpha"]) - double(from_a["alpha"])) <= 1e-7);
}

TEST_CASE("verify certifies the all-ones basis up to 4 of 10") {
  write_ones_column(work_dir() / "ones10.csv", 10);
  const auto res = run_cli(
      "verify --matrix ones10.csv --kmax 5 --l 2 --mode exact --as-basis "
      "--report ones_verify.json");
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(slurp(work_dir() / "ones_verify.json"));
  CHECK(j["max_certified_k"] == 4);
  REQUIRE(j["results"].size() == 5);
  for (int k = 1; k <= 5; ++k) {
    const double alpha = j["results"][static_cast<std::size_t>(k - 1)]["alpha"];
    CHECK(std::abs(alpha - k / 10.0) <= 1e-10);
  }
}

TEST_CASE("exact trace closes the sandwich") {
  REQUIRE(run_cli("gen --ensemble gaussian --rows 4 --cols 9 --seed 21 "
                  "--out ex_a.csv")
              .exit_code == 0);
  const auto res = run_cli(
      "exact --matrix ex_a.csv --k 2 --l 1 --trace ex_t.csv --report "
      "ex_r.json");
  REQUIRE(res.exit_code == 0);

  const json j = json::parse(slurp(work_dir() / "ex_r.json"));
  CHECK(j["method"] == "Exact");
  CHECK(j["n"] == 9);
  CHECK(j["m"] == 5);

  std::ifstream trace(work_dir() / "ex_t.csv");
  std::string line, last;
  std::getline(trace, line);
  CHECK(line == "step,K,cub,lpub,exact_alpha,gub,glb");
  while (std::getline(trace, line))
    if (!line.empty()) last = line;
  // Final row: gub and glb fields are the same serialized value.
  const auto tail = last.substr(last.find_last_of(',') + 1);
  const auto rest = last.substr(0, last.find_last_of(','));
  const auto gub = rest.substr(rest.find_last_of(',') + 1);
  CHECK(gub == tail);
}

TEST_CASE("bound report is consistent with exact") {
  REQUIRE(run_cli("gen --ensemble gaussian --rows 4 --cols 8 --seed 33 "
                  "--out bd_a.csv")
              .exit_code == 0);
  REQUIRE(run_cli("bound --matrix bd_a.csv --k 2 --l 2 --method pickl "
                  "--report bd_b.json")
              .exit_code == 0);
  REQUIRE(run_cli("exact --matrix bd_a.csv --k 2 --l 2 --report bd_e.json")
              .exit_code == 0);
  const json b = json::parse(slurp(work_dir() / "bd_b.json"));
  const json e = json::parse(slurp(work_dir() / "bd_e.json"));
  CHECK(double(b["alpha"]) >= double(e["alpha"]) - 1e-8);
  CHECK(b["method"] == "PickL");
}

TEST_CASE("oracle agrees with exact through the CLI") {
  REQUIRE(run_cli("gen --ensemble bernoulli --rows 5 --cols 10 --seed 11 "
                  "--out or_a.csv")
              .exit_code == 0);
  REQUIRE(run_cli("oracle --matrix or_a.csv --k 2 --report or_o.json")
              .exit_code == 0);
  REQUIRE(run_cli("exact --matrix or_a.csv --k 2 --l 1 --report or_e.json")
              .exit_code == 0);
  const json o = json::parse(slurp(work_dir() / "or_o.json"));
  const json e = json::parse(slurp(work_dir() / "or_e.json"));
  CHECK(std::abs(double(o["alpha"]) - double(e["alpha"])) <= 1e-8);
  CHECK(o["method"] == "Exhaustive");
  CHECK(o["steps_examined"] == 45);  // C(10,2), no pruning
}

TEST_CASE("reports are byte-identical across reruns") {
  REQUIRE(run_cli("gen --ensemble gaussian --rows 4 --cols 8 --seed 5 "
                  "--out det_a.csv")
              .exit_code == 0);
  REQUIRE(run_cli("exact --matrix det_a.csv --k 2 --l 1 --report det_1.json "
                  "--trace det_t1.csv")
              .exit_code == 0);
  REQUIRE(run_cli("exact --matrix det_a.csv --k 2 --l 1 --report det_2.json "
                  "--trace det_t2.csv")
              .exit_code == 0);
  CHECK(strip_wall_seconds(slurp(work_dir() / "det_1.json")) ==
        strip_wall_seconds(slurp(work_dir() / "det_2.json")));
  CHECK(slurp(work_dir() / "det_t1.csv") == slurp(work_dir() / "det_t2.csv"));

  // The second run used the score cache; --no-cache must agree on every
  // computational field (the inputs echo legitimately differs).
  REQUIRE(run_cli("exact --matrix det_a.csv --k 2 --l 1 --report det_3.json "
                  "--no-cache")
              .exit_code == 0);
  json with_cache = json::parse(slurp(work_dir() / "det_1.json"));
  json without_cache = json::parse(slurp(work_dir() / "det_3.json"));
  for (json* j : {&with_cache, &without_cache}) {
    j->erase("inputs");
    j->erase("wall_seconds");
  }
  CHECK(with_cache == without_cache);
}

TEST_CASE("usage errors exit 2, domain errors exit 1") {
  CHECK(run_cli("exact --nonsense").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("gen --ensemble cauchy --rows 2 --cols 4 --seed 1 --out x.csv")
            .exit_code == 1);

  write_ones_column(work_dir() / "ones4.csv", 4);
  const auto res =
      run_cli("exact --matrix ones4.csv --k 4 --l 1 --as-basis");  // k >= n
  CHECK(res.exit_code == 1);
  const json err = json::parse(res.err);
  CHECK(err["error"] == "ArgumentError");

  const auto req = run_cli(
      "verify --matrix ones4.csv --kmax 3 --l 1 --mode exact --as-basis "
      "--require-certified 3");
  CHECK(req.exit_code == 1);  // only k = 1 is certifiable on ones(4)
}

TEST_CASE("shape heuristic and --as-basis override") {
  // A 3x2 tall matrix without a sidecar is taken as H directly.
  {
    std::ofstream out(work_dir() / "tall.csv");
    out << "1,0\n0,1\n1,1\n";
  }
  const auto res = run_cli(
      "verify --matrix tall.csv --kmax 2 --l 1 --mode exact --report "
      "tall.json");
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(slurp(work_dir() / "tall.json"));
  CHECK(j["max_certified_k"].is_null());
  CHECK(double(j["results"][0]["alpha"]) == doctest::Approx(0.5));
  CHECK(double(j["results"][1]["alpha"]) == doctest::Approx(1.0));

  // A wide matrix is taken as A: n = cols = 8.
  REQUIRE(run_cli("gen --ensemble gaussian --rows 3 --cols 8 --seed 2 "
                  "--out wide.csv")
              .exit_code == 0);
  fs::remove(work_dir() / "wide.meta.json");
  REQUIRE(run_cli("exact --matrix wide.csv --k 1 --l 1 --report wide.json")
              .exit_code == 0);
  CHECK(json::parse(slurp(work_dir() / "wide.json"))["n"] == 8);
}
