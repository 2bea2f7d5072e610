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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsc/ensembles.hpp"
#include "nsc/errors.hpp"
#include "nsc/linalg.hpp"
#include "nsc/matrix_io.hpp"
#include "nsc/oracle.hpp"
#include "nsc/report_io.hpp"
#include "nsc/sandwich.hpp"
#include "nsc/score_cache.hpp"

namespace {

using nlohmann::ordered_json;

struct CommonOpts {
  double feas_tol = 1e-9;
  double cmp_tol = 1e-9;
  double basis_tol = 1e-10;  // relative to max-abs of A
  unsigned threads = 0;
  bool no_cache = false;
  bool as_basis = false;
};

void add_tolerance_flags(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--feas-tol", c.feas_tol, "LP feasibility tolerance")
      ->capture_default_str();
  cmd->add_option("--cmp-tol", c.cmp_tol, "bound comparison tolerance")
      ->capture_default_str();
  cmd->add_option("--basis-tol", c.basis_tol,
                  "null-space residual tolerance, relative to max|A|")
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  cmd->add_flag("--no-cache", c.no_cache, "disable the score cache");
}

nsc::SolveOptions to_solve_options(const CommonOpts& c) {
  nsc::SolveOptions opts;
  opts.feas_tol = c.feas_tol;
  opts.cmp_tol = c.cmp_tol;
  opts.threads = c.threads;
  return opts;
}

struct LoadedBasis {
  nsc::DenseMatrix H;
  std::string source_kind;  // "A" or "H"
  std::optional<nsc::MatrixMeta> meta;
};

// A sensing matrix is wide, a basis is tall; the sidecar (or --as-basis)
// overrides the shape heuristic.
LoadedBasis load_basis(const std::filesystem::path& path,
                       const CommonOpts& c) {
  LoadedBasis loaded;
  const nsc::DenseMatrix raw = nsc::read_matrix_csv(path);
  loaded.meta = nsc::read_matrix_meta(path);
  std::string kind;
  if (c.as_basis)
    kind = "H";
  else if (loaded.meta.has_value())
    kind = loaded.meta->kind;
  else
    kind = raw.rows() > raw.cols() ? "H" : "A";
  loaded.source_kind = kind;
  if (kind == "H") {
    if (raw.rows() <= raw.cols())
      throw nsc::ArgumentError(
          "a null-space basis must be tall (rows > cols); got " +
          std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()));
    loaded.H = raw;
  } else {
    const double tol = c.basis_tol * nsc::max_abs(raw);
    loaded.H = nsc::null_space_basis(raw, tol).H;
  }
  return loaded;
}

std::vector<nsc::SubsetScore> scores_with_cache(const nsc::DenseMatrix& H,
                                                int l,
                                                const nsc::SolveOptions& opts,
                                                bool use_cache) {
  const auto dir = nsc::default_cache_dir();
  if (use_cache)
    if (auto cached = nsc::load_cached_scores(dir, H, l)) return *cached;
  auto scores = nsc::score_all_subsets(H, l, opts);
  if (use_cache) nsc::store_cached_scores(dir, H, l, scores);
  return scores;
}

ordered_json inputs_json(const std::string& command, const CommonOpts& c) {
  ordered_json j;
  j["command"] = command;
  j["feas_tol"] = c.feas_tol;
  j["cmp_tol"] = c.cmp_tol;
  j["basis_tol"] = c.basis_tol;
  j["threads"] = c.threads;
  j["cache"] = !c.no_cache;
  return j;
}

void emit_report(const ordered_json& j, const std::string& report_path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out)
      throw nsc::ArgumentError("cannot write report " + report_path);
    out << text;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int run_gen(const std::string& ensemble, int rows, int cols,
            std::uint64_t seed, const std::string& out) {
  nsc::EnsembleSpec spec;
  spec.kind = nsc::parse_ensemble_kind(ensemble);
  spec.rows = rows;
  spec.cols = cols;
  spec.seed = seed;
  std::uint64_t used = seed;
  const nsc::DenseMatrix A = nsc::generate(spec, &used);
  nsc::write_matrix_csv(out, A);
  nsc::MatrixMeta meta;
  meta.kind = "A";
  meta.rows = rows;
  meta.cols = cols;
  meta.ensemble = ensemble;
  meta.seed = static_cast<std::int64_t>(used);
  nsc::write_matrix_meta(out, meta);

  ordered_json j;
  j["written"] = out;
  j["meta"] = nsc::meta_path_for(out).string();
  j["ensemble"] = ensemble;
  j["rows"] = rows;
  j["cols"] = cols;
  j["seed"] = used;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_nullspace(const std::string& matrix, const std::string& out,
                  const CommonOpts& c) {
  const nsc::DenseMatrix A = nsc::read_matrix_csv(matrix);
  const auto meta_in = nsc::read_matrix_meta(matrix);
  const double tol = c.basis_tol * nsc::max_abs(A);
  const nsc::NullBasis basis = nsc::null_space_basis(A, tol);
  nsc::write_matrix_csv(out, basis.H);
  nsc::MatrixMeta meta;
  meta.kind = "H";
  meta.rows = static_cast<int>(basis.H.rows());
  meta.cols = static_cast<int>(basis.H.cols());
  if (meta_in.has_value()) {
    meta.ensemble = meta_in->ensemble;
    meta.seed = meta_in->seed;
  }
  nsc::write_matrix_meta(out, meta);

  ordered_json j;
  j["written"] = out;
  j["rows"] = meta.rows;
  j["cols"] = meta.cols;
  j["residual"] = basis.residual;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_bound(const std::string& matrix, int k, int l,
              const std::string& method, const std::string& report_path,
              const CommonOpts& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedBasis loaded = load_basis(matrix, c);
  const nsc::SolveOptions opts = to_solve_options(c);
  const int n = static_cast<int>(loaded.H.rows());
  const int m = static_cast<int>(loaded.H.cols());

  const int l_eff = method == "pick1" ? 1 : std::min(l, k);
  const auto scores = scores_with_cache(loaded.H, l_eff, opts, !c.no_cache);

  nsc::BoundReport bound;
  if (method == "pick1")
    bound = nsc::pick_one_bound(scores, k);
  else if (method == "pickl")
    bound = nsc::pick_l_bound(scores, k, l_eff);
  else if (method == "opt")
    bound = nsc::pick_l_optimized_bound(scores, k, l_eff, n, opts);
  else
    throw nsc::ArgumentError("unknown bound method \"" + method + "\"");

  ordered_json j;
  j["n"] = n;
  j["m"] = m;
  j["k"] = k;
  j["l"] = l_eff;
  j["rho"] = static_cast<double>(n - m) / n;
  j["alpha"] = bound.bound;
  j["method"] = nsc::bound_method_name(bound.method);
  j["nsc_certified"] = bound.nsc_certified;
  j["wall_seconds"] = seconds_since(t0);
  ordered_json in = inputs_json("bound", c);
  in["matrix"] = matrix;
  in["source_kind"] = loaded.source_kind;
  in["k"] = k;
  in["l"] = l;
  in["method"] = method;
  j["inputs"] = in;
  emit_report(j, report_path);
  return 0;
}

int run_exact(const std::string& matrix, int k, int l,
              const std::string& trace_path, const std::string& report_path,
              const CommonOpts& c) {
  const LoadedBasis loaded = load_basis(matrix, c);
  const nsc::SolveOptions opts = to_solve_options(c);
  const int l_eff = std::min(l, k);
  const auto scores = scores_with_cache(loaded.H, l_eff, opts, !c.no_cache);

  std::ofstream trace_out;
  nsc::TraceSink sink;
  if (!trace_path.empty()) {
    trace_out.open(trace_path);
    if (!trace_out)
      throw nsc::ArgumentError("cannot write trace " + trace_path);
    nsc::write_trace_header(trace_out);
    sink = [&trace_out](const nsc::SandwichTraceRow& row) {
      nsc::write_trace_row(trace_out, row);
      trace_out.flush();
    };
  }

  const nsc::SandwichResult res =
      nsc::sandwich(loaded.H, k, l_eff, opts, sink, &scores);

  ordered_json j = nsc::report_to_json(res.report);
  j["l"] = l_eff;
  j["beta_unbounded"] = res.alpha.beta_unbounded;
  j["best_set"] = res.best_set.has_value() ? ordered_json(*res.best_set)
                                           : ordered_json(nullptr);
  ordered_json in = inputs_json("exact", c);
  in["matrix"] = matrix;
  in["source_kind"] = loaded.source_kind;
  in["k"] = k;
  in["l"] = l;
  j["inputs"] = in;
  emit_report(j, report_path);
  return 0;
}

int run_oracle(const std::string& matrix, int k,
               const std::string& report_path, const CommonOpts& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedBasis loaded = load_basis(matrix, c);
  const nsc::SolveOptions opts = to_solve_options(c);
  const nsc::OracleResult res = nsc::exhaustive_alpha(loaded.H, k, opts);

  nsc::VerificationReport rep;
  rep.n = static_cast<int>(loaded.H.rows());
  rep.m = static_cast<int>(loaded.H.cols());
  rep.k = k;
  rep.rho = static_cast<double>(rep.n - rep.m) / rep.n;
  rep.alpha_k = res.alpha.alpha;
  rep.method = "Exhaustive";
  rep.steps_examined = res.subsets_examined;
  if (res.alpha.alpha < 0.5) rep.max_certified_k = k;
  rep.wall_seconds = seconds_since(t0);

  ordered_json j = nsc::report_to_json(rep);
  j["beta_unbounded"] = res.alpha.beta_unbounded;
  j["best_set"] = res.best_set;
  ordered_json in = inputs_json("oracle", c);
  in["matrix"] = matrix;
  in["source_kind"] = loaded.source_kind;
  in["k"] = k;
  j["inputs"] = in;
  emit_report(j, report_path);
  return 0;
}

int run_verify(const std::string& matrix, int kmax, int l,
               const std::string& mode, const std::string& report_path,
               bool early_stop, int require_certified, const CommonOpts& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedBasis loaded = load_basis(matrix, c);
  const nsc::SolveOptions opts = to_solve_options(c);

  nsc::VerifyMode vmode;
  if (mode == "exact")
    vmode = nsc::VerifyMode::Exact;
  else if (mode == "pick1")
    vmode = nsc::VerifyMode::Pick1;
  else if (mode == "pickl")
    vmode = nsc::VerifyMode::PickL;
  else if (mode == "opt")
    vmode = nsc::VerifyMode::PickLOptimized;
  else
    throw nsc::ArgumentError("unknown verify mode \"" + mode + "\"");

  const bool use_cache = !c.no_cache;
  const auto reports = nsc::find_max_certified_k(
      loaded.H, kmax, l, vmode, opts, early_stop, [&](int size) {
        return scores_with_cache(loaded.H, size, opts, use_cache);
      });

  ordered_json j;
  j["n"] = static_cast<int>(loaded.H.rows());
  j["m"] = static_cast<int>(loaded.H.cols());
  j["kmax"] = kmax;
  j["l"] = l;
  j["mode"] = mode;
  ordered_json results = ordered_json::array();
  for (const auto& rep : reports) results.push_back(nsc::report_to_json(rep));
  j["results"] = results;
  const auto certified = reports.back().max_certified_k;
  j["max_certified_k"] =
      certified.has_value() ? ordered_json(*certified) : ordered_json(nullptr);
  j["wall_seconds"] = seconds_since(t0);
  ordered_json in = inputs_json("verify", c);
  in["matrix"] = matrix;
  in["source_kind"] = loaded.source_kind;
  in["kmax"] = kmax;
  in["l"] = l;
  in["mode"] = mode;
  in["early_stop"] = early_stop;
  j["inputs"] = in;
  emit_report(j, report_path);

  if (require_certified > 0 &&
      (!certified.has_value() || *certified < require_certified))
    throw nsc::ArgumentError(
        "NSC not certifiable at the requested sparsity " +
        std::to_string(require_certified) +
        (certified.has_value()
             ? " (certified up to " + std::to_string(*certified) + ")"
             : " (no k certified)"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nscert: l1-recovery null space condition certification for "
      "compressed-sensing matrices"};
  app.require_subcommand(1);

  CommonOpts c;

  std::string gen_ensemble = "gaussian", gen_out;
  int gen_rows = 0, gen_cols = 0;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "Generate a sensing matrix");
  gen->add_option("--ensemble", gen_ensemble, "gaussian|bernoulli|fourier")
      ->capture_default_str();
  gen->add_option("--rows", gen_rows, "measurement count (n - m)")->required();
  gen->add_option("--cols", gen_cols, "signal length (n)")->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "output CSV path")->required();

  std::string ns_matrix, ns_out;
  CLI::App* ns = app.add_subcommand("nullspace",
                                    "Compute an orthonormal null-space basis");
  ns->add_option("--matrix", ns_matrix, "sensing matrix CSV")->required();
  ns->add_option("--out", ns_out, "output basis CSV path")->required();
  add_tolerance_flags(ns, c);

  std::string b_matrix, b_method = "pickl", b_report;
  int b_k = 0, b_l = 2;
  CLI::App* bound = app.add_subcommand("bound", "Polynomial-time upper bound");
  bound->add_option("--matrix", b_matrix, "matrix CSV (A or H)")->required();
  bound->add_option("--k", b_k, "target sparsity")->required();
  bound->add_option("--l", b_l, "subset size")->capture_default_str();
  bound->add_option("--method", b_method, "pick1|pickl|opt")
      ->capture_default_str();
  bound->add_option("--report", b_report, "report JSON path");
  bound->add_flag("--as-basis", c.as_basis, "treat the input as H");
  add_tolerance_flags(bound, c);

  std::string e_matrix, e_trace, e_report;
  int e_k = 0, e_l = 2;
  CLI::App* exact =
      app.add_subcommand("exact", "Exact alpha_k via the sandwiching search");
  exact->add_option("--matrix", e_matrix, "matrix CSV (A or H)")->required();
  exact->add_option("--k", e_k, "target sparsity")->required();
  exact->add_option("--l", e_l, "subset size for the bounds")
      ->capture_default_str();
  exact->add_option("--trace", e_trace, "per-step trace CSV path");
  exact->add_option("--report", e_report, "report JSON path");
  exact->add_flag("--as-basis", c.as_basis, "treat the input as H");
  add_tolerance_flags(exact, c);

  std::string o_matrix, o_report;
  int o_k = 0;
  CLI::App* oracle =
      app.add_subcommand("oracle", "Exhaustive alpha_k over all supports");
  oracle->add_option("--matrix", o_matrix, "matrix CSV (A or H)")->required();
  oracle->add_option("--k", o_k, "target sparsity")->required();
  oracle->add_option("--report", o_report, "report JSON path");
  oracle->add_flag("--as-basis", c.as_basis, "treat the input as H");
  add_tolerance_flags(oracle, c);

  std::string v_matrix, v_mode = "exact", v_report;
  int v_kmax = 0, v_l = 2, v_require = 0;
  bool v_early = false;
  CLI::App* verify =
      app.add_subcommand("verify", "Sweep k = 1..kmax and certify the NSC");
  verify->add_option("--matrix", v_matrix, "matrix CSV (A or H)")->required();
  verify->add_option("--kmax", v_kmax, "largest sparsity to test")->required();
  verify->add_option("--l", v_l, "subset size")->capture_default_str();
  verify->add_option("--mode", v_mode, "exact|pick1|pickl|opt")
      ->capture_default_str();
  verify->add_option("--report", v_report, "report JSON path");
  verify->add_flag("--early-stop", v_early,
                   "stop once further k cannot certify");
  verify->add_option("--require-certified", v_require,
                     "exit 1 unless this sparsity is certified");
  verify->add_flag("--as-basis", c.as_basis, "treat the input as H");
  add_tolerance_flags(verify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  try {
    if (gen->parsed())
      return run_gen(gen_ensemble, gen_rows, gen_cols, gen_seed, gen_out);
    if (ns->parsed()) return run_nullspace(ns_matrix, ns_out, c);
    if (bound->parsed())
      return run_bound(b_matrix, b_k, b_l, b_method, b_report, c);
    if (exact->parsed())
      return run_exact(e_matrix, e_k, e_l, e_trace, e_report, c);
    if (oracle->parsed()) return run_oracle(o_matrix, o_k, o_report, c);
    if (verify->parsed())
      return run_verify(v_matrix, v_kmax, v_l, v_mode, v_report, v_early,
                        v_require, c);
  } catch (const nsc::Error& e) {
    ordered_json err;
    err["error"] = e.kind();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = "Error";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 2;
}
