// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nnr/compiler.hpp"
#include "nnr/engine.hpp"
#include "nnr/ensemble.hpp"
#include "nnr/fragile.hpp"
#include "nnr/fragile_io.hpp"
#include "nnr/matrix_io.hpp"
#include "nnr/poly_io.hpp"
#include "nnr/stabilizer.hpp"
#include "nnr/text_io.hpp"

namespace nnr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 3;

// Ordered key: value lines written after every run.
class RunReport {
 public:
  void Add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
  template <typename T>
  void Add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    Add(key, os.str());
  }
  void Bits(const std::string& key, std::size_t bits) {
    auto& slot = key == "input" ? input_bits_ : output_bits_;
    slot = std::max(slot.value_or(0), bits);
  }
  void Write(std::ostream& os) const {
    for (const auto& [k, v] : entries_) os << k << ": " << v << "\n";
    if (input_bits_) os << "input_max_bits: " << *input_bits_ << "\n";
    if (output_bits_) os << "output_max_bits: " << *output_bits_ << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::optional<std::size_t> input_bits_, output_bits_;
};

namespace internal {

struct CliOptions {
  std::string matrix, matrix_a, matrix_w, out, out_a, out_w;
  std::size_t rank = 0;
  std::string mode = "take2";
  double budget_seconds = 60;
  std::size_t starts = 8;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::optional<std::size_t> s, t, p, q;
  std::string rows, cols, params;
  std::size_t n = 0;
  std::size_t blocks = 1;
  std::size_t limit = 64;
  std::string dir;
};

inline bool FileIsQs3(const std::string& path) {
  if (path.empty()) return false;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  LineReader reader(in);
  return ReadMatrixHeader(reader).field == FieldTraits<QS3>::kTag;
}

inline std::string FieldFor(const std::vector<std::string>& paths) {
  for (const auto& p : paths)
    if (FileIsQs3(p)) return std::string(FieldTraits<QS3>::kTag);
  return std::string(FieldTraits<Rat>::kTag);
}

template <ExactField F>
Matrix<F> Input(const std::string& path, const std::string& key, RunReport& report) {
  Matrix<F> m = LoadMatrix<F>(path);
  report.Add("input." + key, path + " (" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  report.Bits("input", m.max_bit_length());
  return m;
}

template <ExactField F>
void Output(const std::string& path, const std::string& key, const Matrix<F>& m, RunReport& report) {
  report.Bits("output", m.max_bit_length());
  if (path.empty()) return;
  SaveMatrix(path, m);
  report.Add("output." + key, path);
}

// Index set from a comma list, or the default when the list is empty.
inline IndexSet IndexOption(const std::string& text, std::size_t universe, IndexSet fallback) {
  if (text.empty()) return fallback;
  return IndexSet::FromUnsorted(ParseIndexList(text), universe);
}

// Lex-first independent set of size k, extended by the smallest unused
// indices when the rank is below k.
template <ExactField F>
IndexSet DefaultAnchor(const Matrix<F>& m, Axis axis, std::size_t k) {
  const std::size_t universe = axis == Axis::kRows ? m.rows() : m.cols();
  std::vector<std::size_t> idx;
  for (auto i : RankAndBasis(m, axis).basis)
    if (idx.size() < k) idx.push_back(i);
  for (std::size_t i = 0; i < universe && idx.size() < k; ++i)
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
  return IndexSet::FromUnsorted(idx, universe);
}

template <ExactField F>
PolySystem<F> CompileCell(const Matrix<F>& m, const CliOptions& o, std::size_t s, std::size_t t,
                          const IndexSet& u, const IndexSet& v) {
  if (o.mode == "take2") return CompileTake2(m, o.rank, s, t, u, v);
  return CompileTake1(m, o.rank, s, t, u, v, o.p.value_or(Binomial(o.rank, s)),
                      o.q.value_or(Binomial(o.rank, t)));
}

template <ExactField F>
void ReportSystem(const PolySystem<F>& sys, RunReport& report) {
  report.Add("vars", sys.var_count);
  for (Family f : {Family::kDetA, Family::kDetW, Family::kNumA, Family::kNumW, Family::kProd})
    report.Add("polys." + ToString(f), sys.count(f));
  report.Add("max_degree", sys.max_degree());
  report.Add("all_variables_used", std::string(sys.all_variables_used() ? "yes" : "no"));
}

template <ExactField F>
int RunStabilize(const CliOptions& o, RunReport& report) {
  Factorization<F> f{Input<F>(o.matrix_a, "a", report), Input<F>(o.matrix_w, "w", report)};
  const Matrix<F> m = o.matrix.empty() ? f.product() : Input<F>(o.matrix, "m", report);
  const auto result = Stabilize(m, f);
  report.Add("updates", result.trace.size());
  report.Add("stable", std::string(IsStable(m, result.factorization) ? "yes" : "no"));
  Output(o.out_a, "a", result.factorization.a, report);
  Output(o.out_w, "w", result.factorization.w, report);
  report.Add("outcome", std::string("stabilized"));
  return kExitOk;
}

template <ExactField F>
int RunCheckStable(const CliOptions& o, RunReport& report) {
  Factorization<F> f{Input<F>(o.matrix_a, "a", report), Input<F>(o.matrix_w, "w", report)};
  const Matrix<F> m = o.matrix.empty() ? f.product() : Input<F>(o.matrix, "m", report);
  const bool stable = IsStable(m, f);
  report.Add("outcome", std::string(stable ? "stable" : "not-stable"));
  return stable ? kExitOk : kExitNo;
}

template <ExactField F>
int RunRecover(const CliOptions& o, RunReport& report) {
  if (o.matrix_a.empty() == o.matrix_w.empty()) {
    throw CLI::ValidationError("recover", "give exactly one of --matrix-a and --matrix-w");
  }
  const Matrix<F> m = Input<F>(o.matrix, "m", report);
  const bool a_side = !o.matrix_a.empty();
  const Ensemble<F> e = a_side ? BuildEnsemble(Input<F>(o.matrix_a, "a", report))
                               : BuildEnsembleFromW(Input<F>(o.matrix_w, "w", report));
  report.Add("side", std::string(a_side ? "A" : "W"));
  report.Add("anchor", e.anchor.str());
  report.Add("transforms", e.size());
  try {
    const Matrix<F> factor = RecoverFactor(m, e);
    Output(o.out, a_side ? "w" : "a", factor, report);
    report.Add("outcome", std::string("recovered"));
    return kExitOk;
  } catch (const RecoveryError& err) {
    report.Add("failure", std::string(err.what()));
    report.Add("outcome", std::string("failed"));
    return kExitNo;
  }
}

template <ExactField F>
int RunCheckPredicate(const CliOptions& o, RunReport& report) {
  const Matrix<F> m = Input<F>(o.matrix, "m", report);
  const auto ea = BuildEnsemble(Input<F>(o.matrix_a, "a", report));
  const auto ew = BuildEnsembleFromW(Input<F>(o.matrix_w, "w", report));
  const auto rep = EvaluatePredicate(m, ea, ew);
  std::size_t failed = 0;
  for (std::size_t j = 0; j < rep.rows; ++j) {
    for (std::size_t i = 0; i < rep.cols; ++i) {
      const auto& c = rep.cell(j, i);
      if (c.failure == CellFailure::kNone) continue;
      if (failed++ == 0) {
        report.Add("first_failure", "(" + std::to_string(j) + "," + std::to_string(i) + ") " + ToString(c.failure));
      }
    }
  }
  report.Add("failed_cells", failed);
  report.Add("outcome", std::string(rep.pass() ? "PASS" : "FAIL"));
  if (!rep.pass()) return kExitNo;
  const auto f = ExtractFactorization(m, ea, ew, rep);
  Output(o.out_a, "a", f.a, report);
  Output(o.out_w, "w", f.w, report);
  return kExitOk;
}

template <ExactField F>
int RunCompile(const CliOptions& o, RunReport& report) {
  const Matrix<F> m = Input<F>(o.matrix, "m", report);
  const std::size_t rho = Rank(m);
  const std::size_t s = o.s.value_or(std::max<std::size_t>(1, std::min(rho, o.rank)));
  const std::size_t t = o.t.value_or(std::max<std::size_t>(1, std::min(rho, o.rank)));
  const IndexSet u = IndexOption(o.rows, m.rows(), DefaultAnchor(m, Axis::kRows, s));
  const IndexSet v = IndexOption(o.cols, m.cols(), DefaultAnchor(m, Axis::kCols, t));
  const auto sys = CompileCell(m, o, s, t, u, v);
  report.Add("mode", o.mode);
  report.Add("cell", "s=" + std::to_string(s) + " t=" + std::to_string(t) + " U=" + u.str() + " V=" + v.str());
  ReportSystem(sys, report);
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error("cannot write '" + o.out + "'");
    WritePolySystem(out, sys);
    report.Add("output.system", o.out);
  }
  report.Add("outcome", std::string("compiled"));
  return kExitOk;
}

template <ExactField F>
int RunExport(const CliOptions& o, RunReport& report) {
  const Matrix<F> m = Input<F>(o.matrix, "m", report);
  DecisionConfig cfg;
  cfg.rank = o.rank;
  cfg.policy = AnchorPolicy::kExhaustive;
  const auto cells = EnumerateCells(m, cfg);
  std::filesystem::create_directories(o.out);
  std::ofstream index(std::filesystem::path(o.out) / "cells.txt");
  if (!index) throw std::runtime_error("cannot write into '" + o.out + "'");
  index << "# file s t U V\n";
  std::size_t written = 0;
  for (const auto& cell : cells) {
    if (written == o.limit) break;
    const auto sys = CompileCell(m, o, cell.s, cell.t, cell.u, cell.v);
    const std::string name = "cell_" + std::to_string(written) + ".poly";
    std::ofstream out(std::filesystem::path(o.out) / name);
    WritePolySystem(out, sys);
    index << name << " " << cell.s << " " << cell.t << " " << JoinIndices(cell.u.indices()) << " "
          << JoinIndices(cell.v.indices()) << "\n";
    ++written;
  }
  report.Add("mode", o.mode);
  report.Add("cells", cells.size());
  report.Add("written", written);
  report.Add("output.dir", o.out);
  report.Add("outcome", std::string(written == cells.size() ? "exported" : "truncated"));
  return kExitOk;
}

template <ExactField F>
int RunDecide(const CliOptions& o, RunReport& report) {
  const Matrix<F> m = Input<F>(o.matrix, "m", report);
  DecisionConfig cfg;
  cfg.rank = o.rank;
  cfg.budget_seconds = o.budget_seconds;
  cfg.starts = o.starts;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  report.Add("rank", o.rank);
  report.Add("seed", std::to_string(o.seed));
  report.Add("budget_seconds", o.budget_seconds);
  report.Add("starts", o.starts);
  const auto outcome = DecideRankPlus(m, cfg);
  report.Add("verdict", ToString(outcome.verdict));
  report.Add("provenance", ToString(outcome.provenance));
  report.Add("cells_tried", outcome.cells_tried);
  report.Add("budget_exhausted", std::string(outcome.budget_exhausted ? "yes" : "no"));
  if (outcome.cell) {
    const auto& c = *outcome.cell;
    report.Add("cell", "s=" + std::to_string(c.s) + " t=" + std::to_string(c.t) + " U=" + c.u.str() +
                           " V=" + c.v.str());
  }
  if (outcome.certificate) {
    std::string a_path, w_path;
    if (!o.out.empty()) {
      std::filesystem::create_directories(o.out);
      a_path = (std::filesystem::path(o.out) / "A.mat").string();
      w_path = (std::filesystem::path(o.out) / "W.mat").string();
    }
    Output(a_path, "a", outcome.certificate->a, report);
    Output(w_path, "w", outcome.certificate->w, report);
  }
  report.Add("outcome", ToString(outcome.verdict));
  switch (outcome.verdict) {
    case DecisionVerdict::kYes: return kExitOk;
    case DecisionVerdict::kNo: return kExitNo;
    case DecisionVerdict::kUnknown: return kExitUnknown;
  }
  return kExitUnknown;
}

// Default tangent parameters k / (2n) for k = 0..n-1.
inline std::vector<QS3> FragileParams(const CliOptions& o) {
  std::vector<QS3> params;
  if (!o.params.empty()) {
    std::string item;
    std::istringstream in(o.params);
    while (std::getline(in, item, ',')) params.push_back(QS3::Parse(item));
    if (o.n != 0 && o.n != params.size()) {
      throw CLI::ValidationError("--params", "expected " + std::to_string(o.n) + " parameters");
    }
    return params;
  }
  if (o.n == 0) throw CLI::ValidationError("fragile gen", "give --n or --params");
  for (std::size_t k = 0; k < o.n; ++k) params.push_back(QS3(Rat(static_cast<long>(k), static_cast<long>(2 * o.n))));
  return params;
}

inline int RunFragileGen(const CliOptions& o, RunReport& report) {
  const auto params = FragileParams(o);
  const auto inst = BuildFragileInstance(params);
  WriteBundle(o.out, inst);
  std::vector<std::string> text;
  for (const auto& p : params) text.push_back(p.str());
  std::string joined;
  for (const auto& t : text) joined += (joined.empty() ? "" : ",") + t;
  report.Add("params", joined);
  report.Add("triangles", inst.n());
  report.Add("points", inst.s.size());
  report.Add("epsilon", inst.epsilon.str());
  report.Add("premises", std::string(VerifyNoPremises(inst).all() ? "pass" : "fail"));
  report.Bits("output", inst.m.max_bit_length());
  report.Add("output.dir", o.out);
  report.Add("outcome", std::string("generated"));
  return kExitOk;
}

inline int RunFragileVerify(const CliOptions& o, RunReport& report) {
  const auto inst = LoadBundle(o.dir);
  report.Add("input.dir", o.dir);
  report.Bits("input", inst.m.max_bit_length());
  const auto rep = VerifyBundle(inst);
  auto yes = [](bool b) { return std::string(b ? "pass" : "fail"); };
  report.Add("check.incidences", yes(rep.incidences_exact));
  report.Add("check.edge_counts", yes(rep.edge_counts));
  report.Add("check.rebuild", yes(rep.matches_rebuild));
  report.Add("check.m_equals_uv", yes(rep.m_equals_uv));
  report.Add("check.m_positive", yes(rep.m_positive));
  report.Add("check.m_rank_three", yes(rep.m_rank_three));
  report.Add("check.facets_at_half", yes(rep.premises.facets_at_half));
  report.Add("check.p_inside_unit_circle", yes(rep.premises.p_inside_unit_circle));
  report.Add("check.triangles_on_unit_circle", yes(rep.premises.triangles_on_unit_circle));
  report.Add("check.no_scaled_triangle_covers_s", yes(rep.premises.no_scaled_triangle_covers_s));
  bool ok = rep.all();
  if (o.blocks > 1 || !o.rows.empty()) {
    const std::size_t universe = inst.s.size() * o.blocks;
    const IndexSet rows = IndexSet::FromUnsorted(ParseIndexList(o.rows), universe);
    report.Add("rows", rows.str());
    report.Add("blocks", o.blocks);
    if (o.blocks == 1) {
      const auto cert = SubmatrixCertificate(inst, rows);
      report.Add("certificate", cert ? "triangle " + std::to_string(cert->triangle) : std::string("none"));
      if (cert) {
        report.Bits("output", std::max(cert->uq_inv.max_bit_length(), cert->qv.max_bit_length()));
        ok = ok && VerifyFactorization(inst.m.select_rows(rows), cert->factorization());
      }
      ok = ok && cert.has_value();
    } else {
      const auto cert = BlockCertificate(inst, o.blocks, rows);
      report.Add("certificate", std::string(cert ? "block-diagonal inner " + std::to_string(cert->inner()) : "none"));
      if (cert) {
        report.Bits("output", std::max(cert->a.max_bit_length(), cert->w.max_bit_length()));
        ok = ok && VerifyFactorization(BlockCompose(inst, o.blocks).select_rows(rows), *cert);
      }
      ok = ok && cert.has_value();
    }
  }
  report.Add("outcome", std::string(ok ? "verified" : "failed"));
  return ok ? kExitOk : kExitNo;
}

template <template <typename> class Run>
int ByField(const std::vector<std::string>& paths, const CliOptions& o, RunReport& report) {
  const std::string field = FieldFor(paths);
  report.Add("field", field);
  if (field == FieldTraits<QS3>::kTag) return Run<QS3>{}(o, report);
  return Run<Rat>{}(o, report);
}

#define NNR_CLI_RUNNER(Name, Fn)                                   \
  template <typename F>                                            \
  struct Name {                                                    \
    int operator()(const CliOptions& o, RunReport& r) const {      \
      return Fn<F>(o, r);                                          \
    }                                                              \
  };
NNR_CLI_RUNNER(StabilizeRunner, RunStabilize)
NNR_CLI_RUNNER(CheckStableRunner, RunCheckStable)
NNR_CLI_RUNNER(RecoverRunner, RunRecover)
NNR_CLI_RUNNER(CheckPredicateRunner, RunCheckPredicate)
NNR_CLI_RUNNER(CompileRunner, RunCompile)
NNR_CLI_RUNNER(ExportRunner, RunExport)
NNR_CLI_RUNNER(DecideRunner, RunDecide)
#undef NNR_CLI_RUNNER

}  // namespace internal

// Parses `args` (without the program name), runs the subcommand and writes
// its report to `out`. Returns the process exit code.
inline int CliDispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using internal::CliOptions;
  CliOptions o;
  CLI::App app{"Exact tools for nonnegative matrix rank", "nnr"};
  app.require_subcommand(1);

  auto factor_pair = [&](CLI::App* cmd) {
    cmd->add_option("--matrix-a", o.matrix_a, "left factor A")->required();
    cmd->add_option("--matrix-w", o.matrix_w, "right factor W")->required();
    cmd->add_option("--matrix", o.matrix, "target M (default A*W)");
  };
  auto* stabilize = app.add_subcommand("stabilize", "stabilize a factorization");
  factor_pair(stabilize);
  stabilize->add_option("--out-a", o.out_a, "output path for A");
  stabilize->add_option("--out-w", o.out_w, "output path for W");

  auto* check_stable = app.add_subcommand("check-stable", "test whether a factorization is stable");
  factor_pair(check_stable);

  auto* recover = app.add_subcommand("recover", "recover the other factor from an ensemble");
  recover->add_option("--matrix", o.matrix, "target M")->required();
  recover->add_option("--matrix-a", o.matrix_a, "A: recover W");
  recover->add_option("--matrix-w", o.matrix_w, "W: recover A");
  recover->add_option("--out", o.out, "output path for the recovered factor");

  auto* predicate = app.add_subcommand("check-predicate", "evaluate the ensemble predicate");
  predicate->add_option("--matrix", o.matrix, "target M")->required();
  predicate->add_option("--matrix-a", o.matrix_a, "A")->required();
  predicate->add_option("--matrix-w", o.matrix_w, "W")->required();
  predicate->add_option("--out-a", o.out_a, "output path for the extracted A");
  predicate->add_option("--out-w", o.out_w, "output path for the extracted W");

  auto system_options = [&](CLI::App* cmd) {
    cmd->add_option("--matrix", o.matrix, "target M")->required();
    cmd->add_option("--rank", o.rank, "target rank r")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--mode", o.mode, "take1 or take2")->check(CLI::IsMember({"take1", "take2"}));
    cmd->add_option("--p", o.p, "take1 cap on B transforms");
    cmd->add_option("--q", o.q, "take1 cap on C transforms");
  };
  auto* compile = app.add_subcommand("compile", "compile the system of one guess cell");
  system_options(compile);
  compile->add_option("--s", o.s, "rank of A");
  compile->add_option("--t", o.t, "rank of W");
  compile->add_option("--rows", o.rows, "row anchor U (comma list)");
  compile->add_option("--cols", o.cols, "column anchor V (comma list)");
  compile->add_option("--out", o.out, "output path for the system");

  auto* exporter = app.add_subcommand("export", "write the systems of all guess cells");
  system_options(exporter);
  exporter->add_option("--out", o.out, "output directory")->required();
  exporter->add_option("--limit", o.limit, "maximum number of cells written");

  auto* decide = app.add_subcommand("decide", "decide rank+(M) <= r");
  decide->add_option("--matrix", o.matrix, "target M")->required();
  decide->add_option("--rank", o.rank, "target rank r")->required()->check(CLI::PositiveNumber);
  decide->add_option("--budget-seconds", o.budget_seconds, "time budget")->check(CLI::PositiveNumber);
  decide->add_option("--starts", o.starts, "numeric starts per inner dimension")->check(CLI::PositiveNumber);
  decide->add_option("--seed", o.seed, "random seed")->envname("NNR_SEED");
  decide->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  decide->add_option("--out", o.out, "directory for the certificate A.mat, W.mat");

  auto* fragile = app.add_subcommand("fragile", "fragile instances");
  fragile->require_subcommand(1);
  auto* gen = fragile->add_subcommand("gen", "generate an instance bundle");
  gen->add_option("--n", o.n, "number of triangles");
  gen->add_option("--params", o.params, "tangent parameters (comma list)");
  gen->add_option("--out", o.out, "bundle directory")->required();
  auto* verify = fragile->add_subcommand("verify", "verify a bundle and optional row certificate");
  verify->add_option("dir", o.dir, "bundle directory")->required();
  verify->add_option("--rows", o.rows, "rows of the (block) matrix (comma list)");
  verify->add_option("--blocks", o.blocks, "number of diagonal blocks")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  RunReport report;
  const auto start = std::chrono::steady_clock::now();
  int code = kExitUsage;
  try {
    using namespace internal;
    if (stabilize->parsed()) {
      report.Add("command", std::string("stabilize"));
      code = ByField<StabilizeRunner>({o.matrix_a, o.matrix_w, o.matrix}, o, report);
    } else if (check_stable->parsed()) {
      report.Add("command", std::string("check-stable"));
      code = ByField<CheckStableRunner>({o.matrix_a, o.matrix_w, o.matrix}, o, report);
    } else if (recover->parsed()) {
      report.Add("command", std::string("recover"));
      code = ByField<RecoverRunner>({o.matrix, o.matrix_a, o.matrix_w}, o, report);
    } else if (predicate->parsed()) {
      report.Add("command", std::string("check-predicate"));
      code = ByField<CheckPredicateRunner>({o.matrix, o.matrix_a, o.matrix_w}, o, report);
    } else if (compile->parsed()) {
      report.Add("command", std::string("compile"));
      code = ByField<CompileRunner>({o.matrix}, o, report);
    } else if (exporter->parsed()) {
      report.Add("command", std::string("export"));
      code = ByField<ExportRunner>({o.matrix}, o, report);
    } else if (decide->parsed()) {
      report.Add("command", std::string("decide"));
      code = ByField<DecideRunner>({o.matrix}, o, report);
    } else if (gen->parsed()) {
      report.Add("command", std::string("fragile gen"));
      code = RunFragileGen(o, report);
    } else if (verify->parsed()) {
      report.Add("command", std::string("fragile verify"));
      code = RunFragileVerify(o, report);
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    report.Add("outcome", std::string("usage-error"));
    code = kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    report.Add("outcome", std::string("invalid"));
    report.Add("error", std::string(e.what()));
    code = kExitNo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    report.Add("outcome", std::string("io-error"));
    report.Add("error", std::string(e.what()));
    code = kExitUsage;
  }
  report.Add("exit_code", code);
  report.Add("elapsed_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  report.Write(out);
  return code;
}

}  // namespace nnr
