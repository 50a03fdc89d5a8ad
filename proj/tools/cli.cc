// Copyright 2026 The nsgc Authors.
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

#include "cli.h"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nsgc/eigensolver.h"
#include "nsgc/error.h"
#include "nsgc/filters.h"
#include "nsgc/graph.h"
#include "nsgc/harness/experiment.h"
#include "nsgc/harness/io.h"
#include "nsgc/nsgn/train.h"
#include "nsgc/spectral.h"

namespace nsgc::cli {

namespace {

namespace fs = std::filesystem;
using harness::format_exact;
using harness::format_number;

using FileList = std::vector<std::pair<fs::path, std::string>>;

// The symmetric matrix a spectral command analyses: one of the graph matrices
// (rw_norm through its symmetric similarity transform) or S^eps of `base`.
struct MatrixChoice {
  std::string family = "raw_aug";
  double eps = 0.5;
  std::string base = "raw_aug";
};

SymMatrix analysis_matrix(const Graph& g, const MatrixChoice& m) {
  if (m.family == "power_eps") {
    const EigenDecomposition d = eig_sym(spectral_matrix(g, parse_basis_family(m.base)));
    return non_spatial_basis(d, m.eps);
  }
  return spectral_matrix(g, parse_basis_family(m.family));
}

void add_matrix_options(CLI::App* cmd, MatrixChoice& m) {
  cmd->add_option("--family", m.family,
                  "raw_aug, sym_norm, rw_norm, laplacian or power_eps")
      ->capture_default_str();
  cmd->add_option("--eps", m.eps, "exponent for power_eps, in (0, 1)")->capture_default_str();
  cmd->add_option("--base", m.base, "matrix whose powers power_eps takes")
      ->capture_default_str();
}

// ---- basis -----------------------------------------------------------------

struct BasisArgs {
  std::string graph;
  std::string family = "power_eps";
  std::optional<double> eps;
  int k = 1;
  std::string base = "raw_aug";
  std::string out;
};

FileList run_basis(const BasisArgs& a) {
  const Graph g = harness::load_graph(a.graph);
  nsgn::BasisSpec spec;
  spec.kind = nsgn::parse_basis_kind(a.family);
  spec.k = a.k;
  spec.base = parse_basis_family(a.base);
  if (a.eps) {
    if (spec.kind != nsgn::BasisKind::kPowerEps) {
      throw Error(ErrorCode::kBadConfig, "--eps applies to the power_eps family only");
    }
    spec.eps = *a.eps;
  }
  const BasisStack stack = nsgn::build_basis(g, spec);
  if (stack.overflowed()) {
    throw Error(ErrorCode::kDomainError, "basis powers overflowed");
  }
  std::string csv = "i,row,col,value\n";
  for (size_t i = 0; i < stack.mats.size(); ++i) {
    const Matrix& m = stack.mats[i];
    for (Index r = 0; r < m.rows(); ++r) {
      for (Index c = 0; c < m.cols(); ++c) {
        csv += std::to_string(i) + "," + std::to_string(r) + "," + std::to_string(c) + "," +
               format_exact(m(r, c)) + "\n";
      }
    }
  }
  return {{a.out, csv}};
}

// ---- spectrum --------------------------------------------------------------

struct SpectrumArgs {
  std::string graph;
  MatrixChoice matrix;
  std::string out;
};

FileList run_spectrum(const SpectrumArgs& a) {
  const Graph g = harness::load_graph(a.graph);
  const EigenDecomposition d = eig_sym(analysis_matrix(g, a.matrix));
  const SpectrumStats stats = spectrum_stats(d);
  std::string csv = "quantity,index,value\n";
  for (Index i = 0; i < d.n(); ++i) {
    csv += "eigenvalue," + std::to_string(i) + "," + format_number(d.eigvals(i)) + "\n";
  }
  csv += "spectral_gap_ratio,," + format_number(stats.spectral_gap_ratio) + "\n";
  csv += "condition_number,," + format_number(stats.condition_number) + "\n";
  csv += "num_zero,," + std::to_string(stats.num_zero) + "\n";
  return {{a.out, csv}};
}

// ---- converge --------------------------------------------------------------

struct ConvergeArgs {
  std::string graph;
  MatrixChoice matrix;
  std::string signal = "random";
  int kmax = 50;
  std::uint64_t seed = 0;
  std::string out;
};

Vector gaussian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

FileList run_converge(const ConvergeArgs& a) {
  if (a.kmax < 0) throw Error(ErrorCode::kDomainError, "--kmax must be >= 0");
  const Graph g = harness::load_graph(a.graph);
  const EigenDecomposition d = eig_sym(analysis_matrix(g, a.matrix));
  const Index n = d.n();
  std::mt19937_64 rng(a.seed);
  Vector h;
  if (a.signal == "random") {
    h = gaussian(n, rng);
  } else if (a.signal.rfind("onehot:", 0) == 0) {
    const std::string idx = a.signal.substr(7);
    std::size_t used = 0;
    long node = -1;
    try {
      node = std::stol(idx, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != idx.size() || idx.empty()) {
      throw Error(ErrorCode::kBadConfig, "bad --signal '" + a.signal + "'");
    }
    if (node < 0 || node >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "one-hot index " + idx + " outside [0, " + std::to_string(n) + ")");
    }
    h = Vector::Zero(n);
    h(node) = 1.0;
  } else {
    throw Error(ErrorCode::kBadConfig,
                "bad --signal '" + a.signal + "' (expected random or onehot:IDX)");
  }
  // The companion signal for the pairwise cosine is always random.
  const Vector h_prime = gaussian(n, rng);
  const ConvergenceTrajectory t = convergence_trajectory(d, h, h_prime, a.kmax);
  std::string csv = "k,cos_p1,cos_pn,cos_pair,flags\n";
  for (const ConvergenceRecord& r : t.records) {
    csv += std::to_string(r.k) + "," + format_number(r.cos_p1) + "," + format_number(r.cos_pn) +
           "," + (r.cos_pair ? format_number(*r.cos_pair) : std::string()) + "," +
           trajectory_flags_string(r.flags) + "\n";
  }
  return {{a.out, csv}};
}

// ---- fit-filter ------------------------------------------------------------

struct FitFilterArgs {
  std::string graph;
  std::string family = "raw_aug";
  double eps = 0.5;
  int k = 2;
  std::string desired;
  std::string out;
};

// Whitespace- or comma-separated numbers.
Vector read_numbers(const fs::path& path) {
  std::string text = harness::read_text_file(path);
  for (char& c : text) {
    if (c == ',' || c == ';' || c == '[' || c == ']') c = ' ';
  }
  std::istringstream in(text);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw Error(ErrorCode::kParseError,
                  path.string() + ": '" + token + "' is not a number");
    }
    values.push_back(v);
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

FileList run_fit_filter(const FitFilterArgs& a) {
  const Graph g = harness::load_graph(a.graph);
  const EigenDecomposition d = eig_sym(spectral_matrix(g, parse_basis_family(a.family)));
  const Vector desired = read_numbers(a.desired);
  const FilterFit fit = fit_filter(d, desired, a.eps, a.k);
  std::string csv = "quantity,index,value\n";
  for (Index i = 0; i < fit.theta.size(); ++i) {
    csv += "theta," + std::to_string(i) + "," + format_number(fit.theta(i)) + "\n";
  }
  csv += "residual,," + format_number(fit.residual) + "\n";
  csv += "rank,," + std::to_string(fit.rank) + "\n";
  csv += "rank_deficient,," + std::string(fit.rank_deficient ? "1" : "0") + "\n";
  return {{a.out, csv}};
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

FileList run_train(const TrainArgs& a, std::ostream& log) {
  harness::ExperimentConfig config =
      harness::parse_experiment_config(harness::read_text_file(a.config));
  config.seeds = {a.seed ? *a.seed : config.seeds.empty() ? 0 : config.seeds.front()};
  const harness::ExperimentReport report = harness::run_experiment(
      config, [&log](const std::string& msg) { log << msg << "\n"; });
  const harness::SeedResult& r = report.seeds.front();
  nsgn::TrainConfig trained = config.train;
  trained.seed = r.seed;
  const fs::path dir(a.out);
  return {{dir / "checkpoint.json", harness::checkpoint_to_json(trained, r.params)},
          {dir / "metrics.csv", harness::training_metrics_csv(r)}};
}

// ---- ablate ----------------------------------------------------------------

struct AblateArgs {
  std::string grid;
  std::string out;
};

FileList run_ablate(const AblateArgs& a, std::ostream& log) {
  const int threads = harness::threads_from_env();
  const harness::AblationResult result = harness::run_ablation_grid(
      harness::read_text_file(a.grid), threads,
      [&log](const std::string& msg) { log << msg << "\n"; });
  const fs::path dir(a.out);
  FileList files{{dir / "ablation.csv", harness::ablation_summary_csv(result)},
                 {dir / "ablation_seeds.csv", harness::ablation_seed_csv(result)}};
  for (const harness::AblationCell& cell : result.cells) {
    if (!cell.report) continue;
    files.emplace_back(dir / "cells" / ("cell_" + std::to_string(cell.index) + ".csv"),
                       harness::experiment_metrics_csv(*cell.report));
  }
  return files;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out + "\"";
}

void error_line(std::ostream& err, std::string_view code, const std::string& message) {
  err << "error code=" << code << " message=" << quoted(message) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nsgc: non-spatial graph convolution toolkit", "nsgc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nsgc 0.1.0");

  BasisArgs basis;
  CLI::App* basis_cmd = app.add_subcommand("basis", "write a basis stack as CSV");
  basis_cmd->add_option("--graph", basis.graph, "graph JSON")->required();
  basis_cmd->add_option("--family", basis.family, "raw_aug, sym_norm, rw_norm or power_eps")
      ->capture_default_str();
  basis_cmd->add_option("--eps", basis.eps, "exponent for power_eps, in (0, 1)");
  basis_cmd->add_option("--k", basis.k, "basis order")->capture_default_str();
  basis_cmd->add_option("--base", basis.base, "matrix whose powers power_eps takes")
      ->capture_default_str();
  basis_cmd->add_option("--out", basis.out, "output CSV")->required();

  SpectrumArgs spectrum;
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues and spectrum statistics");
  spectrum_cmd->add_option("--graph", spectrum.graph, "graph JSON")->required();
  add_matrix_options(spectrum_cmd, spectrum.matrix);
  spectrum_cmd->add_option("--out", spectrum.out, "output CSV")->required();

  ConvergeArgs converge;
  CLI::App* converge_cmd =
      app.add_subcommand("converge", "cosine trajectory of S^k h toward the eigenvectors");
  converge_cmd->add_option("--graph", converge.graph, "graph JSON")->required();
  add_matrix_options(converge_cmd, converge.matrix);
  converge_cmd->add_option("--signal", converge.signal, "random or onehot:IDX")
      ->capture_default_str();
  converge_cmd->add_option("--kmax", converge.kmax, "largest power")->capture_default_str();
  converge_cmd->add_option("--seed", converge.seed, "signal seed")->capture_default_str();
  converge_cmd->add_option("--out", converge.out, "output CSV")->required();

  FitFilterArgs fit;
  CLI::App* fit_cmd =
      app.add_subcommand("fit-filter", "least-squares filter coefficients for a response");
  fit_cmd->add_option("--graph", fit.graph, "graph JSON")->required();
  fit_cmd->add_option("--family", fit.family, "matrix whose |eigenvalues|^eps are used")
      ->capture_default_str();
  fit_cmd->add_option("--eps", fit.eps, "exponent, > 0")->capture_default_str();
  fit_cmd->add_option("--k", fit.k, "filter order")->capture_default_str();
  fit_cmd->add_option("--desired", fit.desired,
                      "file with one desired response per eigenvalue, in order of "
                      "descending |eigenvalue|")
      ->required();
  fit_cmd->add_option("--out", fit.out, "output CSV")->required();

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "train one model on a synthetic task");
  train_cmd->add_option("--config", train.config, "experiment config JSON")->required();
  train_cmd->add_option("--seed", train.seed, "seed (default: first entry of seeds)");
  train_cmd->add_option("--out", train.out, "output directory")->required();

  AblateArgs ablate;
  CLI::App* ablate_cmd = app.add_subcommand("ablate", "run an ablation grid");
  ablate_cmd->add_option("--grid", ablate.grid, "grid JSON")->required();
  ablate_cmd->add_option("--out", ablate.out, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "UsageError", e.what());
    err << app.help();
    return kExitUsage;
  }

  try {
    FileList files;
    if (basis_cmd->parsed()) {
      files = run_basis(basis);
    } else if (spectrum_cmd->parsed()) {
      files = run_spectrum(spectrum);
    } else if (converge_cmd->parsed()) {
      files = run_converge(converge);
    } else if (fit_cmd->parsed()) {
      files = run_fit_filter(fit);
    } else if (train_cmd->parsed()) {
      files = run_train(train, out);
    } else if (ablate_cmd->parsed()) {
      files = run_ablate(ablate, out);
    }
    harness::commit_files(files);
  } catch (const Error& e) {
    error_line(err, error_code_name(e.code()), e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    error_line(err, "Internal", e.what());
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace nsgc::cli
