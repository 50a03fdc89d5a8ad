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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <algorithm>

#include "nsgc/error.h"
#include "nsgc/harness/experiment.h"
#include "nsgc/harness/io.h"
#include "nsgc/harness/synthetic.h"
#include "nsgc/nsgn/model.h"
#include "test_support.h"

namespace nsgc::harness {
namespace {

using nsgc::testing::graph_from_edges;

Graph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return graph_from_edges(n, edges);
}

Graph star(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return graph_from_edges(n, edges);
}

TEST(SyntheticTargets, HandValues) {
  EXPECT_EQ(triangle_count(cycle(5)), 0.0);
  EXPECT_EQ(triangle_count(nsgc::testing::triangle()), 1.0);
  EXPECT_EQ(triangle_count(graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})),
            4.0);
  EXPECT_NEAR(algebraic_connectivity(star(6)), 1.0, 1e-10);
  // L(C4) has eigenvalues 0, 2, 2, 4; A(C4) has spectral radius 2.
  EXPECT_NEAR(algebraic_connectivity(cycle(4)), 2.0, 1e-10);
  EXPECT_NEAR(spectral_radius(cycle(4)), 2.0, 1e-10);
  // Star K_{1,5}: radius sqrt(5).
  EXPECT_NEAR(spectral_radius(star(6)), std::sqrt(5.0), 1e-10);
  EXPECT_EQ(algebraic_connectivity(graph_from_edges(4, {{0, 1}, {2, 3}})), 0.0);
  EXPECT_EQ(algebraic_connectivity(graph_from_edges(1, {})), 0.0);
}

TEST(SyntheticGenerators, ShapesAndDeterminism) {
  std::mt19937_64 rng(7);
  EXPECT_EQ(generate_graph(GeneratorKind::kCycle, 9, 0.0, rng).edges().size(), 9u);
  EXPECT_EQ(generate_graph(GeneratorKind::kStar, 9, 0.0, rng).edges().size(), 8u);
  // Two cliques of 4 and 5 plus one bridge: 6 + 10 + 1.
  const Graph barbell = generate_graph(GeneratorKind::kBarbell, 9, 0.0, rng);
  EXPECT_EQ(barbell.edges().size(), 17u);
  EXPECT_GT(algebraic_connectivity(barbell), 0.0);

  SyntheticTaskSpec spec;
  spec.generator = GeneratorKind::kMixed;
  spec.n_graphs = 40;
  spec.seed = 11;
  const auto a = generate_dataset(spec);
  const auto b = generate_dataset(spec);
  EXPECT_EQ(a.train.size(), 32u);
  EXPECT_EQ(a.valid.size(), 4u);
  EXPECT_EQ(a.test.size(), 4u);
  EXPECT_EQ(dataset_to_json(a.train), dataset_to_json(b.train));
  EXPECT_EQ(dataset_to_json(a.test), dataset_to_json(b.test));
  for (const Graph& g : a.train) {
    EXPECT_GE(g.num_nodes(), spec.n_min);
    EXPECT_LE(g.num_nodes(), spec.n_max);
    ASSERT_TRUE(g.target().has_value());
    EXPECT_EQ(*g.target(), triangle_count(g));
  }
  spec.seed = 12;
  EXPECT_NE(dataset_to_json(generate_dataset(spec).train), dataset_to_json(a.train));
}

TEST(SyntheticGenerators, RejectsBadSpecs) {
  SyntheticTaskSpec spec;
  spec.n_max = 65;
  EXPECT_NSGC_ERROR(validate(spec), ErrorCode::kBadConfig);
  spec = {};
  spec.n_min = 1;
  EXPECT_NSGC_ERROR(validate(spec), ErrorCode::kBadConfig);
  spec = {};
  spec.n_graphs = 9;
  EXPECT_NSGC_ERROR(validate(spec), ErrorCode::kBadConfig);
  spec = {};
  spec.p = 1.5;
  EXPECT_NSGC_ERROR(validate(spec), ErrorCode::kBadConfig);
}

TEST(Io, GraphRoundTrip) {
  std::mt19937_64 rng(3);
  const Graph g = nsgc::testing::random_graph(7, 0.4, rng, 2, 3);
  const Graph back = graph_from_json(graph_to_json(g));
  EXPECT_EQ(back.edges(), g.edges());
  EXPECT_EQ(back.node_feat(), g.node_feat());
  EXPECT_EQ(back.edge_feat(), g.edge_feat());
  EXPECT_EQ(graph_to_json(back), graph_to_json(g));
}

TEST(Io, GraphParseErrors) {
  EXPECT_NSGC_ERROR(graph_from_json("{"), ErrorCode::kParseError);
  EXPECT_NSGC_ERROR(graph_from_json(R"({"num_nodes": "3", "edges": []})"),
                    ErrorCode::kParseError);
  EXPECT_NSGC_ERROR(graph_from_json(R"({"num_nodes": 2, "edges": [[0, 0]]})"),
                    ErrorCode::kSelfLoop);
  EXPECT_NSGC_ERROR(graph_from_json(R"({"num_nodes": 2, "edges": [[0, 5]]})"),
                    ErrorCode::kIndexOutOfRange);
  EXPECT_NSGC_ERROR(load_graph("/nonexistent/graph.json"), ErrorCode::kIoError);
}

TEST(Io, CheckpointRoundTrip) {
  nsgn::TrainConfig config;
  config.model.hidden = 5;
  config.model.basis_order = 2;
  config.basis.k = 2;
  config.model.channel_mode = nsgn::ChannelMode::kShared;
  nsgn::ModelParams params = nsgn::init_params(config.model, 42);
  params.output_scale = 2.5;
  params.output_shift = -0.125;
  params.basis_scale << 1.0, 0.25, 1.0 / 3.0;
  const std::string text = checkpoint_to_json(config, params);
  const Checkpoint back = checkpoint_from_json(text);
  EXPECT_EQ(back.config.model.hidden, 5);
  EXPECT_EQ(back.config.model.channel_mode, nsgn::ChannelMode::kShared);
  EXPECT_EQ(back.params.output_scale, 2.5);
  EXPECT_EQ(back.params.output_shift, -0.125);
  EXPECT_EQ(back.params.basis_scale, params.basis_scale);
  const auto a = nsgn::parameter_views(std::as_const(params));
  const auto b = nsgn::parameter_views(back.params);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    ASSERT_EQ(a[i].size(), b[i].size());
    for (Index j = 0; j < a[i].size(); ++j) EXPECT_EQ(a[i].data[j], b[i].data[j]) << a[i].name;
  }
  EXPECT_EQ(checkpoint_to_json(back.config, back.params), text);
}

TEST(Io, CheckpointRejectsTampering) {
  nsgn::TrainConfig config;
  config.model.hidden = 3;
  config.model.basis_order = 1;
  config.basis.k = 1;
  const nsgn::ModelParams params = nsgn::init_params(config.model, 1);
  std::string text = checkpoint_to_json(config, params);
  std::string wrong_version = text;
  wrong_version.replace(wrong_version.find("\"version\": 1"), 12, "\"version\": 9");
  EXPECT_NSGC_ERROR(checkpoint_from_json(wrong_version), ErrorCode::kBadConfig);
  EXPECT_NSGC_ERROR(checkpoint_from_json(text.substr(0, text.size() / 2)),
                    ErrorCode::kParseError);
}

TEST(Io, NumberFormats) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_number(0.5), "0.5");
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = normal(rng);
    EXPECT_EQ(std::stod(format_exact(x)), x);
  }
}

TEST(Io, CommitFilesIsAllOrNothing) {
  const auto dir = std::filesystem::temp_directory_path() / "nsgc_commit_test";
  std::filesystem::remove_all(dir);
  commit_files({{dir / "a.txt", "alpha"}, {dir / "sub" / "b.txt", "beta"}});
  EXPECT_EQ(read_text_file(dir / "a.txt"), "alpha");
  EXPECT_EQ(read_text_file(dir / "sub" / "b.txt"), "beta");

  // A target that is an existing directory cannot be replaced by a file.
  std::filesystem::create_directories(dir / "blocked");
  EXPECT_NSGC_ERROR(commit_files({{dir / "c.txt", "gamma"}, {dir / "blocked", "x"}}),
                    ErrorCode::kIoError);
  EXPECT_FALSE(std::filesystem::exists(dir / "c.txt"));
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    EXPECT_EQ(entry.path().string().find(".partial"), std::string::npos) << entry.path();
  }
  std::filesystem::remove_all(dir);
}

TEST(Aggregate, MeanStdMedian) {
  const Aggregate a = aggregate({1.0, 2.0, 3.0, 10.0});
  EXPECT_DOUBLE_EQ(a.mean, 4.0);
  EXPECT_DOUBLE_EQ(a.median, 2.5);
  EXPECT_NEAR(a.std, std::sqrt(50.0 / 3.0), 1e-12);
  const Aggregate one = aggregate({7.0});
  EXPECT_EQ(one.std, 0.0);
  EXPECT_EQ(one.median, 7.0);
}

constexpr const char* kTinyExperiment = R"({
  "family": "power_eps", "eps": "1/3", "k": 2,
  "model": {"hidden": 4, "num_layers": 1},
  "seeds": [0, 1, 2, 3, 4],
  "task": {"generator": "erdos_renyi", "n_min": 5, "n_max": 7, "n_graphs": 20,
           "target": "triangle_count", "seed": 1},
  "epochs": 2,
  "optimizer": {"kind": "adam", "lr": 0.01}
})";

TEST(Experiment, ParseAndEcho) {
  const ExperimentConfig c = parse_experiment_config(kTinyExperiment);
  EXPECT_EQ(c.train.basis.kind, nsgn::BasisKind::kPowerEps);
  EXPECT_DOUBLE_EQ(c.train.basis.eps, 1.0 / 3.0);
  EXPECT_EQ(c.train.model.basis_order, 2);
  EXPECT_EQ(c.seeds.size(), 5u);
  EXPECT_EQ(c.name, "power_eps(0.333)/independent/k=2");
  const ExperimentConfig again = parse_experiment_config(experiment_config_to_json(c));
  EXPECT_EQ(experiment_config_to_json(again), experiment_config_to_json(c));

  EXPECT_NSGC_ERROR(parse_experiment_config(R"({"epoch": 3})"), ErrorCode::kBadConfig);
  EXPECT_NSGC_ERROR(parse_experiment_config("[1"), ErrorCode::kParseError);
}

TEST(Experiment, FiveSeedsFiveRows) {
  const ExperimentConfig c = parse_experiment_config(kTinyExperiment);
  const ExperimentReport r = run_experiment(c);
  ASSERT_EQ(r.seeds.size(), 5u);
  for (size_t i = 0; i < 5; ++i) EXPECT_EQ(r.seeds[i].seed, i);
  const ExperimentReport again = run_experiment(c);
  for (size_t i = 0; i < 5; ++i) EXPECT_EQ(r.seeds[i].test_mae, again.seeds[i].test_mae);
  std::vector<double> values;
  for (const auto& s : r.seeds) values.push_back(s.test_mae);
  EXPECT_DOUBLE_EQ(r.test_mae.mean, aggregate(values).mean);
}

TEST(Experiment, ZeroEpochsReportsUntrainedModel) {
  ExperimentConfig c = parse_experiment_config(kTinyExperiment);
  c.train.epochs = 0;
  c.seeds = {3};
  const auto data = generate_dataset(c.task);
  const ExperimentReport r = run_experiment(c, data);
  const auto test_set = nsgn::prepare_examples(data.test, c.train.basis);
  const nsgn::ModelParams untrained = nsgn::init_params(c.train.model, 3);
  EXPECT_DOUBLE_EQ(r.seeds[0].test_mae,
                   nsgn::evaluate(untrained, test_set, nsgn::TaskKind::kRegression).loss);
  ASSERT_EQ(r.seeds[0].history.size(), 1u);
}

TEST(Ablation, GridKeepsEveryCellInOrder) {
  const std::string grid = R"({
    "defaults": )" + std::string(kTinyExperiment) + R"(,
    "cells": [
      {"channel_mode": "shared", "seeds": [0]},
      {"channel_mode": "independent", "seeds": [0]},
      {"family": "raw_aug", "k": 6, "model": {"hidden": 4}},
      {"family": "power_eps", "eps": 1.5},
      {"bogus": 1}
    ]})";
  for (int threads : {1, 3}) {
    const AblationResult r = run_ablation_grid(grid, threads);
    ASSERT_EQ(r.cells.size(), 5u);
    EXPECT_EQ(r.cells[0].status, CellStatus::kOk);
    EXPECT_EQ(r.cells[1].status, CellStatus::kOk);
    EXPECT_EQ(r.cells[0].label, "power_eps(0.333)/shared/k=2");
    EXPECT_EQ(r.cells[1].label, "power_eps(0.333)/independent/k=2");
    EXPECT_EQ(r.cells[2].status, CellStatus::kRejected);
    EXPECT_NE(r.cells[2].message.find("numerical instability problem when k>5"),
              std::string::npos);
    EXPECT_EQ(r.cells[3].status, CellStatus::kRejected);
    EXPECT_EQ(r.cells[4].status, CellStatus::kRejected);

    const std::string summary = ablation_summary_csv(r);
    EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 6);
    EXPECT_NE(summary.find(",rejected,"), std::string::npos);
    const std::string seeds = ablation_seed_csv(r);
    EXPECT_EQ(std::count(seeds.begin(), seeds.end(), '\n'), 3);
  }
}

TEST(Ablation, ThreadCountDoesNotChangeResults) {
  const std::string grid = R"({"defaults": )" + std::string(kTinyExperiment) +
                           R"(, "cells": [{"k": 1}, {"k": 2}, {"k": 3}]})";
  const AblationResult serial = run_ablation_grid(grid, 1);
  const AblationResult parallel = run_ablation_grid(grid, 3);
  for (size_t i = 0; i < 3; ++i) {
    for (size_t s = 0; s < 5; ++s) {
      EXPECT_EQ(serial.cells[i].report->seeds[s].test_mae,
                parallel.cells[i].report->seeds[s].test_mae);
    }
  }
}

TEST(Ablation, RejectsMalformedGrid) {
  EXPECT_NSGC_ERROR(run_ablation_grid(R"({"cells": 3})"), ErrorCode::kBadConfig);
  EXPECT_NSGC_ERROR(run_ablation_grid(R"({"cells": [], "extra": 1})"), ErrorCode::kBadConfig);
  EXPECT_NSGC_ERROR(run_ablation_grid("nope"), ErrorCode::kParseError);
}

}  // namespace
}  // namespace nsgc::harness
