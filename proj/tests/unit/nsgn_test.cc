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
#include <random>

#include "gradient_check.h"
#include "nsgc/error.h"
#include "nsgc/nsgn/loss.h"
#include "nsgc/nsgn/model.h"
#include "nsgc/nsgn/optimizer.h"
#include "nsgc/nsgn/train.h"
#include "test_support.h"

namespace nsgc::nsgn {
namespace {

using nsgc::testing::random_graph;
using nsgc::testing::random_permutation;

ModelConfig small_config(ChannelMode mode = ChannelMode::kIndependent) {
  ModelConfig c;
  c.hidden = 4;
  c.basis_order = 3;
  c.num_layers = 2;
  c.channel_mode = mode;
  return c;
}

BasisStack eps_stack(const Graph& g, int k) {
  return build_basis(g, BasisSpec{BasisKind::kPowerEps, 1.0 / 3.0, k, BasisFamily::kRawAug});
}

bool bit_identical(const ModelParams& a, const ModelParams& b) {
  const auto va = parameter_views(a);
  const auto vb = parameter_views(b);
  if (va.size() != vb.size()) return false;
  for (size_t t = 0; t < va.size(); ++t) {
    if (va[t].size() != vb[t].size()) return false;
    for (Index i = 0; i < va[t].size(); ++i) {
      if (va[t].data[i] != vb[t].data[i]) return false;
    }
  }
  return true;
}

TEST(InitParams, SameSeedIsBitIdentical) {
  EXPECT_TRUE(bit_identical(init_params(small_config(), 7), init_params(small_config(), 7)));
  EXPECT_FALSE(bit_identical(init_params(small_config(), 7), init_params(small_config(), 8)));
}

TEST(InitParams, ShapesFollowConfig) {
  ModelConfig c;
  c.hidden = 8;
  c.basis_order = 6;
  c.num_layers = 2;
  const ModelParams p = init_params(c, 0);
  EXPECT_EQ(p.basis_mixer.layers.front().weight.rows(), 7);
  EXPECT_EQ(p.basis_mixer.layers.front().weight.cols(), 8);
  EXPECT_EQ(p.head.layers.back().weight.rows(), 8);
  EXPECT_EQ(p.head.layers.back().weight.cols(), 1);
  EXPECT_EQ(p.layers.size(), 2u);
  EXPECT_EQ(p.layers[0].pair_mlp.layers.size(), 2u);
  EXPECT_EQ(p.layers[0].node_mlp.layers.size(), 2u);
}

TEST(InitParams, WeightsWithinGlorotLimitAndBiasesZero) {
  const ModelParams p = init_params(small_config(), 3);
  for (const auto& v : parameter_views(p)) {
    if (v.name.ends_with(".bias")) {
      for (Index i = 0; i < v.size(); ++i) EXPECT_EQ(v.data[i], 0.0) << v.name;
    } else if (v.name.ends_with(".weight")) {
      const double limit = std::sqrt(6.0 / static_cast<double>(v.rows + v.cols));
      for (Index i = 0; i < v.size(); ++i) EXPECT_LE(std::abs(v.data[i]), limit) << v.name;
    }
  }
}

TEST(InitParams, RejectsBadConfig) {
  ModelConfig c = small_config();
  c.hidden = 0;
  EXPECT_THROW(init_params(c, 0), Error);
}

TEST(ParameterViews, CanonicalOrder) {
  const auto views = parameter_views(init_params(small_config(), 0));
  ASSERT_GE(views.size(), 6u);
  EXPECT_EQ(views[0].name, "node_encoder.0.weight");
  EXPECT_EQ(views[1].name, "node_encoder.0.bias");
  EXPECT_EQ(views[2].name, "edge_encoder.0.weight");
  EXPECT_EQ(views[4].name, "no_edge");
  EXPECT_EQ(views[5].name, "self_loop");
  EXPECT_EQ(views.back().name, "head.1.bias");
}

TEST(Forward, ZeroLayersIgnoresEdges) {
  ModelConfig c = small_config();
  c.num_layers = 0;
  const ModelParams p = init_params(c, 1);
  std::mt19937_64 rng(5);
  const Graph g = random_graph(6, 0.5, rng);
  // Same node features, no edges at all.
  GraphRecord r = g.to_record();
  r.edges.clear();
  r.edge_feat.clear();
  const Graph bare = build_graph(r);
  EXPECT_EQ(predict(p, g, eps_stack(g, 3))(0), predict(p, bare, eps_stack(bare, 3))(0));
}

TEST(Forward, SingleNodeOrderZero) {
  ModelConfig c = small_config();
  c.basis_order = 0;
  const ModelParams p = init_params(c, 2);
  const Graph g = nsgc::testing::graph_from_edges(1, {});
  const ForwardResult r = forward(p, g, eps_stack(g, 0));
  EXPECT_EQ(r.cache.basis_tensor.rows(), 1);
  EXPECT_EQ(r.cache.basis_tensor.cols(), 4);
  EXPECT_TRUE(std::isfinite(r.prediction(0)));
}

TEST(Forward, RejectsMismatchedStack) {
  const ModelParams p = init_params(small_config(), 0);
  const Graph g = nsgc::testing::triangle();
  EXPECT_THROW(forward(p, g, eps_stack(g, 2)), Error);
  const Graph other = nsgc::testing::path2();
  EXPECT_THROW(forward(p, g, eps_stack(other, 3)), Error);
}

TEST(Forward, PermutationInvariant) {
  std::mt19937_64 rng(11);
  for (ChannelMode mode : {ChannelMode::kIndependent, ChannelMode::kShared}) {
    ModelConfig c = small_config(mode);
    c.edge_feat_dim = 2;
    const ModelParams p = init_params(c, 4);
    for (int trial = 0; trial < 5; ++trial) {
      const Graph g = random_graph(7, 0.4, rng, 1, 2);
      const Graph h = permute_graph(g, random_permutation(7, rng));
      EXPECT_NEAR(predict(p, g, eps_stack(g, 3))(0), predict(p, h, eps_stack(h, 3))(0), 1e-8);
    }
  }
}

TEST(Backward, MatchesFiniteDifferences) {
  std::mt19937_64 rng(21);
  for (ChannelMode mode : {ChannelMode::kIndependent, ChannelMode::kShared}) {
    ModelConfig c = small_config(mode);
    c.edge_feat_dim = 2;
    const Graph g = random_graph(6, 0.5, rng, 1, 2);
    const auto result = nsgc::testing::gradient_check(init_params(c, 9), g, eps_stack(g, 3),
                                                      100, 1e-5, 33);
    EXPECT_EQ(result.sampled, 100);
    EXPECT_LE(result.max_relative_error, 1e-4) << result.worst_parameter;
  }
}

TEST(Backward, ClassificationLogitsMatchFiniteDifferences) {
  std::mt19937_64 rng(22);
  ModelConfig c = small_config();
  c.output_dim = 3;
  const Graph g = random_graph(5, 0.6, rng);
  const auto result =
      nsgc::testing::gradient_check(init_params(c, 1), g, eps_stack(g, 3), 60, 1e-5, 2);
  EXPECT_LE(result.max_relative_error, 1e-4) << result.worst_parameter;
}

TEST(Backward, ZeroUpstreamGivesZeroGradient) {
  std::mt19937_64 rng(23);
  const ModelParams p = init_params(small_config(), 0);
  const Graph g = random_graph(5, 0.5, rng);
  const ForwardResult r = forward(p, g, eps_stack(g, 3));
  const ModelParams grad = backward(p, r.cache, Vector::Zero(1));
  for (const auto& v : parameter_views(grad)) {
    for (Index i = 0; i < v.size(); ++i) EXPECT_EQ(v.data[i], 0.0) << v.name;
  }
}

// With positive node signals and identity MLPs, each channel of the first
// layer's aggregate is sum_j S_c(i, j) x_j. The shared mixer must act
// identically on every channel.
Matrix channel_responses(ChannelMode mode) {
  ModelConfig c = small_config(mode);
  c.num_layers = 1;
  ModelParams p = init_params(c, 17);
  const Index d = c.hidden;
  p.node_encoder.layers[0].weight = Matrix::Ones(1, d);
  p.edge_encoder.layers[0].bias.setZero();
  p.no_edge.setZero();
  p.self_loop.setZero();
  for (Mlp* m : {&p.layers[0].pair_mlp, &p.layers[0].node_mlp}) {
    for (Linear& l : m->layers) {
      l.weight = Matrix::Identity(d, d);
      l.bias.setZero();
    }
  }
  std::mt19937_64 rng(3);
  GraphRecord r = random_graph(6, 0.5, rng).to_record();
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  for (auto& row : r.node_feat) row[0] = pos(rng);
  const Graph g = build_graph(r);
  return forward(p, g, eps_stack(g, 3)).cache.final_nodes;
}

TEST(Forward, SharedMixerActsIdenticallyAcrossChannels) {
  const Matrix shared = channel_responses(ChannelMode::kShared);
  for (Index ch = 1; ch < shared.cols(); ++ch) {
    EXPECT_LE((shared.col(ch) - shared.col(0)).cwiseAbs().maxCoeff(), 1e-10);
  }
  const Matrix independent = channel_responses(ChannelMode::kIndependent);
  double spread = 0.0;
  for (Index ch = 1; ch < independent.cols(); ++ch) {
    spread = std::max(spread, (independent.col(ch) - independent.col(0)).cwiseAbs().maxCoeff());
  }
  EXPECT_GT(spread, 1e-6);
}

TEST(Loss, MaeValueAndSlope) {
  const LossValue exact = loss_mae(1.0, 1.0);
  EXPECT_EQ(exact.value, 0.0);
  EXPECT_EQ(exact.gradient(0), 0.0);
  const LossValue above = loss_mae(1.5, 1.0);
  EXPECT_DOUBLE_EQ(above.value, 0.5);
  EXPECT_EQ(above.gradient(0), 1.0);
  EXPECT_EQ(loss_mae(0.0, 1.0).gradient(0), -1.0);
}

TEST(Loss, CrossEntropyUniformLogits) {
  const LossValue ce = loss_ce(Vector::Zero(4), 2);
  EXPECT_NEAR(ce.value, 1.386294, 1e-6);
  EXPECT_NEAR(ce.gradient(2), -0.75, 1e-12);
  EXPECT_NEAR(ce.gradient(0), 0.25, 1e-12);
  EXPECT_THROW(loss_ce(Vector::Zero(4), 4), Error);
}

TEST(Loss, CrossEntropyStableForLargeLogits) {
  Vector logits(2);
  logits << 1000.0, 0.0;
  EXPECT_NEAR(loss_ce(logits, 0).value, 0.0, 1e-12);
  EXPECT_NEAR(loss_ce(logits, 1).value, 1000.0, 1e-9);
}

TEST(Optimizer, SgdStep) {
  std::vector<double> theta{1.0};
  const std::vector<double> g{0.5};
  OptimizerState state;
  optimizer_step(theta, g, state, OptimizerConfig{OptimizerKind::kSgd, 0.1});
  EXPECT_DOUBLE_EQ(theta[0], 0.95);
}

TEST(Optimizer, ZeroGradientLeavesParamsUnchanged) {
  for (OptimizerKind kind : {OptimizerKind::kAdam, OptimizerKind::kSgd}) {
    std::vector<double> theta{1.0, -2.0, 3.0};
    const std::vector<double> g(3, 0.0);
    OptimizerState state;
    OptimizerConfig config;
    config.kind = kind;
    for (int i = 0; i < 3; ++i) optimizer_step(theta, g, state, config);
    EXPECT_EQ(theta, (std::vector<double>{1.0, -2.0, 3.0}));
  }
}

TEST(Optimizer, AdamFirstStepIsBiasCorrected) {
  // m_hat = g, v_hat = g^2 at t = 1, so the step is lr * g / (|g| + eps).
  std::vector<double> theta{0.3, -0.7};
  const std::vector<double> g{0.02, -4.0};
  OptimizerState state;
  OptimizerConfig config;
  config.lr = 0.01;
  optimizer_step(theta, g, state, config);
  EXPECT_NEAR(theta[0], 0.3 - 0.01 * 0.02 / (0.02 + 1e-8), 1e-15);
  EXPECT_NEAR(theta[1], -0.7 + 0.01 * 4.0 / (4.0 + 1e-8), 1e-15);
  EXPECT_EQ(state.step, 1);
}

TEST(Optimizer, WeightDecayPullsTowardZero) {
  std::vector<double> theta{2.0};
  OptimizerState state;
  OptimizerConfig config{OptimizerKind::kSgd, 0.1};
  config.weight_decay = 0.5;
  optimizer_step(theta, std::vector<double>{0.0}, state, config);
  EXPECT_DOUBLE_EQ(theta[0], 2.0 - 0.1 * 0.5 * 2.0);
}

std::vector<Example> tiny_dataset(int count, const BasisSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> graphs;
  for (int i = 0; i < count; ++i) {
    GraphRecord r = random_graph(5, 0.5, rng).to_record();
    for (auto& row : r.node_feat) row[0] = 1.0;
    r.target = static_cast<double>(r.edges.size());
    graphs.push_back(build_graph(r));
  }
  return prepare_examples(graphs, spec);
}

TrainConfig tiny_train_config() {
  TrainConfig c;
  c.model = small_config();
  c.basis.k = 3;
  c.epochs = 5;
  c.seed = 3;
  return c;
}

TEST(Train, ZeroLearningRateKeepsParamsAndLoss) {
  TrainConfig c = tiny_train_config();
  c.epochs = 1;
  c.optimizer.lr = 0.0;
  const auto data = tiny_dataset(6, c.basis, 1);
  const TrainResult r = train(data, {}, c);
  EXPECT_TRUE(bit_identical(r.params, init_params(c.model, c.seed)));
  ASSERT_EQ(r.history.size(), 2u);
  EXPECT_NEAR(r.history[1].train_loss, r.history[0].train_loss, 1e-12);
  EXPECT_TRUE(std::isnan(r.history[0].valid_loss));
}

TEST(Train, DeterministicForFixedSeed) {
  TrainConfig c = tiny_train_config();
  c.batch_size = 2;
  const auto data = tiny_dataset(6, c.basis, 2);
  const TrainResult a = train(data, data, c);
  const TrainResult b = train(data, data, c);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (size_t e = 0; e < a.history.size(); ++e) {
    EXPECT_EQ(a.history[e].train_loss, b.history[e].train_loss);
    EXPECT_EQ(a.history[e].valid_loss, b.history[e].valid_loss);
  }
  EXPECT_TRUE(bit_identical(a.params, b.params));
}

TEST(Train, ReducesLossOnTinyDataset) {
  TrainConfig c = tiny_train_config();
  c.epochs = 60;
  c.optimizer.lr = 1e-2;
  c.standardize_targets = true;
  const auto data = tiny_dataset(8, c.basis, 4);
  const TrainResult r = train(data, {}, c);
  EXPECT_LT(evaluate(r.params, data, TaskKind::kRegression).loss, 0.5 * r.history[0].train_loss);
}

TEST(Train, NormalizeBasisGivesUnitRms) {
  TrainConfig c = tiny_train_config();
  c.epochs = 0;
  c.basis.kind = BasisKind::kRawAug;
  c.normalize_basis = true;
  const auto data = tiny_dataset(6, c.basis, 5);
  const TrainResult r = train(data, {}, c);
  for (Index t = 0; t <= c.basis.k; ++t) {
    double mean_square = 0.0;
    for (const Example& ex : data) {
      const Matrix scaled = ex.stack.mats[static_cast<size_t>(t)] * r.params.basis_scale(t);
      mean_square += scaled.squaredNorm() / static_cast<double>(scaled.size());
    }
    EXPECT_NEAR(mean_square / static_cast<double>(data.size()), 1.0, 1e-12);
  }
}

// A basis scale is a reparametrization: folding it into the mixer's first
// weight rows gives the same network.
TEST(Forward, BasisScaleFoldsIntoMixerWeights) {
  std::mt19937_64 rng(24);
  const Graph g = random_graph(6, 0.5, rng);
  ModelParams scaled = init_params(small_config(), 6);
  scaled.basis_scale << 2.0, 0.5, 0.25, 4.0;
  ModelParams folded = scaled;
  folded.basis_scale.setOnes();
  folded.basis_mixer.layers[0].weight =
      scaled.basis_scale.transpose().asDiagonal() * scaled.basis_mixer.layers[0].weight;
  EXPECT_NEAR(predict(scaled, g, eps_stack(g, 3))(0), predict(folded, g, eps_stack(g, 3))(0),
              1e-12);
  const auto result = nsgc::testing::gradient_check(scaled, g, eps_stack(g, 3), 50, 1e-5, 8);
  EXPECT_LE(result.max_relative_error, 1e-4) << result.worst_parameter;
}

TEST(Train, RejectsEmptyAndInvalidConfigs) {
  TrainConfig c = tiny_train_config();
  try {
    train(std::vector<Example>{}, {}, c);
    FAIL() << "expected EmptyDataset";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDataset);
  }
  c.basis.k = 4;
  EXPECT_THROW(validate(c), Error);
  c = tiny_train_config();
  c.task = TaskKind::kClassification;
  EXPECT_THROW(validate(c), Error);
}

TEST(Basis, RawAugOrderCap) {
  BasisSpec spec{BasisKind::kRawAug, 0.5, 6, BasisFamily::kRawAug};
  try {
    validate(spec);
    FAIL() << "expected BadConfig";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadConfig);
    EXPECT_NE(std::string(e.what()).find("numerical instability problem when k>5"),
              std::string::npos);
  }
  spec.k = 5;
  EXPECT_NO_THROW(validate(spec));
}

TEST(Basis, KindNamesRoundTrip) {
  for (BasisKind k : {BasisKind::kRawAug, BasisKind::kSymNorm, BasisKind::kRwNorm,
                      BasisKind::kPowerEps}) {
    EXPECT_EQ(parse_basis_kind(basis_kind_name(k)), k);
  }
  EXPECT_THROW(parse_basis_kind("chebyshev"), Error);
}

}  // namespace
}  // namespace nsgc::nsgn
