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

#ifndef NSGC_NSGN_MODEL_H_
#define NSGC_NSGN_MODEL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nsgc/graph.h"
#include "nsgc/spectral.h"
#include "nsgc/types.h"

namespace nsgc::nsgn {

using RowVector = Eigen::RowVectorXd;

enum class ChannelMode {
  kShared,       // one basis mixture broadcast to every channel
  kIndependent,  // a separate mixture per channel
};

std::string_view channel_mode_name(ChannelMode mode);
ChannelMode parse_channel_mode(std::string_view name);

struct ModelConfig {
  int node_feat_dim = 1;
  int edge_feat_dim = 0;
  int hidden = 32;       // d
  int basis_order = 6;   // k; the model consumes k + 1 basis matrices
  int num_layers = 2;    // L
  int output_dim = 1;    // 1 for regression, #classes for classification
  ChannelMode channel_mode = ChannelMode::kIndependent;
};

// Throws kBadConfig.
void validate(const ModelConfig& config);

// y = x W + b, x is a row per sample.
struct Linear {
  Matrix weight;  // in x out
  RowVector bias;
};

// Linear layers with relu between them and nothing after the last one.
struct Mlp {
  std::vector<Linear> layers;
};

struct LayerParams {
  Mlp pair_mlp;  // applied to every (i, j) entry
  Mlp node_mlp;  // applied to every node after aggregation
};

// All learnable tensors of the network, plus two fixed (non-learnable) maps:
// a per-power scale on the basis entries fed to the mixer and an affine map on
// the output, used to train on normalized inputs and standardized targets.
// Both are plain reparametrizations; they do not change the function class.
struct ModelParams {
  ModelConfig config;
  Mlp node_encoder;   // d_node -> d
  Mlp edge_encoder;   // d_edge -> d; with d_edge = 0 this is a learned vector
  RowVector no_edge;  // E(i, j) for non-adjacent pairs
  RowVector self_loop;  // E(i, i)
  Mlp basis_mixer;    // (k+1) -> d -> d, or (k+1) -> d -> 1 when shared
  std::vector<LayerParams> layers;
  Mlp head;           // d -> d -> output_dim
  RowVector basis_scale;  // length k + 1, multiplies mats[i] entries
  double output_scale = 1.0;
  double output_shift = 0.0;
};

// Named view of one parameter tensor. Storage is Eigen's column-major layout.
struct ParamView {
  std::string name;
  double* data;
  Index rows;
  Index cols;
  Index size() const { return rows * cols; }
};

struct ConstParamView {
  std::string name;
  const double* data;
  Index rows;
  Index cols;
  Index size() const { return rows * cols; }
};

// The canonical parameter order, shared by the optimizer, gradient checks and
// checkpoints:
//   node_encoder.*, edge_encoder.*, no_edge, self_loop, basis_mixer.*,
//   layers.<l>.pair_mlp.*, layers.<l>.node_mlp.*, head.*
// where every MLP contributes <name>.<i>.weight then <name>.<i>.bias per layer.
std::vector<ParamView> parameter_views(ModelParams& params);
std::vector<ConstParamView> parameter_views(const ModelParams& params);
Index parameter_count(const ModelParams& params);

// Same shapes, all zeros; used for gradients and optimizer moments.
ModelParams zeros_like(const ModelParams& params);

// Weights ~ U(-sqrt(6 / (fan_in + fan_out)), +sqrt(...)), biases zero. The
// no-edge and self-loop vectors use fan_in = 1, fan_out = d.
ModelParams init_params(const ModelConfig& config, std::uint64_t seed);

struct MlpCache {
  std::vector<Matrix> inputs;  // input to layer i
  std::vector<Matrix> pre;     // pre-activation of layer i
};

struct LayerCache {
  MlpCache pair;   // input rows are H(j) + E(i, j), row index i * n + j
  Matrix pair_out; // M, n^2 x d
  MlpCache node;   // input is the aggregated n x d matrix
};

struct ForwardCache {
  int num_nodes = 0;
  // For each (i, j) row: -1 self loop, -2 no edge, otherwise the edge index.
  std::vector<int> entry_kind;
  MlpCache node_encoder;
  MlpCache edge_encoder;
  MlpCache basis_mixer;
  Matrix edge_tensor;   // E, n^2 x d
  Matrix basis_tensor;  // S, n^2 x d (or n^2 x 1 when shared)
  std::vector<LayerCache> layers;
  Matrix final_nodes;   // H^(L), n x d
  MlpCache head;
};

struct ForwardResult {
  Vector prediction;  // length output_dim
  ForwardCache cache;
};

// Errors: kDimensionMismatch when the graph or stack does not fit the config.
ForwardResult forward(const ModelParams& params, const Graph& g,
                      const BasisStack& stack);
Vector predict(const ModelParams& params, const Graph& g, const BasisStack& stack);

// Gradients of <upstream, prediction> with respect to every parameter.
ModelParams backward(const ModelParams& params, const ForwardCache& cache,
                     const Vector& upstream);
// As backward, but adds into an existing gradient of matching shape.
void backward_into(const ModelParams& params, const ForwardCache& cache,
                   const Vector& upstream, ModelParams& grad);

// Adds `src` into `dst` scaled by `alpha`; shapes must match.
void accumulate(ModelParams& dst, const ModelParams& src, double alpha = 1.0);

}  // namespace nsgc::nsgn

#endif  // NSGC_NSGN_MODEL_H_
