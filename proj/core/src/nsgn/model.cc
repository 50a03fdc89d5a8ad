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

#include "nsgc/nsgn/model.h"

#include <cmath>
#include <random>
#include <string>

#include "nsgc/error.h"

namespace nsgc::nsgn {

namespace {

Linear make_linear(Index in, Index out) {
  return Linear{Matrix::Zero(in, out), RowVector::Zero(out)};
}

Mlp make_mlp(std::initializer_list<Index> widths) {
  Mlp mlp;
  const std::vector<Index> w(widths);
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    mlp.layers.push_back(make_linear(w[i], w[i + 1]));
  }
  return mlp;
}

// Zero-valued parameters with the shapes implied by `config`.
ModelParams make_shapes(const ModelConfig& config) {
  const Index d = config.hidden;
  const Index basis = config.basis_order + 1;
  ModelParams p;
  p.config = config;
  p.node_encoder = make_mlp({config.node_feat_dim, d});
  p.edge_encoder = make_mlp({config.edge_feat_dim, d});
  p.no_edge = RowVector::Zero(d);
  p.self_loop = RowVector::Zero(d);
  p.basis_mixer = make_mlp(
      {basis, d, config.channel_mode == ChannelMode::kShared ? Index{1} : d});
  for (int l = 0; l < config.num_layers; ++l) {
    p.layers.push_back(LayerParams{make_mlp({d, d, d}), make_mlp({d, d, d})});
  }
  p.head = make_mlp({d, d, config.output_dim});
  p.basis_scale = RowVector::Ones(basis);
  return p;
}

template <typename Params, typename Fn>
void for_each_tensor(Params& p, Fn&& fn) {
  auto mlp = [&](const std::string& prefix, auto& m) {
    for (size_t i = 0; i < m.layers.size(); ++i) {
      const std::string base = prefix + "." + std::to_string(i);
      fn(base + ".weight", m.layers[i].weight);
      fn(base + ".bias", m.layers[i].bias);
    }
  };
  mlp("node_encoder", p.node_encoder);
  mlp("edge_encoder", p.edge_encoder);
  fn(std::string("no_edge"), p.no_edge);
  fn(std::string("self_loop"), p.self_loop);
  mlp("basis_mixer", p.basis_mixer);
  for (size_t l = 0; l < p.layers.size(); ++l) {
    const std::string base = "layers." + std::to_string(l);
    mlp(base + ".pair_mlp", p.layers[l].pair_mlp);
    mlp(base + ".node_mlp", p.layers[l].node_mlp);
  }
  mlp("head", p.head);
}

Matrix mlp_forward(const Mlp& mlp, const Matrix& x, MlpCache* cache) {
  Matrix cur = x;
  if (cache) {
    cache->inputs.clear();
    cache->pre.clear();
  }
  for (size_t i = 0; i < mlp.layers.size(); ++i) {
    const Linear& layer = mlp.layers[i];
    Matrix z = cur * layer.weight;
    z.rowwise() += layer.bias;
    if (cache) {
      cache->inputs.push_back(std::move(cur));
      cache->pre.push_back(z);
    }
    cur = (i + 1 < mlp.layers.size()) ? Matrix(z.cwiseMax(0.0)) : std::move(z);
  }
  return cur;
}

// Accumulates parameter gradients into `grad` and returns d loss / d input.
Matrix mlp_backward(const Mlp& mlp, const MlpCache& cache, Matrix upstream,
                    Mlp& grad) {
  for (size_t i = mlp.layers.size(); i-- > 0;) {
    if (i + 1 < mlp.layers.size()) {
      upstream = upstream.cwiseProduct(
          (cache.pre[i].array() > 0.0).cast<double>().matrix());
    }
    grad.layers[i].weight.noalias() += cache.inputs[i].transpose() * upstream;
    grad.layers[i].bias += upstream.colwise().sum();
    upstream = upstream * mlp.layers[i].weight.transpose();
  }
  return upstream;
}

void check_inputs(const ModelParams& params, const Graph& g,
                  const BasisStack& stack) {
  const ModelConfig& c = params.config;
  if (g.node_feat_dim() != c.node_feat_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "graph has " + std::to_string(g.node_feat_dim()) +
                    " node features, model expects " +
                    std::to_string(c.node_feat_dim));
  }
  if (g.edge_feat_dim() != c.edge_feat_dim && !g.edges().empty()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "graph has " + std::to_string(g.edge_feat_dim()) +
                    " edge features, model expects " +
                    std::to_string(c.edge_feat_dim));
  }
  if (stack.mats.size() != static_cast<size_t>(c.basis_order) + 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "basis stack has " + std::to_string(stack.mats.size()) +
                    " matrices, model expects " +
                    std::to_string(c.basis_order + 1));
  }
  if (stack.n() != g.num_nodes()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "basis stack size does not match the graph");
  }
}

}  // namespace

std::string_view channel_mode_name(ChannelMode mode) {
  return mode == ChannelMode::kShared ? "shared" : "independent";
}

ChannelMode parse_channel_mode(std::string_view name) {
  if (name == "shared") return ChannelMode::kShared;
  if (name == "independent") return ChannelMode::kIndependent;
  throw Error(ErrorCode::kBadConfig,
              "unknown channel mode '" + std::string(name) +
                  "' (expected shared or independent)");
}

void validate(const ModelConfig& c) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kBadConfig, msg);
  };
  if (c.node_feat_dim < 0) fail("node_feat_dim must be >= 0");
  if (c.edge_feat_dim < 0) fail("edge_feat_dim must be >= 0");
  if (c.hidden < 1) fail("hidden width d must be >= 1");
  if (c.basis_order < 0) fail("basis order k must be >= 0");
  if (c.num_layers < 0) fail("num_layers must be >= 0");
  if (c.output_dim < 1) fail("output_dim must be >= 1");
}

std::vector<ParamView> parameter_views(ModelParams& params) {
  std::vector<ParamView> views;
  for_each_tensor(params, [&](const std::string& name, auto& t) {
    views.push_back(ParamView{name, t.data(), t.rows(), t.cols()});
  });
  return views;
}

std::vector<ConstParamView> parameter_views(const ModelParams& params) {
  std::vector<ConstParamView> views;
  for_each_tensor(params, [&](const std::string& name, const auto& t) {
    views.push_back(ConstParamView{name, t.data(), t.rows(), t.cols()});
  });
  return views;
}

Index parameter_count(const ModelParams& params) {
  Index total = 0;
  for (const auto& v : parameter_views(params)) total += v.size();
  return total;
}

ModelParams zeros_like(const ModelParams& params) {
  ModelParams z = make_shapes(params.config);
  z.output_scale = 0.0;
  z.output_shift = 0.0;
  return z;
}

ModelParams init_params(const ModelConfig& config, std::uint64_t seed) {
  validate(config);
  ModelParams p = make_shapes(config);
  std::mt19937_64 rng(seed);
  auto fill = [&rng](auto& t, double fan_in, double fan_out) {
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Index i = 0; i < t.size(); ++i) t.data()[i] = dist(rng);
  };
  for_each_tensor(p, [&](const std::string& name, auto& t) {
    if (name == "no_edge" || name == "self_loop") {
      fill(t, 1.0, static_cast<double>(t.size()));
    } else if (name.ends_with(".weight")) {
      fill(t, static_cast<double>(t.rows()), static_cast<double>(t.cols()));
    }
  });
  return p;
}

void accumulate(ModelParams& dst, const ModelParams& src, double alpha) {
  auto d = parameter_views(dst);
  const auto s = parameter_views(src);
  if (d.size() != s.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "parameter sets differ");
  }
  for (size_t t = 0; t < d.size(); ++t) {
    if (d[t].size() != s[t].size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "parameter " + d[t].name + " differs in shape");
    }
    for (Index i = 0; i < d[t].size(); ++i) d[t].data[i] += alpha * s[t].data[i];
  }
}

ForwardResult forward(const ModelParams& params, const Graph& g,
                      const BasisStack& stack) {
  check_inputs(params, g, stack);
  const ModelConfig& c = params.config;
  const Index n = g.num_nodes();
  const Index d = c.hidden;
  const Index entries = n * n;

  ForwardResult out;
  ForwardCache& cache = out.cache;
  cache.num_nodes = static_cast<int>(n);

  Matrix h = mlp_forward(params.node_encoder, g.node_feat(), &cache.node_encoder);

  // E: learned vectors for the diagonal and for non-edges, encoded features on
  // edges (both orientations share one encoding).
  Matrix edge_input = g.edge_feat();
  if (edge_input.cols() != c.edge_feat_dim) {
    edge_input = Matrix::Zero(static_cast<Index>(g.edges().size()), c.edge_feat_dim);
  }
  const Matrix encoded =
      mlp_forward(params.edge_encoder, edge_input, &cache.edge_encoder);
  cache.entry_kind.assign(static_cast<size_t>(entries), -2);
  for (Index i = 0; i < n; ++i) cache.entry_kind[static_cast<size_t>(i * n + i)] = -1;
  for (size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    cache.entry_kind[static_cast<size_t>(edge.u * n + edge.v)] = static_cast<int>(e);
    cache.entry_kind[static_cast<size_t>(edge.v * n + edge.u)] = static_cast<int>(e);
  }
  cache.edge_tensor.resize(entries, d);
  for (Index r = 0; r < entries; ++r) {
    const int kind = cache.entry_kind[static_cast<size_t>(r)];
    if (kind == -1) {
      cache.edge_tensor.row(r) = params.self_loop;
    } else if (kind == -2) {
      cache.edge_tensor.row(r) = params.no_edge;
    } else {
      cache.edge_tensor.row(r) = encoded.row(kind);
    }
  }

  // Stacked basis: row i * n + j holds (mats[0](i,j), ..., mats[k](i,j)).
  const Index basis = static_cast<Index>(stack.mats.size());
  Matrix stacked(entries, basis);
  for (Index t = 0; t < basis; ++t) {
    const Matrix& m = stack.mats[static_cast<size_t>(t)];
    const double scale = params.basis_scale(t);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) stacked(i * n + j, t) = m(i, j) * scale;
    }
  }
  cache.basis_tensor = mlp_forward(params.basis_mixer, stacked, &cache.basis_mixer);
  const bool shared = c.channel_mode == ChannelMode::kShared;

  cache.layers.resize(params.layers.size());
  for (size_t l = 0; l < params.layers.size(); ++l) {
    LayerCache& lc = cache.layers[l];
    Matrix pair_in = cache.edge_tensor;
    for (Index i = 0; i < n; ++i) pair_in.middleRows(i * n, n) += h;
    lc.pair_out = mlp_forward(params.layers[l].pair_mlp, pair_in, &lc.pair);
    Matrix weighted =
        shared ? Matrix(lc.pair_out.array().colwise() *
                        cache.basis_tensor.col(0).array())
               : Matrix(lc.pair_out.cwiseProduct(cache.basis_tensor));
    Matrix aggregated(n, d);
    for (Index i = 0; i < n; ++i) {
      aggregated.row(i) = weighted.middleRows(i * n, n).colwise().sum();
    }
    h = mlp_forward(params.layers[l].node_mlp, aggregated, &lc.node);
  }
  cache.final_nodes = h;

  const Matrix pooled = h.colwise().sum();
  const Matrix head = mlp_forward(params.head, pooled, &cache.head);
  out.prediction =
      head.row(0).transpose() * params.output_scale +
      Vector::Constant(c.output_dim, params.output_shift);
  return out;
}

Vector predict(const ModelParams& params, const Graph& g, const BasisStack& stack) {
  return forward(params, g, stack).prediction;
}

ModelParams backward(const ModelParams& params, const ForwardCache& cache,
                     const Vector& upstream) {
  ModelParams grad = zeros_like(params);
  backward_into(params, cache, upstream, grad);
  return grad;
}

void backward_into(const ModelParams& params, const ForwardCache& cache,
                   const Vector& upstream, ModelParams& grad) {
  const ModelConfig& c = params.config;
  if (upstream.size() != c.output_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "upstream gradient has the wrong length");
  }
  const Index n = cache.num_nodes;
  const Index d = c.hidden;
  const bool shared = c.channel_mode == ChannelMode::kShared;

  const Matrix d_head = upstream.transpose() * params.output_scale;
  const Matrix d_pooled = mlp_backward(params.head, cache.head, d_head, grad.head);
  Matrix d_h = d_pooled.replicate(n, 1);

  Matrix d_basis = Matrix::Zero(cache.basis_tensor.rows(), cache.basis_tensor.cols());
  Matrix d_edge = Matrix::Zero(n * n, d);
  for (size_t l = params.layers.size(); l-- > 0;) {
    const LayerCache& lc = cache.layers[l];
    const Matrix d_agg =
        mlp_backward(params.layers[l].node_mlp, lc.node, d_h, grad.layers[l].node_mlp);
    Matrix d_weighted(n * n, d);
    for (Index i = 0; i < n; ++i) {
      d_weighted.middleRows(i * n, n) = d_agg.row(i).replicate(n, 1);
    }
    Matrix d_pair_out;
    if (shared) {
      d_pair_out = d_weighted.array().colwise() * cache.basis_tensor.col(0).array();
      d_basis.col(0) += d_weighted.cwiseProduct(lc.pair_out).rowwise().sum();
    } else {
      d_pair_out = d_weighted.cwiseProduct(cache.basis_tensor);
      d_basis += d_weighted.cwiseProduct(lc.pair_out);
    }
    const Matrix d_pair_in = mlp_backward(params.layers[l].pair_mlp, lc.pair,
                                          std::move(d_pair_out),
                                          grad.layers[l].pair_mlp);
    d_edge += d_pair_in;
    d_h = Matrix::Zero(n, d);
    for (Index i = 0; i < n; ++i) d_h += d_pair_in.middleRows(i * n, n);
  }

  mlp_backward(params.basis_mixer, cache.basis_mixer, std::move(d_basis),
               grad.basis_mixer);

  const Index num_edges = cache.edge_encoder.inputs.empty()
                              ? 0
                              : cache.edge_encoder.inputs.front().rows();
  Matrix d_encoded = Matrix::Zero(num_edges, d);
  for (Index r = 0; r < n * n; ++r) {
    const int kind = cache.entry_kind[static_cast<size_t>(r)];
    if (kind == -1) {
      grad.self_loop += d_edge.row(r);
    } else if (kind == -2) {
      grad.no_edge += d_edge.row(r);
    } else {
      d_encoded.row(kind) += d_edge.row(r);
    }
  }
  mlp_backward(params.edge_encoder, cache.edge_encoder, std::move(d_encoded),
               grad.edge_encoder);
  mlp_backward(params.node_encoder, cache.node_encoder, std::move(d_h),
               grad.node_encoder);
}

}  // namespace nsgc::nsgn
