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

#include "nsgc/nsgn/optimizer.h"

#include <cmath>
#include <string>

#include "nsgc/error.h"

namespace nsgc::nsgn {

std::string_view optimizer_kind_name(OptimizerKind kind) {
  return kind == OptimizerKind::kAdam ? "adam" : "sgd";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "adam") return OptimizerKind::kAdam;
  if (name == "sgd") return OptimizerKind::kSgd;
  throw Error(ErrorCode::kBadConfig,
              "unknown optimizer '" + std::string(name) + "' (expected adam or sgd)");
}

void optimizer_step(std::span<double> params, std::span<const double> grads,
                    OptimizerState& state, const OptimizerConfig& config) {
  if (params.size() != grads.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "parameter and gradient sizes differ");
  }
  ++state.step;
  if (config.kind == OptimizerKind::kSgd) {
    for (size_t i = 0; i < params.size(); ++i) {
      params[i] -= config.lr * (grads[i] + config.weight_decay * params[i]);
    }
    return;
  }
  if (state.first_moment.size() != params.size()) {
    state.first_moment.assign(params.size(), 0.0);
    state.second_moment.assign(params.size(), 0.0);
  }
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(config.beta1, t);
  const double c2 = 1.0 - std::pow(config.beta2, t);
  for (size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i] + config.weight_decay * params[i];
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = config.beta1 * m + (1.0 - config.beta1) * g;
    v = config.beta2 * v + (1.0 - config.beta2) * g * g;
    params[i] -= config.lr * (m / c1) / (std::sqrt(v / c2) + config.eps);
  }
}

void optimizer_step(ModelParams& params, const ModelParams& grads,
                    OptimizerState& state, const OptimizerConfig& config) {
  std::vector<double> flat_params;
  std::vector<double> flat_grads;
  const auto pv = parameter_views(params);
  const auto gv = parameter_views(grads);
  if (pv.size() != gv.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "gradient does not match parameters");
  }
  for (size_t t = 0; t < pv.size(); ++t) {
    if (pv[t].size() != gv[t].size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "gradient for " + pv[t].name + " has the wrong shape");
    }
    flat_params.insert(flat_params.end(), pv[t].data, pv[t].data + pv[t].size());
    flat_grads.insert(flat_grads.end(), gv[t].data, gv[t].data + gv[t].size());
  }
  optimizer_step(std::span<double>(flat_params), std::span<const double>(flat_grads),
                 state, config);
  size_t offset = 0;
  for (const auto& v : pv) {
    std::copy_n(flat_params.begin() + static_cast<std::ptrdiff_t>(offset),
                v.size(), v.data);
    offset += static_cast<size_t>(v.size());
  }
}

}  // namespace nsgc::nsgn
