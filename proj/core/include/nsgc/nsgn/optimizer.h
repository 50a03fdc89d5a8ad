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

#ifndef NSGC_NSGN_OPTIMIZER_H_
#define NSGC_NSGN_OPTIMIZER_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "nsgc/nsgn/model.h"

namespace nsgc::nsgn {

enum class OptimizerKind { kAdam, kSgd };

std::string_view optimizer_kind_name(OptimizerKind kind);
OptimizerKind parse_optimizer_kind(std::string_view name);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kAdam;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Added to the gradient as weight_decay * param (L2 penalty).
  double weight_decay = 0.0;
};

struct OptimizerState {
  std::int64_t step = 0;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
};

// In-place update of a flat parameter vector.
void optimizer_step(std::span<double> params, std::span<const double> grads,
                    OptimizerState& state, const OptimizerConfig& config);

// Same update over every tensor of the model, in parameter_views order.
void optimizer_step(ModelParams& params, const ModelParams& grads,
                    OptimizerState& state, const OptimizerConfig& config);

}  // namespace nsgc::nsgn

#endif  // NSGC_NSGN_OPTIMIZER_H_
