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

#include "nsgc/nsgn/train.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "nsgc/error.h"
#include "nsgc/nsgn/loss.h"

namespace nsgc::nsgn {

namespace {

[[noreturn]] void bad_config(const std::string& msg) {
  throw Error(ErrorCode::kBadConfig, msg);
}

int class_label(double target) { return static_cast<int>(std::lround(target)); }

LossValue example_loss(const Vector& prediction, double target, TaskKind task) {
  if (task == TaskKind::kRegression) return loss_mae(prediction(0), target);
  return loss_ce(prediction, class_label(target));
}

}  // namespace

std::string_view basis_kind_name(BasisKind kind) {
  switch (kind) {
    case BasisKind::kRawAug: return "raw_aug";
    case BasisKind::kSymNorm: return "sym_norm";
    case BasisKind::kRwNorm: return "rw_norm";
    case BasisKind::kPowerEps: return "power_eps";
  }
  return "unknown";
}

BasisKind parse_basis_kind(std::string_view name) {
  if (name == "raw_aug") return BasisKind::kRawAug;
  if (name == "sym_norm") return BasisKind::kSymNorm;
  if (name == "rw_norm") return BasisKind::kRwNorm;
  if (name == "power_eps") return BasisKind::kPowerEps;
  bad_config("unknown basis '" + std::string(name) +
             "' (expected raw_aug, sym_norm, rw_norm or power_eps)");
}

void validate(const BasisSpec& spec) {
  if (spec.k < 0) bad_config("basis order k must be >= 0");
  if (spec.kind == BasisKind::kRawAug && spec.k > kMaxRawAugOrder) {
    bad_config("raw_aug basis rejected for k = " + std::to_string(spec.k) +
               ": numerical instability problem when k>5 (raw_aug supports k <= " +
               std::to_string(kMaxRawAugOrder) + ")");
  }
  if (spec.kind == BasisKind::kPowerEps && !(spec.eps > 0.0 && spec.eps < 1.0)) {
    bad_config("power_eps needs eps in (0, 1)");
  }
}

BasisStack build_basis(const Graph& g, const BasisSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case BasisKind::kRawAug:
      return power_stack(basis_matrix(g, BasisFamily::kRawAug), spec.k);
    case BasisKind::kSymNorm:
      return power_stack(basis_matrix(g, BasisFamily::kSymNorm), spec.k);
    case BasisKind::kRwNorm:
      return power_stack(basis_matrix(g, BasisFamily::kRwNorm), spec.k);
    case BasisKind::kPowerEps:
      return basis_stack(spectral_matrix(g, spec.base), spec.eps, spec.k);
  }
  bad_config("unknown basis kind");
}

std::string_view task_kind_name(TaskKind kind) {
  return kind == TaskKind::kRegression ? "regression" : "classification";
}

TaskKind parse_task_kind(std::string_view name) {
  if (name == "regression") return TaskKind::kRegression;
  if (name == "classification") return TaskKind::kClassification;
  bad_config("unknown task '" + std::string(name) +
             "' (expected regression or classification)");
}

std::string_view lr_schedule_name(LrSchedule schedule) {
  return schedule == LrSchedule::kConstant ? "constant" : "cosine";
}

LrSchedule parse_lr_schedule(std::string_view name) {
  if (name == "constant") return LrSchedule::kConstant;
  if (name == "cosine") return LrSchedule::kCosine;
  bad_config("unknown lr schedule '" + std::string(name) +
             "' (expected constant or cosine)");
}

void validate(const TrainConfig& config) {
  validate(config.model);
  validate(config.basis);
  if (config.basis.k != config.model.basis_order) {
    bad_config("basis order k (" + std::to_string(config.basis.k) +
               ") differs from the model's basis_order (" +
               std::to_string(config.model.basis_order) + ")");
  }
  if (config.epochs < 0) bad_config("epochs must be >= 0");
  if (config.batch_size < 0) bad_config("batch_size must be >= 0");
  if (!(config.optimizer.lr >= 0.0)) bad_config("learning rate must be >= 0");
  if (!(config.optimizer.weight_decay >= 0.0)) bad_config("weight_decay must be >= 0");
  if (config.task == TaskKind::kRegression && config.model.output_dim != 1) {
    bad_config("regression needs output_dim = 1");
  }
  if (config.task == TaskKind::kClassification && config.model.output_dim < 2) {
    bad_config("classification needs output_dim >= 2");
  }
}

std::vector<Example> prepare_examples(const std::vector<Graph>& graphs,
                                      const BasisSpec& spec) {
  std::vector<Example> out;
  out.reserve(graphs.size());
  for (size_t i = 0; i < graphs.size(); ++i) {
    if (!graphs[i].target()) {
      bad_config("graph " + std::to_string(i) + " has no target");
    }
    out.push_back(Example{graphs[i], build_basis(graphs[i], spec), *graphs[i].target()});
  }
  return out;
}

Evaluation evaluate(const ModelParams& params, const std::vector<Example>& examples,
                    TaskKind task) {
  Evaluation ev;
  ev.count = examples.size();
  if (examples.empty()) {
    ev.loss = std::numeric_limits<double>::quiet_NaN();
    return ev;
  }
  double loss = 0.0;
  std::size_t correct = 0;
  for (const Example& ex : examples) {
    const Vector pred = predict(params, ex.graph, ex.stack);
    loss += example_loss(pred, ex.target, task).value;
    if (task == TaskKind::kClassification) {
      Index best = 0;
      pred.maxCoeff(&best);
      if (best == class_label(ex.target)) ++correct;
    }
  }
  ev.loss = loss / static_cast<double>(examples.size());
  ev.accuracy = static_cast<double>(correct) / static_cast<double>(examples.size());
  return ev;
}

TrainResult train(const std::vector<Example>& train_set,
                  const std::vector<Example>& valid_set,
                  const TrainConfig& config) {
  validate(config);
  if (train_set.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "training split is empty");
  }
  TrainResult result;
  result.params = init_params(config.model, config.seed);
  ModelParams& params = result.params;

  if (config.standardize_targets && config.task == TaskKind::kRegression) {
    double mean = 0.0;
    for (const Example& ex : train_set) mean += ex.target;
    mean /= static_cast<double>(train_set.size());
    double var = 0.0;
    for (const Example& ex : train_set) var += (ex.target - mean) * (ex.target - mean);
    var /= static_cast<double>(train_set.size());
    params.output_shift = mean;
    params.output_scale = var > 0.0 ? std::sqrt(var) : 1.0;
  }

  if (config.normalize_basis) {
    const Index basis = params.basis_scale.size();
    for (Index t = 0; t < basis; ++t) {
      double mean_square = 0.0;
      for (const Example& ex : train_set) {
        const Matrix& m = ex.stack.mats[static_cast<size_t>(t)];
        mean_square += m.squaredNorm() / static_cast<double>(m.size());
      }
      mean_square /= static_cast<double>(train_set.size());
      params.basis_scale(t) = mean_square > 0.0 ? 1.0 / std::sqrt(mean_square) : 1.0;
    }
  }

  auto valid_loss = [&]() {
    return valid_set.empty() ? std::numeric_limits<double>::quiet_NaN()
                             : evaluate(params, valid_set, config.task).loss;
  };
  result.history.push_back(
      {0, evaluate(params, train_set, config.task).loss, valid_loss()});

  const std::size_t count = train_set.size();
  const std::size_t batch =
      config.batch_size == 0 ? count
                             : std::min(count, static_cast<std::size_t>(config.batch_size));
  const std::size_t steps_per_epoch = (count + batch - 1) / batch;
  const double total_steps =
      static_cast<double>(steps_per_epoch) * static_cast<double>(config.epochs);

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(config.seed ^ 0x5deece66dULL);
  OptimizerState state;
  OptimizerConfig step_config = config.optimizer;
  ModelParams grad = zeros_like(params);
  std::int64_t step = 0;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    if (batch < count) std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < count; start += batch) {
      const std::size_t stop = std::min(count, start + batch);
      const double weight = 1.0 / static_cast<double>(stop - start);
      grad = zeros_like(params);
      for (std::size_t b = start; b < stop; ++b) {
        const Example& ex = train_set[order[b]];
        const ForwardResult fr = forward(params, ex.graph, ex.stack);
        const LossValue lv = example_loss(fr.prediction, ex.target, config.task);
        epoch_loss += lv.value;
        backward_into(params, fr.cache, lv.gradient * weight, grad);
      }
      if (config.lr_schedule == LrSchedule::kCosine && total_steps > 0.0) {
        step_config.lr = config.optimizer.lr * 0.5 *
                         (1.0 + std::cos(std::numbers::pi * static_cast<double>(step) /
                                         total_steps));
      }
      optimizer_step(params, grad, state, step_config);
      ++step;
    }
    result.history.push_back(
        {epoch, epoch_loss / static_cast<double>(count), valid_loss()});
  }
  return result;
}

TrainResult train(const DatasetSplits& data, const TrainConfig& config) {
  validate(config);
  return train(prepare_examples(data.train, config.basis),
               prepare_examples(data.valid, config.basis), config);
}

}  // namespace nsgc::nsgn
