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

#ifndef NSGC_NSGN_TRAIN_H_
#define NSGC_NSGN_TRAIN_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "nsgc/graph.h"
#include "nsgc/nsgn/model.h"
#include "nsgc/nsgn/optimizer.h"
#include "nsgc/spectral.h"

namespace nsgc::nsgn {

// Which basis stack the network consumes.
enum class BasisKind {
  kRawAug,    // powers of A + I
  kSymNorm,   // powers of D~^-1/2 A~ D~^-1/2
  kRwNorm,    // powers of D~^-1 A~
  kPowerEps,  // S^{eps i} of `base`
};

std::string_view basis_kind_name(BasisKind kind);
BasisKind parse_basis_kind(std::string_view name);

struct BasisSpec {
  BasisKind kind = BasisKind::kPowerEps;
  double eps = 1.0 / 3.0;
  int k = 6;
  // Matrix whose fractional powers are taken for kPowerEps.
  BasisFamily base = BasisFamily::kRawAug;
};

// Raw A~ powers are numerically unstable past this order.
inline constexpr int kMaxRawAugOrder = 5;

// Throws kBadConfig (including the raw_aug order cap).
void validate(const BasisSpec& spec);
BasisStack build_basis(const Graph& g, const BasisSpec& spec);

enum class TaskKind { kRegression, kClassification };
std::string_view task_kind_name(TaskKind kind);
TaskKind parse_task_kind(std::string_view name);

enum class LrSchedule { kConstant, kCosine };
std::string_view lr_schedule_name(LrSchedule schedule);
LrSchedule parse_lr_schedule(std::string_view name);

struct TrainConfig {
  ModelConfig model;
  BasisSpec basis;
  OptimizerConfig optimizer;
  TaskKind task = TaskKind::kRegression;
  int epochs = 100;
  int batch_size = 0;  // 0 means the whole training split
  LrSchedule lr_schedule = LrSchedule::kConstant;
  // Regression only: fit (y - mean) / std of the training targets.
  bool standardize_targets = false;
  // Divide the entries of each basis power by their root mean square over the
  // training graphs before the mixer sees them.
  bool normalize_basis = false;
  std::uint64_t seed = 0;
};

// Throws kBadConfig.
void validate(const TrainConfig& config);

struct Example {
  Graph graph;
  BasisStack stack;
  double target = 0.0;
};

// Builds the basis stack for every graph. Graphs must carry a target
// (kBadConfig otherwise).
std::vector<Example> prepare_examples(const std::vector<Graph>& graphs,
                                      const BasisSpec& spec);

struct DatasetSplits {
  std::vector<Graph> train;
  std::vector<Graph> valid;
  std::vector<Graph> test;
};

struct Evaluation {
  double loss = 0.0;      // mean MAE or mean cross-entropy
  double accuracy = 0.0;  // classification only
  std::size_t count = 0;
};

Evaluation evaluate(const ModelParams& params, const std::vector<Example>& examples,
                    TaskKind task);

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;
  double valid_loss = 0.0;  // NaN without a validation split
};

struct TrainResult {
  ModelParams params;
  // Entry 0 holds the untrained model; entry e the state after epoch e.
  std::vector<EpochMetrics> history;
};

// Deterministic for a fixed config (seed included). Throws kEmptyDataset when
// the training split is empty.
TrainResult train(const std::vector<Example>& train_set,
                  const std::vector<Example>& valid_set,
                  const TrainConfig& config);
TrainResult train(const DatasetSplits& data, const TrainConfig& config);

}  // namespace nsgc::nsgn

#endif  // NSGC_NSGN_TRAIN_H_
