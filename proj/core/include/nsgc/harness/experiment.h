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

// Multi-seed experiments and ablation grids over basis family, channel mode
// and basis order.
//
// An experiment config is a JSON object:
//
//   {"name": "power_eps-independent-k6",
//    "family": "power_eps", "eps": "1/3", "k": 6, "base": "raw_aug",
//    "channel_mode": "independent",
//    "model": {"hidden": 32, "num_layers": 2},
//    "seeds": [0, 1, 2, 3, 4],
//    "task": {"generator": "erdos_renyi", "p": 0.3, "n_min": 8, "n_max": 16,
//             "n_graphs": 2000, "target": "triangle_count", "seed": 0},
//    "epochs": 100, "batch_size": 0, "lr_schedule": "constant",
//    "standardize_targets": false, "normalize_basis": false,
//    "optimizer": {"kind": "adam", "lr": 0.001}}
//
// Every key is optional. The model's basis order and channel mode follow the
// top-level `k` and `channel_mode`.
//
// An ablation grid is {"defaults": {...}, "cells": [{...}, ...]}; each cell is
// merged into the defaults as a JSON merge patch.

#ifndef NSGC_HARNESS_EXPERIMENT_H_
#define NSGC_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsgc/harness/synthetic.h"
#include "nsgc/nsgn/train.h"

namespace nsgc::harness {

struct ExperimentConfig {
  std::string name;
  // Model, basis, optimizer and schedule. `train.seed` is replaced by each
  // entry of `seeds`.
  nsgn::TrainConfig train;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  SyntheticTaskSpec task;
};

// kParseError for malformed JSON, kBadConfig for unknown keys or bad values.
// Range checks are left to validate().
ExperimentConfig parse_experiment_config(std::string_view json_text);
std::string experiment_config_to_json(const ExperimentConfig& config);
// Includes the raw_aug k <= 5 cap.
void validate(const ExperimentConfig& config);
// "<family>[(eps)]/<mode>/k=<k>", e.g. "power_eps(0.333)/independent/k=6".
std::string cell_label(const ExperimentConfig& config);

struct SeedResult {
  std::uint64_t seed = 0;
  double train_mae = 0.0;
  double valid_mae = 0.0;
  double test_mae = 0.0;
  double seconds = 0.0;
  std::vector<nsgn::EpochMetrics> history;
  nsgn::ModelParams params;  // trained weights
};

struct Aggregate {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1); 0 for one value
  double median = 0.0;
};

Aggregate aggregate(const std::vector<double>& values);

struct ExperimentReport {
  std::vector<SeedResult> seeds;
  Aggregate test_mae;
  double seconds = 0.0;
};

using ProgressFn = std::function<void(const std::string&)>;

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const ProgressFn& progress = {});
// Uses an already generated dataset instead of config.task.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const nsgn::DatasetSplits& data,
                                const ProgressFn& progress = {});

enum class CellStatus { kOk, kRejected, kFailed };
std::string_view cell_status_name(CellStatus status);

struct AblationCell {
  int index = 0;
  std::string label;
  std::optional<ExperimentConfig> config;  // empty when the cell did not parse
  CellStatus status = CellStatus::kOk;
  std::string message;  // reason for rejection or failure
  std::optional<ExperimentReport> report;
};

struct AblationResult {
  std::vector<AblationCell> cells;
};

// Cells run concurrently on up to `threads` workers; each cell is sequential
// and results come back in cell order. Invalid cells are kept with status
// "rejected"; cells whose training throws are kept with status "failed".
AblationResult run_ablation_grid(std::string_view grid_json, int threads = 1,
                                 const ProgressFn& progress = {});

// NSGC_THREADS if set to a positive integer, otherwise 1.
int threads_from_env();

// One row per cell: cell, label, family, eps, k, channel_mode, status,
// seeds, test_mae_mean, test_mae_std, test_mae_median, seconds, message.
std::string ablation_summary_csv(const AblationResult& result);
// One row per (cell, seed): cell, label, seed, train_mae, valid_mae, test_mae,
// seconds.
std::string ablation_seed_csv(const AblationResult& result);
// Training curves of one experiment: seed, epoch, split, loss. The train and
// valid rows follow the per-epoch history; one test row per seed is stamped
// with the final epoch.
std::string experiment_metrics_csv(const ExperimentReport& report);
// The same curves for one seed without the seed column: epoch, split, loss.
std::string training_metrics_csv(const SeedResult& result);

}  // namespace nsgc::harness

#endif  // NSGC_HARNESS_EXPERIMENT_H_
