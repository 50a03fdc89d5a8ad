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

#include "nsgc/harness/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

#include "harness/json_config.h"
#include "nsgc/error.h"
#include "nsgc/harness/io.h"

namespace nsgc::harness {

namespace {

using detail::Json;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

ExperimentConfig config_from_json(const Json& obj) {
  detail::require_keys(obj, "experiment",
                       {"name", "family", "eps", "k", "base", "channel_mode", "model", "seeds",
                        "task", "epochs", "batch_size", "lr_schedule", "standardize_targets", "normalize_basis",
                        "optimizer"});
  ExperimentConfig c;
  nsgn::TrainConfig& t = c.train;
  if (obj.contains("name")) c.name = detail::read_string(obj["name"], "name");
  if (obj.contains("family")) t.basis.kind = nsgn::parse_basis_kind(detail::read_string(obj["family"], "family"));
  if (obj.contains("eps")) t.basis.eps = detail::read_real(obj["eps"], "eps");
  if (obj.contains("k")) t.basis.k = detail::read_int(obj["k"], "k");
  if (obj.contains("base")) t.basis.base = parse_basis_family(detail::read_string(obj["base"], "base"));
  if (obj.contains("model")) detail::read_model(obj["model"], t.model);
  if (obj.contains("channel_mode")) {
    t.model.channel_mode = nsgn::parse_channel_mode(detail::read_string(obj["channel_mode"], "channel_mode"));
  }
  t.model.basis_order = t.basis.k;
  if (obj.contains("seeds")) {
    const Json& s = obj["seeds"];
    if (!s.is_array()) throw Error(ErrorCode::kBadConfig, "seeds: expected an array");
    c.seeds.clear();
    for (const Json& x : s) {
      if (!x.is_number_unsigned()) {
        throw Error(ErrorCode::kBadConfig, "seeds: expected non-negative integers");
      }
      c.seeds.push_back(x.get<std::uint64_t>());
    }
  }
  if (obj.contains("task")) detail::read_task(obj["task"], c.task);
  if (obj.contains("epochs")) t.epochs = detail::read_int(obj["epochs"], "epochs");
  if (obj.contains("batch_size")) t.batch_size = detail::read_int(obj["batch_size"], "batch_size");
  if (obj.contains("lr_schedule")) {
    t.lr_schedule = nsgn::parse_lr_schedule(detail::read_string(obj["lr_schedule"], "lr_schedule"));
  }
  if (obj.contains("standardize_targets")) {
    t.standardize_targets = detail::read_bool(obj["standardize_targets"], "standardize_targets");
  }
  if (obj.contains("normalize_basis")) {
    t.normalize_basis = detail::read_bool(obj["normalize_basis"], "normalize_basis");
  }
  if (obj.contains("optimizer")) detail::read_optimizer(obj["optimizer"], t.optimizer);
  if (c.name.empty()) c.name = cell_label(c);
  return c;
}

// Per-cell dataset cache keyed by the serialized task spec.
using DatasetCache = std::map<std::string, std::shared_ptr<const nsgn::DatasetSplits>>;

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  return config_from_json(parse_json(json_text, "experiment config"));
}

std::string experiment_config_to_json(const ExperimentConfig& c) {
  const nsgn::TrainConfig& t = c.train;
  Json seeds = Json::array();
  for (auto s : c.seeds) seeds.push_back(s);
  const Json doc{{"name", c.name},
                 {"family", nsgn::basis_kind_name(t.basis.kind)},
                 {"eps", t.basis.eps},
                 {"k", t.basis.k},
                 {"base", basis_family_name(t.basis.base)},
                 {"channel_mode", nsgn::channel_mode_name(t.model.channel_mode)},
                 {"model", detail::to_json(t.model)},
                 {"seeds", seeds},
                 {"task", detail::to_json(c.task)},
                 {"epochs", t.epochs},
                 {"batch_size", t.batch_size},
                 {"lr_schedule", nsgn::lr_schedule_name(t.lr_schedule)},
                 {"standardize_targets", t.standardize_targets},
                 {"normalize_basis", t.normalize_basis},
                 {"optimizer", detail::to_json(t.optimizer)}};
  return doc.dump(2) + "\n";
}

void validate(const ExperimentConfig& c) {
  if (c.train.task != nsgn::TaskKind::kRegression) {
    throw Error(ErrorCode::kBadConfig, "synthetic experiments are regression tasks");
  }
  if (c.seeds.empty()) throw Error(ErrorCode::kBadConfig, "seeds must not be empty");
  nsgn::validate(c.train);
  validate(c.task);
}

std::string cell_label(const ExperimentConfig& c) {
  const nsgn::BasisSpec& b = c.train.basis;
  std::string family(nsgn::basis_kind_name(b.kind));
  if (b.kind == nsgn::BasisKind::kPowerEps) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "(%.3g)", b.eps);
    family += buf;
  }
  return family + "/" + std::string(nsgn::channel_mode_name(c.train.model.channel_mode)) +
         "/k=" + std::to_string(b.k);
}

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  if (values.empty()) {
    a.mean = a.std = a.median = std::nan("");
    return a;
  }
  const double n = static_cast<double>(values.size());
  a.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.std = std::sqrt(ss / (n - 1.0));
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const size_t mid = sorted.size() / 2;
  a.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return a;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  validate(config);
  return run_experiment(config, generate_dataset(config.task), progress);
}

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const nsgn::DatasetSplits& data,
                                const ProgressFn& progress) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const auto train_set = nsgn::prepare_examples(data.train, config.train.basis);
  const auto valid_set = nsgn::prepare_examples(data.valid, config.train.basis);
  const auto test_set = nsgn::prepare_examples(data.test, config.train.basis);

  ExperimentReport report;
  std::vector<double> test_values;
  for (std::uint64_t seed : config.seeds) {
    const auto seed_start = std::chrono::steady_clock::now();
    nsgn::TrainConfig tc = config.train;
    tc.seed = seed;
    nsgn::TrainResult trained = nsgn::train(train_set, valid_set, tc);
    SeedResult r;
    r.seed = seed;
    r.train_mae = nsgn::evaluate(trained.params, train_set, tc.task).loss;
    r.valid_mae = nsgn::evaluate(trained.params, valid_set, tc.task).loss;
    r.test_mae = nsgn::evaluate(trained.params, test_set, tc.task).loss;
    r.history = std::move(trained.history);
    r.params = std::move(trained.params);
    r.seconds = seconds_since(seed_start);
    test_values.push_back(r.test_mae);
    if (progress) {
      progress(config.name + " seed " + std::to_string(seed) + ": test MAE " +
               format_number(r.test_mae) + " (" + format_number(r.seconds) + " s)");
    }
    report.seeds.push_back(std::move(r));
  }
  report.test_mae = aggregate(test_values);
  report.seconds = seconds_since(start);
  return report;
}

std::string_view cell_status_name(CellStatus status) {
  switch (status) {
    case CellStatus::kOk: return "ok";
    case CellStatus::kRejected: return "rejected";
    case CellStatus::kFailed: return "failed";
  }
  return "unknown";
}

int threads_from_env() {
  const char* env = std::getenv("NSGC_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 256));
}

AblationResult run_ablation_grid(std::string_view grid_json, int threads,
                                 const ProgressFn& progress) {
  const Json grid = parse_json(grid_json, "ablation grid");
  detail::require_keys(grid, "ablation grid", {"defaults", "cells"});
  if (!grid.contains("cells") || !grid["cells"].is_array()) {
    throw Error(ErrorCode::kBadConfig, "ablation grid: 'cells' must be an array");
  }
  const Json defaults = grid.value("defaults", Json::object());
  if (!defaults.is_object()) {
    throw Error(ErrorCode::kBadConfig, "ablation grid: 'defaults' must be an object");
  }

  AblationResult result;
  const Json& cells = grid["cells"];
  for (size_t i = 0; i < cells.size(); ++i) {
    AblationCell cell;
    cell.index = static_cast<int>(i);
    cell.label = "cell" + std::to_string(i);
    try {
      if (!cells[i].is_object()) {
        throw Error(ErrorCode::kBadConfig, "cell must be a JSON object");
      }
      Json merged = defaults;
      merged.merge_patch(cells[i]);
      cell.config = config_from_json(merged);
      cell.label = cell_label(*cell.config);
      validate(*cell.config);
    } catch (const Error& e) {
      cell.status = CellStatus::kRejected;
      cell.message = e.what();
    }
    result.cells.push_back(std::move(cell));
  }

  DatasetCache datasets;
  for (const AblationCell& cell : result.cells) {
    if (cell.status != CellStatus::kOk) continue;
    const std::string key = detail::to_json(cell.config->task).dump();
    if (!datasets.count(key)) {
      datasets[key] = std::make_shared<const nsgn::DatasetSplits>(
          generate_dataset(cell.config->task));
    }
  }

  std::mutex progress_mutex;
  const ProgressFn locked = [&](const std::string& msg) {
    if (!progress) return;
    std::lock_guard<std::mutex> lock(progress_mutex);
    progress(msg);
  };
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < result.cells.size(); i = next++) {
      AblationCell& cell = result.cells[i];
      if (cell.status != CellStatus::kOk) continue;
      try {
        const auto& data = *datasets.at(detail::to_json(cell.config->task).dump());
        cell.report = run_experiment(*cell.config, data, locked);
      } catch (const std::exception& e) {
        cell.status = CellStatus::kFailed;
        cell.message = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(result.cells.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return result;
}

std::string ablation_summary_csv(const AblationResult& result) {
  std::string out =
      "cell,label,family,eps,k,channel_mode,status,seeds,test_mae_mean,test_mae_std,"
      "test_mae_median,seconds,message\n";
  for (const AblationCell& cell : result.cells) {
    std::string family, eps, k, mode;
    if (cell.config) {
      const auto& t = cell.config->train;
      family = nsgn::basis_kind_name(t.basis.kind);
      eps = format_number(t.basis.eps);
      k = std::to_string(t.basis.k);
      mode = nsgn::channel_mode_name(t.model.channel_mode);
    }
    std::string seeds, mean, std, median, seconds;
    if (cell.report) {
      seeds = std::to_string(cell.report->seeds.size());
      mean = format_number(cell.report->test_mae.mean);
      std = format_number(cell.report->test_mae.std);
      median = format_number(cell.report->test_mae.median);
      seconds = format_number(cell.report->seconds);
    }
    out += std::to_string(cell.index) + "," + csv_field(cell.label) + "," + family + "," + eps +
           "," + k + "," + mode + "," + std::string(cell_status_name(cell.status)) + "," + seeds +
           "," + mean + "," + std + "," + median + "," + seconds + "," + csv_field(cell.message) +
           "\n";
  }
  return out;
}

std::string ablation_seed_csv(const AblationResult& result) {
  std::string out = "cell,label,seed,train_mae,valid_mae,test_mae,seconds\n";
  for (const AblationCell& cell : result.cells) {
    if (!cell.report) continue;
    for (const SeedResult& r : cell.report->seeds) {
      out += std::to_string(cell.index) + "," + csv_field(cell.label) + "," +
             std::to_string(r.seed) + "," + format_number(r.train_mae) + "," +
             format_number(r.valid_mae) + "," + format_number(r.test_mae) + "," +
             format_number(r.seconds) + "\n";
    }
  }
  return out;
}

namespace {

// Rows "<prefix>epoch,split,loss" for one seed.
void append_curves(std::string& out, const std::string& prefix, const SeedResult& r) {
  for (const nsgn::EpochMetrics& m : r.history) {
    const std::string epoch = std::to_string(m.epoch);
    out += prefix + epoch + ",train," + format_number(m.train_loss) + "\n";
    if (!std::isnan(m.valid_loss)) {
      out += prefix + epoch + ",valid," + format_number(m.valid_loss) + "\n";
    }
  }
  const int last = r.history.empty() ? 0 : r.history.back().epoch;
  out += prefix + std::to_string(last) + ",test," + format_number(r.test_mae) + "\n";
}

}  // namespace

std::string experiment_metrics_csv(const ExperimentReport& report) {
  std::string out = "seed,epoch,split,loss\n";
  for (const SeedResult& r : report.seeds) append_curves(out, std::to_string(r.seed) + ",", r);
  return out;
}

std::string training_metrics_csv(const SeedResult& result) {
  std::string out = "epoch,split,loss\n";
  append_curves(out, "", result);
  return out;
}

}  // namespace nsgc::harness
