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

#include "harness/json_config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "nsgc/error.h"

namespace nsgc::harness::detail {

namespace {

[[noreturn]] void bad(std::string_view where, const std::string& what) {
  throw Error(ErrorCode::kBadConfig, std::string(where) + ": " + what);
}

double parse_double(std::string_view text, std::string_view where) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto r = std::from_chars(text.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end) bad(where, "'" + std::string(text) + "' is not a number");
  return v;
}

}  // namespace

void require_keys(const Json& obj, std::string_view where,
                  std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) bad(where, "expected a JSON object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      bad(where, "unknown key '" + item.key() + "'");
    }
  }
}

double read_real(const Json& value, std::string_view where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    const size_t slash = s.find('/');
    if (slash == std::string::npos) return parse_double(s, where);
    const double den = parse_double(std::string_view(s).substr(slash + 1), where);
    if (den == 0.0) bad(where, "zero denominator");
    return parse_double(std::string_view(s).substr(0, slash), where) / den;
  }
  bad(where, "expected a number");
}

int read_int(const Json& value, std::string_view where) {
  if (value.is_number_integer()) {
    const auto v = value.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      bad(where, "integer out of range");
    }
    return static_cast<int>(v);
  }
  if (value.is_number_float()) {
    const double d = value.get<double>();
    if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  bad(where, "expected an integer");
}

std::string read_string(const Json& value, std::string_view where) {
  if (!value.is_string()) bad(where, "expected a string");
  return value.get<std::string>();
}

bool read_bool(const Json& value, std::string_view where) {
  if (!value.is_boolean()) bad(where, "expected true or false");
  return value.get<bool>();
}

void read_model(const Json& obj, nsgn::ModelConfig& out) {
  require_keys(obj, "model", {"node_feat_dim", "edge_feat_dim", "hidden", "basis_order",
                              "num_layers", "output_dim", "channel_mode"});
  if (obj.contains("node_feat_dim")) out.node_feat_dim = read_int(obj["node_feat_dim"], "model.node_feat_dim");
  if (obj.contains("edge_feat_dim")) out.edge_feat_dim = read_int(obj["edge_feat_dim"], "model.edge_feat_dim");
  if (obj.contains("hidden")) out.hidden = read_int(obj["hidden"], "model.hidden");
  if (obj.contains("basis_order")) out.basis_order = read_int(obj["basis_order"], "model.basis_order");
  if (obj.contains("num_layers")) out.num_layers = read_int(obj["num_layers"], "model.num_layers");
  if (obj.contains("output_dim")) out.output_dim = read_int(obj["output_dim"], "model.output_dim");
  if (obj.contains("channel_mode")) {
    out.channel_mode = nsgn::parse_channel_mode(read_string(obj["channel_mode"], "model.channel_mode"));
  }
}

void read_optimizer(const Json& obj, nsgn::OptimizerConfig& out) {
  require_keys(obj, "optimizer", {"kind", "lr", "beta1", "beta2", "eps", "weight_decay"});
  if (obj.contains("kind")) out.kind = nsgn::parse_optimizer_kind(read_string(obj["kind"], "optimizer.kind"));
  if (obj.contains("lr")) out.lr = read_real(obj["lr"], "optimizer.lr");
  if (obj.contains("beta1")) out.beta1 = read_real(obj["beta1"], "optimizer.beta1");
  if (obj.contains("beta2")) out.beta2 = read_real(obj["beta2"], "optimizer.beta2");
  if (obj.contains("eps")) out.eps = read_real(obj["eps"], "optimizer.eps");
  if (obj.contains("weight_decay")) out.weight_decay = read_real(obj["weight_decay"], "optimizer.weight_decay");
}

void read_task(const Json& obj, SyntheticTaskSpec& out) {
  require_keys(obj, "task", {"generator", "p", "n_min", "n_max", "n_graphs", "target", "seed"});
  if (obj.contains("generator")) out.generator = parse_generator(read_string(obj["generator"], "task.generator"));
  if (obj.contains("p")) out.p = read_real(obj["p"], "task.p");
  if (obj.contains("n_min")) out.n_min = read_int(obj["n_min"], "task.n_min");
  if (obj.contains("n_max")) out.n_max = read_int(obj["n_max"], "task.n_max");
  if (obj.contains("n_graphs")) out.n_graphs = read_int(obj["n_graphs"], "task.n_graphs");
  if (obj.contains("target")) out.target = parse_target(read_string(obj["target"], "task.target"));
  if (obj.contains("seed")) {
    const int s = read_int(obj["seed"], "task.seed");
    if (s < 0) bad("task.seed", "must be >= 0");
    out.seed = static_cast<std::uint64_t>(s);
  }
}

Json to_json(const nsgn::ModelConfig& c) {
  return Json{{"node_feat_dim", c.node_feat_dim}, {"edge_feat_dim", c.edge_feat_dim},
              {"hidden", c.hidden},                {"basis_order", c.basis_order},
              {"num_layers", c.num_layers},        {"output_dim", c.output_dim},
              {"channel_mode", nsgn::channel_mode_name(c.channel_mode)}};
}

Json to_json(const nsgn::BasisSpec& b) {
  return Json{{"family", nsgn::basis_kind_name(b.kind)},
              {"eps", b.eps},
              {"k", b.k},
              {"base", basis_family_name(b.base)}};
}

Json to_json(const nsgn::OptimizerConfig& o) {
  return Json{{"kind", nsgn::optimizer_kind_name(o.kind)}, {"lr", o.lr},
              {"beta1", o.beta1}, {"beta2", o.beta2}, {"eps", o.eps},
              {"weight_decay", o.weight_decay}};
}

Json to_json(const nsgn::TrainConfig& t) {
  return Json{{"model", to_json(t.model)},
              {"basis", to_json(t.basis)},
              {"optimizer", to_json(t.optimizer)},
              {"task", nsgn::task_kind_name(t.task)},
              {"epochs", t.epochs},
              {"batch_size", t.batch_size},
              {"lr_schedule", nsgn::lr_schedule_name(t.lr_schedule)},
              {"standardize_targets", t.standardize_targets},
              {"normalize_basis", t.normalize_basis},
              {"seed", t.seed}};
}

Json to_json(const SyntheticTaskSpec& s) {
  return Json{{"generator", generator_name(s.generator)}, {"p", s.p},
              {"n_min", s.n_min}, {"n_max", s.n_max}, {"n_graphs", s.n_graphs},
              {"target", target_name(s.target)}, {"seed", s.seed}};
}

nsgn::TrainConfig train_config_from_json(const Json& obj) {
  require_keys(obj, "train config", {"model", "basis", "optimizer", "task", "epochs", "batch_size",
                                     "lr_schedule", "standardize_targets", "normalize_basis",
                                     "seed"});
  nsgn::TrainConfig t;
  if (obj.contains("model")) read_model(obj["model"], t.model);
  if (obj.contains("basis")) {
    const Json& b = obj["basis"];
    require_keys(b, "basis", {"family", "eps", "k", "base"});
    if (b.contains("family")) t.basis.kind = nsgn::parse_basis_kind(read_string(b["family"], "basis.family"));
    if (b.contains("eps")) t.basis.eps = read_real(b["eps"], "basis.eps");
    if (b.contains("k")) t.basis.k = read_int(b["k"], "basis.k");
    if (b.contains("base")) t.basis.base = parse_basis_family(read_string(b["base"], "basis.base"));
  }
  if (obj.contains("optimizer")) read_optimizer(obj["optimizer"], t.optimizer);
  if (obj.contains("task")) t.task = nsgn::parse_task_kind(read_string(obj["task"], "task"));
  if (obj.contains("epochs")) t.epochs = read_int(obj["epochs"], "epochs");
  if (obj.contains("batch_size")) t.batch_size = read_int(obj["batch_size"], "batch_size");
  if (obj.contains("lr_schedule")) t.lr_schedule = nsgn::parse_lr_schedule(read_string(obj["lr_schedule"], "lr_schedule"));
  if (obj.contains("standardize_targets")) {
    t.standardize_targets = read_bool(obj["standardize_targets"], "standardize_targets");
  }
  if (obj.contains("normalize_basis")) {
    t.normalize_basis = read_bool(obj["normalize_basis"], "normalize_basis");
  }
  if (obj.contains("seed")) {
    if (!obj["seed"].is_number_unsigned()) bad("seed", "expected a non-negative integer");
    t.seed = obj["seed"].get<std::uint64_t>();
  }
  return t;
}

}  // namespace nsgc::harness::detail
