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

#include "nsgc/harness/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "harness/json_config.h"
#include "nsgc/error.h"

namespace nsgc::harness {

namespace {

using detail::Json;

[[noreturn]] void parse_error(const std::string& msg) {
  throw Error(ErrorCode::kParseError, msg);
}

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    parse_error(std::string(what) + ": " + e.what());
  }
}

std::vector<double> number_row(const Json& row, std::string_view where) {
  if (!row.is_array()) parse_error(std::string(where) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(row.size());
  for (const Json& x : row) {
    if (!x.is_number()) parse_error(std::string(where) + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

GraphRecord record_from_json(const Json& obj, std::string_view where) {
  if (!obj.is_object()) parse_error(std::string(where) + ": expected a graph object");
  for (const auto& item : obj.items()) {
    const std::string& k = item.key();
    if (k != "num_nodes" && k != "edges" && k != "node_feat" && k != "edge_feat" &&
        k != "target") {
      parse_error(std::string(where) + ": unknown key '" + k + "'");
    }
  }
  GraphRecord r;
  if (!obj.contains("num_nodes") || !obj["num_nodes"].is_number_integer()) {
    parse_error(std::string(where) + ": num_nodes must be an integer");
  }
  const long long n = obj["num_nodes"].get<long long>();
  if (n < 0 || n > 1'000'000) parse_error(std::string(where) + ": num_nodes out of range");
  r.num_nodes = static_cast<int>(n);
  if (obj.contains("edges")) {
    if (!obj["edges"].is_array()) parse_error(std::string(where) + ": edges must be an array");
    for (const Json& e : obj["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        parse_error(std::string(where) + ": every edge must be a pair of integers");
      }
      r.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  if (!obj.contains("node_feat")) {
    // Topology-only input: one constant feature per node.
    r.node_feat.assign(static_cast<size_t>(std::max(r.num_nodes, 0)), std::vector<double>{1.0});
  } else if (!obj["node_feat"].is_array()) {
    parse_error(std::string(where) + ": node_feat must be an array of rows");
  } else {
    for (const Json& row : obj["node_feat"]) r.node_feat.push_back(number_row(row, "node_feat"));
  }
  if (obj.contains("edge_feat")) {
    if (!obj["edge_feat"].is_array()) parse_error(std::string(where) + ": edge_feat must be an array");
    for (const Json& row : obj["edge_feat"]) r.edge_feat.push_back(number_row(row, "edge_feat"));
  }
  if (obj.contains("target") && !obj["target"].is_null()) {
    if (!obj["target"].is_number()) parse_error(std::string(where) + ": target must be a number");
    r.target = obj["target"].get<double>();
  }
  return r;
}

// Numbers are written with format_exact so datasets round-trip bit for bit.
std::string record_to_json(const GraphRecord& r) {
  std::string out = "{\"num_nodes\": " + std::to_string(r.num_nodes) + ", \"edges\": [";
  for (size_t e = 0; e < r.edges.size(); ++e) {
    if (e) out += ", ";
    out += "[" + std::to_string(r.edges[e].first) + ", " + std::to_string(r.edges[e].second) + "]";
  }
  auto rows = [&out](const std::vector<std::vector<double>>& m) {
    out += "[";
    for (size_t i = 0; i < m.size(); ++i) {
      if (i) out += ", ";
      out += "[";
      for (size_t j = 0; j < m[i].size(); ++j) {
        if (j) out += ", ";
        out += format_exact(m[i][j]);
      }
      out += "]";
    }
    out += "]";
  };
  out += "], \"node_feat\": ";
  rows(r.node_feat);
  bool any_edge_feat = false;
  for (const auto& row : r.edge_feat) any_edge_feat |= !row.empty();
  if (any_edge_feat) {
    out += ", \"edge_feat\": ";
    rows(r.edge_feat);
  }
  if (r.target) out += ", \"target\": " + format_exact(*r.target);
  out += "}";
  return out;
}

}  // namespace

Graph graph_from_json(std::string_view text) {
  return build_graph(record_from_json(parse_json(text, "graph"), "graph"));
}

std::string graph_to_json(const Graph& g) { return record_to_json(g.to_record()) + "\n"; }

std::vector<Graph> dataset_from_json(std::string_view text) {
  const Json doc = parse_json(text, "dataset");
  if (!doc.is_array()) parse_error("dataset: expected an array of graphs");
  std::vector<Graph> out;
  out.reserve(doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    const std::string where = "dataset[" + std::to_string(i) + "]";
    try {
      out.push_back(build_graph(record_from_json(doc[i], where)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParseError) throw;
      throw Error(e.code(), where + ": " + e.what());
    }
  }
  return out;
}

std::string dataset_to_json(const std::vector<Graph>& graphs) {
  std::string out = "[\n";
  for (size_t i = 0; i < graphs.size(); ++i) {
    out += "  " + record_to_json(graphs[i].to_record());
    out += i + 1 < graphs.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read '" + path.string() + "'");
  return ss.str();
}

Graph load_graph(const std::filesystem::path& path) {
  return graph_from_json(read_text_file(path));
}

std::vector<Graph> load_dataset(const std::filesystem::path& path) {
  return dataset_from_json(read_text_file(path));
}

std::string checkpoint_to_json(const nsgn::TrainConfig& config,
                               const nsgn::ModelParams& params) {
  Json params_json = Json::array();
  for (const auto& v : nsgn::parameter_views(params)) {
    // Eigen storage is column-major; the file is row-major.
    Json values = Json::array();
    for (Index r = 0; r < v.rows; ++r) {
      for (Index c = 0; c < v.cols; ++c) values.push_back(v.data[c * v.rows + r]);
    }
    params_json.push_back(Json{{"name", v.name}, {"shape", {v.rows, v.cols}}, {"values", values}});
  }
  nsgn::TrainConfig echo = config;
  echo.model = params.config;
  const Json doc{{"format", "nsgc-checkpoint"},
                 {"version", kCheckpointVersion},
                 {"config", detail::to_json(echo)},
                 {"basis_scale", std::vector<double>(params.basis_scale.data(),
                                                     params.basis_scale.data() +
                                                         params.basis_scale.size())},
                 {"output_scale", params.output_scale},
                 {"output_shift", params.output_shift},
                 {"parameters", params_json}};
  return doc.dump(1) + "\n";
}

Checkpoint checkpoint_from_json(std::string_view text) {
  const Json doc = parse_json(text, "checkpoint");
  if (!doc.is_object() || doc.value("format", "") != "nsgc-checkpoint") {
    parse_error("checkpoint: missing format tag");
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    parse_error("checkpoint: missing version");
  }
  if (doc["version"].get<int>() != kCheckpointVersion) {
    throw Error(ErrorCode::kBadConfig,
                "checkpoint: unsupported version " + std::to_string(doc["version"].get<int>()));
  }
  if (!doc.contains("config")) parse_error("checkpoint: missing config");
  Checkpoint cp;
  cp.config = detail::train_config_from_json(doc["config"]);
  cp.params = nsgn::init_params(cp.config.model, 0);
  for (const char* key : {"output_scale", "output_shift"}) {
    if (!doc.contains(key) || !doc[key].is_number()) {
      parse_error(std::string("checkpoint: ") + key + " must be a number");
    }
  }
  cp.params.output_scale = doc["output_scale"].get<double>();
  cp.params.output_shift = doc["output_shift"].get<double>();
  if (!doc.contains("basis_scale")) parse_error("checkpoint: missing basis_scale");
  const std::vector<double> scale = number_row(doc["basis_scale"], "basis_scale");
  if (static_cast<Index>(scale.size()) != cp.params.basis_scale.size()) {
    throw Error(ErrorCode::kBadConfig, "checkpoint: basis_scale has the wrong length");
  }
  for (size_t t = 0; t < scale.size(); ++t) cp.params.basis_scale(static_cast<Index>(t)) = scale[t];
  if (!doc.contains("parameters") || !doc["parameters"].is_array()) {
    parse_error("checkpoint: parameters must be an array");
  }
  const Json& list = doc["parameters"];
  auto views = nsgn::parameter_views(cp.params);
  if (list.size() != views.size()) {
    throw Error(ErrorCode::kBadConfig,
                "checkpoint: expected " + std::to_string(views.size()) + " tensors, found " +
                    std::to_string(list.size()));
  }
  for (size_t t = 0; t < views.size(); ++t) {
    const Json& entry = list[t];
    const auto& v = views[t];
    if (!entry.is_object() || entry.value("name", "") != v.name) {
      throw Error(ErrorCode::kBadConfig, "checkpoint: tensor " + std::to_string(t) +
                                             " should be '" + v.name + "'");
    }
    const Json& shape = entry["shape"];
    if (!shape.is_array() || shape.size() != 2 || shape[0] != v.rows || shape[1] != v.cols) {
      throw Error(ErrorCode::kBadConfig, "checkpoint: shape mismatch for " + v.name);
    }
    const std::vector<double> values = number_row(entry["values"], v.name);
    if (static_cast<Index>(values.size()) != v.size()) {
      throw Error(ErrorCode::kBadConfig, "checkpoint: wrong value count for " + v.name);
    }
    for (Index r = 0; r < v.rows; ++r) {
      for (Index c = 0; c < v.cols; ++c) {
        v.data[c * v.rows + r] = values[static_cast<size_t>(r * v.cols + c)];
      }
    }
  }
  return cp;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string format_exact(double value) {
  if (!std::isfinite(value)) return format_number(value);
  char buf[32];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

void commit_files(const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
  namespace fs = std::filesystem;
  std::vector<fs::path> staged;
  auto cleanup = [&staged]() {
    std::error_code ignored;
    for (const auto& p : staged) fs::remove(p, ignored);
  };
  try {
    for (const auto& [path, content] : files) {
      std::error_code ec;
      if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
      if (ec) {
        throw Error(ErrorCode::kIoError,
                    "cannot create '" + path.parent_path().string() + "': " + ec.message());
      }
      fs::path tmp = path;
      tmp += ".partial";
      staged.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      out.close();
      if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
    }
    for (const auto& [path, content] : files) {
      if (fs::is_directory(path)) {
        throw Error(ErrorCode::kIoError, "cannot replace directory '" + path.string() + "'");
      }
    }
    for (size_t i = 0; i < files.size(); ++i) {
      std::error_code ec;
      fs::rename(staged[i], files[i].first, ec);
      if (ec) {
        throw Error(ErrorCode::kIoError,
                    "cannot move '" + files[i].first.string() + "' into place: " + ec.message());
      }
    }
  } catch (...) {
    cleanup();
    throw;
  }
}

}  // namespace nsgc::harness
