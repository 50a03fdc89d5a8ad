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

// File formats: graph and dataset JSON, model checkpoints, CSV number
// formatting and all-or-nothing output commits.
//
// Graph JSON is an object with `num_nodes`, `edges` ([u, v] pairs),
// optional `node_feat` (one array per node,
// defaulting to the single feature 1.0), optional `edge_feat` (aligned with
// `edges`) and optional numeric `target`. A dataset is a JSON array of graphs.
//
// A checkpoint is a JSON object
//
//   {"format": "nsgc-checkpoint", "version": 1,
//    "config": {...training configuration echo...},
//    "basis_scale": [k + 1 numbers], "output_scale": s, "output_shift": t,
//    "parameters": [{"name": "node_encoder.0.weight", "shape": [r, c],
//                    "values": [... r * c numbers, row-major ...]}, ...]}
//
// with parameters in the order of nsgn::parameter_views.

#ifndef NSGC_HARNESS_IO_H_
#define NSGC_HARNESS_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsgc/graph.h"
#include "nsgc/nsgn/model.h"
#include "nsgc/nsgn/train.h"

namespace nsgc::harness {

inline constexpr int kCheckpointVersion = 1;

// Errors: kParseError for malformed JSON or wrong field types, plus every
// build_graph error.
Graph graph_from_json(std::string_view text);
std::string graph_to_json(const Graph& g);
std::vector<Graph> dataset_from_json(std::string_view text);
std::string dataset_to_json(const std::vector<Graph>& graphs);

// kIoError when the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);
Graph load_graph(const std::filesystem::path& path);
std::vector<Graph> load_dataset(const std::filesystem::path& path);

struct Checkpoint {
  nsgn::TrainConfig config;
  nsgn::ModelParams params;
};

std::string checkpoint_to_json(const nsgn::TrainConfig& config,
                               const nsgn::ModelParams& params);
// kParseError on malformed input, kBadConfig on an unsupported version or a
// parameter list that does not match the configured shapes.
Checkpoint checkpoint_from_json(std::string_view text);

// 9 significant digits, used for every reported number.
std::string format_number(double value);
// Shortest form that reads back to the same double, used where values must
// round-trip (basis matrices).
std::string format_exact(double value);

// Writes every file to a temporary sibling first and renames them into place
// only after all writes succeeded, so a failure leaves no partial outputs.
// Creates missing parent directories. Throws kIoError.
void commit_files(const std::vector<std::pair<std::filesystem::path, std::string>>& files);

}  // namespace nsgc::harness

#endif  // NSGC_HARNESS_IO_H_
