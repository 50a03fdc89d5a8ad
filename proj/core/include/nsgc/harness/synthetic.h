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

// Desk-scale synthetic graph-level regression tasks with exactly computed
// targets.

#ifndef NSGC_HARNESS_SYNTHETIC_H_
#define NSGC_HARNESS_SYNTHETIC_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "nsgc/graph.h"
#include "nsgc/nsgn/train.h"

namespace nsgc::harness {

enum class GeneratorKind { kErdosRenyi, kCycle, kStar, kBarbell, kMixed };
enum class TargetKind { kTriangleCount, kSpectralRadius, kAlgebraicConnectivity };

std::string_view generator_name(GeneratorKind kind);
GeneratorKind parse_generator(std::string_view name);
std::string_view target_name(TargetKind kind);
TargetKind parse_target(std::string_view name);

inline constexpr int kMaxSyntheticNodes = 64;
inline constexpr int kMinSyntheticGraphs = 10;

struct SyntheticTaskSpec {
  GeneratorKind generator = GeneratorKind::kErdosRenyi;
  double p = 0.3;  // edge probability for erdos_renyi (and mixed)
  int n_min = 8;
  int n_max = 16;
  int n_graphs = 100;
  TargetKind target = TargetKind::kTriangleCount;
  std::uint64_t seed = 0;
};

// Throws kBadConfig unless 2 <= n_min <= n_max <= 64, n_graphs >= 10 and
// p lies in [0, 1].
void validate(const SyntheticTaskSpec& spec);

// Number of triangles, by enumerating node triples.
double triangle_count(const Graph& g);
// Largest eigenvalue of A.
double spectral_radius(const Graph& g);
// Second smallest eigenvalue of L = D - A (0 for disconnected graphs and for a
// single node).
double algebraic_connectivity(const Graph& g);
double compute_target(const Graph& g, TargetKind target);

// One graph from the generator with n nodes and node features [1.0]; no target.
Graph generate_graph(GeneratorKind kind, int n, double p, std::mt19937_64& rng);

// n_graphs graphs with targets, split 8:1:1 in generation order. Deterministic
// for a fixed spec.
nsgn::DatasetSplits generate_dataset(const SyntheticTaskSpec& spec);

}  // namespace nsgc::harness

#endif  // NSGC_HARNESS_SYNTHETIC_H_
