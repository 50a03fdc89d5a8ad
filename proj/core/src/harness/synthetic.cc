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

#include "nsgc/harness/synthetic.h"

#include <algorithm>
#include <string>
#include <utility>

#include "nsgc/eigensolver.h"
#include "nsgc/error.h"

namespace nsgc::harness {

namespace {

[[noreturn]] void bad_config(const std::string& msg) {
  throw Error(ErrorCode::kBadConfig, msg);
}

Graph from_edges(int n, std::vector<std::pair<int, int>> edges) {
  GraphRecord r;
  r.num_nodes = n;
  r.edges = std::move(edges);
  r.node_feat.assign(static_cast<size_t>(n), std::vector<double>{1.0});
  return build_graph(r);
}

std::vector<std::pair<int, int>> clique(int first, int size) {
  std::vector<std::pair<int, int>> edges;
  for (int u = first; u < first + size; ++u) {
    for (int v = u + 1; v < first + size; ++v) edges.emplace_back(u, v);
  }
  return edges;
}

}  // namespace

std::string_view generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kErdosRenyi: return "erdos_renyi";
    case GeneratorKind::kCycle: return "cycle";
    case GeneratorKind::kStar: return "star";
    case GeneratorKind::kBarbell: return "barbell";
    case GeneratorKind::kMixed: return "mixed";
  }
  return "unknown";
}

GeneratorKind parse_generator(std::string_view name) {
  for (GeneratorKind k : {GeneratorKind::kErdosRenyi, GeneratorKind::kCycle,
                          GeneratorKind::kStar, GeneratorKind::kBarbell,
                          GeneratorKind::kMixed}) {
    if (generator_name(k) == name) return k;
  }
  bad_config("unknown generator '" + std::string(name) +
             "' (expected erdos_renyi, cycle, star, barbell or mixed)");
}

std::string_view target_name(TargetKind kind) {
  switch (kind) {
    case TargetKind::kTriangleCount: return "triangle_count";
    case TargetKind::kSpectralRadius: return "spectral_radius";
    case TargetKind::kAlgebraicConnectivity: return "algebraic_connectivity";
  }
  return "unknown";
}

TargetKind parse_target(std::string_view name) {
  for (TargetKind k : {TargetKind::kTriangleCount, TargetKind::kSpectralRadius,
                       TargetKind::kAlgebraicConnectivity}) {
    if (target_name(k) == name) return k;
  }
  bad_config("unknown target '" + std::string(name) +
             "' (expected triangle_count, spectral_radius or algebraic_connectivity)");
}

void validate(const SyntheticTaskSpec& spec) {
  if (spec.n_min < 2) bad_config("n_min must be >= 2");
  if (spec.n_max < spec.n_min) bad_config("n_max must be >= n_min");
  if (spec.n_max > kMaxSyntheticNodes) {
    bad_config("n_max must be <= " + std::to_string(kMaxSyntheticNodes));
  }
  if (spec.n_graphs < kMinSyntheticGraphs) {
    bad_config("n_graphs must be >= " + std::to_string(kMinSyntheticGraphs));
  }
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) bad_config("p must lie in [0, 1]");
}

double triangle_count(const Graph& g) {
  const Matrix a = adjacency(g).matrix();
  const int n = g.num_nodes();
  long count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      for (int k = j + 1; k < n; ++k) {
        if (a(i, k) != 0.0 && a(j, k) != 0.0) ++count;
      }
    }
  }
  return static_cast<double>(count);
}

double spectral_radius(const Graph& g) {
  return eig_sym(adjacency(g)).eigvals.maxCoeff();
}

double algebraic_connectivity(const Graph& g) {
  if (g.num_nodes() < 2) return 0.0;
  Vector values = eig_sym(symmetric_basis(g, BasisFamily::kLaplacian)).eigvals;
  std::sort(values.begin(), values.end());
  return std::max(0.0, values(1));
}

double compute_target(const Graph& g, TargetKind target) {
  switch (target) {
    case TargetKind::kTriangleCount: return triangle_count(g);
    case TargetKind::kSpectralRadius: return spectral_radius(g);
    case TargetKind::kAlgebraicConnectivity: return algebraic_connectivity(g);
  }
  bad_config("unknown target");
}

Graph generate_graph(GeneratorKind kind, int n, double p, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> edges;
  switch (kind) {
    case GeneratorKind::kErdosRenyi: {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (unit(rng) < p) edges.emplace_back(u, v);
        }
      }
      break;
    }
    case GeneratorKind::kCycle:
      for (int u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
      if (n >= 3) edges.emplace_back(0, n - 1);
      break;
    case GeneratorKind::kStar:
      for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
      break;
    case GeneratorKind::kBarbell: {
      const int left = n / 2;
      edges = clique(0, left);
      for (const auto& e : clique(left, n - left)) edges.push_back(e);
      edges.emplace_back(left - 1, left);
      break;
    }
    case GeneratorKind::kMixed: {
      std::uniform_int_distribution<int> pick(0, 3);
      return generate_graph(static_cast<GeneratorKind>(pick(rng)), n, p, rng);
    }
  }
  return from_edges(n, std::move(edges));
}

nsgn::DatasetSplits generate_dataset(const SyntheticTaskSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> size(spec.n_min, spec.n_max);
  std::vector<Graph> graphs;
  graphs.reserve(static_cast<size_t>(spec.n_graphs));
  for (int i = 0; i < spec.n_graphs; ++i) {
    const Graph g = generate_graph(spec.generator, size(rng), spec.p, rng);
    GraphRecord r = g.to_record();
    r.target = compute_target(g, spec.target);
    graphs.push_back(build_graph(r));
  }
  const size_t total = graphs.size();
  const size_t train = total * 8 / 10;
  const size_t valid = total / 10;
  nsgn::DatasetSplits out;
  out.train.assign(graphs.begin(), graphs.begin() + static_cast<std::ptrdiff_t>(train));
  out.valid.assign(graphs.begin() + static_cast<std::ptrdiff_t>(train),
                   graphs.begin() + static_cast<std::ptrdiff_t>(train + valid));
  out.test.assign(graphs.begin() + static_cast<std::ptrdiff_t>(train + valid), graphs.end());
  return out;
}

}  // namespace nsgc::harness
