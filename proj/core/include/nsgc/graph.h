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

#ifndef NSGC_GRAPH_H_
#define NSGC_GRAPH_H_

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "nsgc/sym_matrix.h"
#include "nsgc/types.h"

namespace nsgc {

// Raw, unvalidated description of a graph as read from JSON or produced by a
// generator. `edge_feat` is either empty or aligned with `edges`.
struct GraphRecord {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<double>> node_feat;
  std::vector<std::vector<double>> edge_feat;
  std::optional<double> target;
};

struct Edge {
  int u;  // u < v
  int v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Validated undirected simple graph. Immutable once built.
class Graph {
 public:
  int num_nodes() const { return num_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // n x d_node.
  const Matrix& node_feat() const { return node_feat_; }
  // |edges| x d_edge, row e belongs to edges()[e]. d_edge may be zero.
  const Matrix& edge_feat() const { return edge_feat_; }
  Index node_feat_dim() const { return node_feat_.cols(); }
  Index edge_feat_dim() const { return edge_feat_.cols(); }
  const std::optional<double>& target() const { return target_; }

  GraphRecord to_record() const;

 private:
  friend Graph build_graph(const GraphRecord& record);

  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  Matrix node_feat_;
  Matrix edge_feat_;
  std::optional<double> target_;
};

// Errors: kIndexOutOfRange, kSelfLoop, kDuplicateEdge, kRaggedFeatures,
// kGraphTooLarge (num_nodes outside [1, kMaxNodes]).
Graph build_graph(const GraphRecord& record);

// Relabeling i -> mapping[i]; the matrix form is M S M^T with M(mapping[i], i) = 1.
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int n);

  int n() const { return static_cast<int>(mapping_.size()); }
  int operator[](int i) const { return mapping_[static_cast<size_t>(i)]; }
  const std::vector<int>& mapping() const { return mapping_; }
  Permutation inverse() const;

 private:
  std::vector<int> mapping_;
};

Graph permute_graph(const Graph& g, const Permutation& m);
SymMatrix permute_matrix(const SymMatrix& s, const Permutation& m);
Matrix permute_matrix(const Matrix& s, const Permutation& m);

SymMatrix adjacency(const Graph& g);
// A + I.
SymMatrix augmented_adjacency(const Graph& g);

enum class BasisFamily {
  kRawAug,    // A + I
  kSymNorm,   // D~^{-1/2} (A + I) D~^{-1/2}
  kRwNorm,    // D~^{-1} (A + I), not symmetric
  kLaplacian, // D - A
};

std::string_view basis_family_name(BasisFamily family);
// Accepts "raw_aug", "sym_norm", "rw_norm", "laplacian". Throws kBadConfig.
BasisFamily parse_basis_family(std::string_view name);

// The requested matrix as a plain dense matrix (rw_norm is not symmetric).
Matrix basis_matrix(const Graph& g, BasisFamily family);

// Same as basis_matrix but typed symmetric; kNotSymmetric for rw_norm.
SymMatrix symmetric_basis(const Graph& g, BasisFamily family);

// A symmetric matrix similar to basis_matrix(g, family): the matrix itself for
// the symmetric families, D~^{1/2} (D~^{-1} A~) D~^{-1/2} = sym_norm for rw_norm.
SymMatrix spectral_matrix(const Graph& g, BasisFamily family);

}  // namespace nsgc

#endif  // NSGC_GRAPH_H_
