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

#include "nsgc/graph.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "nsgc/error.h"

namespace nsgc {

namespace {

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows,
                      std::string_view what) {
  if (rows.empty()) return Matrix(0, 0);
  const size_t width = rows.front().size();
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(ErrorCode::kRaggedFeatures,
                  std::string(what) + " row " + std::to_string(r) + " has " +
                      std::to_string(rows[r].size()) + " values, expected " +
                      std::to_string(width));
    }
    for (size_t c = 0; c < width; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
  }
  return m;
}

std::vector<std::vector<double>> matrix_to_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(static_cast<size_t>(m.rows()));
  for (Index r = 0; r < m.rows(); ++r) {
    rows[static_cast<size_t>(r)].resize(static_cast<size_t>(m.cols()));
    for (Index c = 0; c < m.cols(); ++c) {
      rows[static_cast<size_t>(r)][static_cast<size_t>(c)] = m(r, c);
    }
  }
  return rows;
}

Vector augmented_degrees(const Graph& g) {
  Vector deg = Vector::Ones(g.num_nodes());
  for (const Edge& e : g.edges()) {
    deg(e.u) += 1.0;
    deg(e.v) += 1.0;
  }
  return deg;
}

}  // namespace

Graph build_graph(const GraphRecord& record) {
  const int n = record.num_nodes;
  if (n < 1 || n > kMaxNodes) {
    throw Error(ErrorCode::kGraphTooLarge,
                "num_nodes must be in [1, " + std::to_string(kMaxNodes) +
                    "], got " + std::to_string(n));
  }
  Graph g;
  g.num_nodes_ = n;

  std::set<std::pair<int, int>> seen;
  g.edges_.reserve(record.edges.size());
  for (const auto& [a, b] : record.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "edge {" + std::to_string(a) + "," + std::to_string(b) +
                      "} out of range for " + std::to_string(n) + " nodes");
    }
    if (a == b) {
      throw Error(ErrorCode::kSelfLoop,
                  "self-loop on node " + std::to_string(a));
    }
    const Edge e{std::min(a, b), std::max(a, b)};
    if (!seen.insert({e.u, e.v}).second) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "duplicate edge {" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + "}");
    }
    g.edges_.push_back(e);
  }

  if (record.node_feat.size() != static_cast<size_t>(n)) {
    throw Error(ErrorCode::kRaggedFeatures,
                "node_feat has " + std::to_string(record.node_feat.size()) +
                    " rows for " + std::to_string(n) + " nodes");
  }
  g.node_feat_ = rows_to_matrix(record.node_feat, "node_feat");

  if (record.edge_feat.empty()) {
    g.edge_feat_ = Matrix(static_cast<Index>(g.edges_.size()), 0);
  } else {
    if (record.edge_feat.size() != record.edges.size()) {
      throw Error(ErrorCode::kRaggedFeatures,
                  "edge_feat has " + std::to_string(record.edge_feat.size()) +
                      " rows for " + std::to_string(record.edges.size()) +
                      " edges");
    }
    g.edge_feat_ = rows_to_matrix(record.edge_feat, "edge_feat");
  }
  if (!g.node_feat_.allFinite() || !g.edge_feat_.allFinite()) {
    throw Error(ErrorCode::kDomainError, "graph features must be finite");
  }
  g.target_ = record.target;
  return g;
}

GraphRecord Graph::to_record() const {
  GraphRecord r;
  r.num_nodes = num_nodes_;
  for (const Edge& e : edges_) r.edges.emplace_back(e.u, e.v);
  r.node_feat = matrix_to_rows(node_feat_);
  if (edge_feat_.cols() > 0) r.edge_feat = matrix_to_rows(edge_feat_);
  r.target = target_;
  return r;
}

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> hit(mapping_.size(), false);
  for (int v : mapping_) {
    if (v < 0 || static_cast<size_t>(v) >= mapping_.size() ||
        hit[static_cast<size_t>(v)]) {
      throw Error(ErrorCode::kIndexOutOfRange, "mapping is not a permutation");
    }
    hit[static_cast<size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)] = i;
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (size_t i = 0; i < mapping_.size(); ++i) {
    inv[static_cast<size_t>(mapping_[i])] = static_cast<int>(i);
  }
  return Permutation(std::move(inv));
}

Graph permute_graph(const Graph& g, const Permutation& m) {
  if (m.n() != g.num_nodes()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "permutation size " + std::to_string(m.n()) +
                    " does not match graph size " +
                    std::to_string(g.num_nodes()));
  }
  GraphRecord r = g.to_record();
  for (auto& [a, b] : r.edges) {
    a = m[a];
    b = m[b];
  }
  std::vector<std::vector<double>> feat(r.node_feat.size());
  for (int i = 0; i < g.num_nodes(); ++i) {
    feat[static_cast<size_t>(m[i])] = std::move(r.node_feat[static_cast<size_t>(i)]);
  }
  r.node_feat = std::move(feat);
  return build_graph(r);
}

Matrix permute_matrix(const Matrix& s, const Permutation& m) {
  if (s.rows() != m.n() || s.cols() != m.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "permutation size does not match matrix");
  }
  Matrix out(s.rows(), s.cols());
  for (Index j = 0; j < s.cols(); ++j) {
    for (Index i = 0; i < s.rows(); ++i) {
      out(m[static_cast<int>(i)], m[static_cast<int>(j)]) = s(i, j);
    }
  }
  return out;
}

SymMatrix permute_matrix(const SymMatrix& s, const Permutation& m) {
  return SymMatrix::symmetrized(permute_matrix(s.matrix(), m));
}

SymMatrix adjacency(const Graph& g) {
  Matrix a = Matrix::Zero(g.num_nodes(), g.num_nodes());
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return SymMatrix::symmetrized(a);
}

SymMatrix augmented_adjacency(const Graph& g) {
  Matrix a = adjacency(g).matrix();
  a.diagonal().array() += 1.0;
  return SymMatrix::symmetrized(a);
}

std::string_view basis_family_name(BasisFamily family) {
  switch (family) {
    case BasisFamily::kRawAug: return "raw_aug";
    case BasisFamily::kSymNorm: return "sym_norm";
    case BasisFamily::kRwNorm: return "rw_norm";
    case BasisFamily::kLaplacian: return "laplacian";
  }
  return "unknown";
}

BasisFamily parse_basis_family(std::string_view name) {
  if (name == "raw_aug") return BasisFamily::kRawAug;
  if (name == "sym_norm") return BasisFamily::kSymNorm;
  if (name == "rw_norm") return BasisFamily::kRwNorm;
  if (name == "laplacian") return BasisFamily::kLaplacian;
  throw Error(ErrorCode::kBadConfig,
              "unknown basis family '" + std::string(name) +
                  "' (expected raw_aug, sym_norm, rw_norm or laplacian)");
}

Matrix basis_matrix(const Graph& g, BasisFamily family) {
  switch (family) {
    case BasisFamily::kRawAug:
      return augmented_adjacency(g).matrix();
    case BasisFamily::kSymNorm: {
      const Vector inv_sqrt = augmented_degrees(g).array().rsqrt();
      return inv_sqrt.asDiagonal() * augmented_adjacency(g).matrix() *
             inv_sqrt.asDiagonal();
    }
    case BasisFamily::kRwNorm: {
      const Vector inv = augmented_degrees(g).array().inverse();
      return inv.asDiagonal() * augmented_adjacency(g).matrix();
    }
    case BasisFamily::kLaplacian: {
      const Matrix a = adjacency(g).matrix();
      Matrix l = -a;
      l.diagonal() = a.rowwise().sum();
      return l;
    }
  }
  throw Error(ErrorCode::kBadConfig, "unknown basis family");
}

SymMatrix symmetric_basis(const Graph& g, BasisFamily family) {
  if (family == BasisFamily::kRwNorm) {
    throw Error(ErrorCode::kNotSymmetric,
                "rw_norm (D~^-1 A~) is not symmetric; use spectral_matrix for "
                "its spectrum");
  }
  return SymMatrix::symmetrized(basis_matrix(g, family));
}

SymMatrix spectral_matrix(const Graph& g, BasisFamily family) {
  if (family == BasisFamily::kRwNorm) {
    return symmetric_basis(g, BasisFamily::kSymNorm);
  }
  return symmetric_basis(g, family);
}

}  // namespace nsgc
