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

#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "nsgc/eigensolver.h"
#include "nsgc/graph.h"
#include "test_support.h"

namespace nsgc {
namespace {

using testing::graph_from_edges;
using testing::path2;
using testing::random_graph;
using testing::random_permutation;
using testing::triangle;

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

TEST(BuildGraph, AcceptsSmallGraphs) {
  const Graph p2 = path2();
  EXPECT_EQ(p2.num_nodes(), 2);
  ASSERT_EQ(p2.edges().size(), 1u);
  EXPECT_EQ(p2.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(triangle().edges().size(), 3u);
}

TEST(BuildGraph, NormalizesEdgeOrientation) {
  const Graph g = graph_from_edges(3, {{2, 0}});
  EXPECT_EQ(g.edges()[0], (Edge{0, 2}));
}

TEST(BuildGraph, RejectsMalformedRecords) {
  EXPECT_NSGC_ERROR(graph_from_edges(2, {{0, 0}}), ErrorCode::kSelfLoop);
  EXPECT_NSGC_ERROR(graph_from_edges(2, {{0, 2}}), ErrorCode::kIndexOutOfRange);
  EXPECT_NSGC_ERROR(graph_from_edges(2, {{-1, 1}}), ErrorCode::kIndexOutOfRange);
  EXPECT_NSGC_ERROR(graph_from_edges(3, {{0, 1}, {1, 0}}), ErrorCode::kDuplicateEdge);
  EXPECT_NSGC_ERROR(graph_from_edges(0, {}), ErrorCode::kGraphTooLarge);
  EXPECT_NSGC_ERROR(graph_from_edges(kMaxNodes + 1, {}), ErrorCode::kGraphTooLarge);

  GraphRecord ragged;
  ragged.num_nodes = 2;
  ragged.node_feat = {{1.0, 2.0}, {1.0}};
  EXPECT_NSGC_ERROR(build_graph(ragged), ErrorCode::kRaggedFeatures);
  ragged.node_feat = {{1.0}};
  EXPECT_NSGC_ERROR(build_graph(ragged), ErrorCode::kRaggedFeatures);

  GraphRecord edge_feat;
  edge_feat.num_nodes = 3;
  edge_feat.node_feat = {{1.0}, {1.0}, {1.0}};
  edge_feat.edges = {{0, 1}, {1, 2}};
  edge_feat.edge_feat = {{1.0, 2.0}, {3.0}};
  EXPECT_NSGC_ERROR(build_graph(edge_feat), ErrorCode::kRaggedFeatures);
  edge_feat.edge_feat = {{1.0}};
  EXPECT_NSGC_ERROR(build_graph(edge_feat), ErrorCode::kRaggedFeatures);
}

TEST(BuildGraph, RecordRoundTrip) {
  std::mt19937_64 rng(1);
  const Graph g = random_graph(9, 0.4, rng, 3, 2);
  const Graph h = build_graph(g.to_record());
  EXPECT_EQ(g.edges(), h.edges());
  EXPECT_EQ(g.node_feat(), h.node_feat());
  EXPECT_EQ(g.edge_feat(), h.edge_feat());
}

TEST(Adjacency, HandExamples) {
  EXPECT_EQ(adjacency(path2()).matrix(), mat({{0, 1}, {1, 0}}));
  EXPECT_EQ(adjacency(triangle()).matrix(), Matrix::Ones(3, 3) - Matrix::Identity(3, 3));
  EXPECT_EQ(adjacency(graph_from_edges(3, {})).matrix(), Matrix::Zero(3, 3));
  EXPECT_EQ(augmented_adjacency(path2()).matrix(), Matrix::Ones(2, 2));
  EXPECT_EQ(augmented_adjacency(triangle()).matrix(), Matrix::Ones(3, 3));
  EXPECT_EQ(augmented_adjacency(graph_from_edges(3, {})).matrix(), Matrix::Identity(3, 3));
}

TEST(BasisMatrix, HandExamples) {
  EXPECT_TRUE(basis_matrix(path2(), BasisFamily::kSymNorm).isApprox(Matrix::Constant(2, 2, 0.5)));
  EXPECT_EQ(basis_matrix(path2(), BasisFamily::kLaplacian), mat({{1, -1}, {-1, 1}}));
  EXPECT_TRUE(basis_matrix(triangle(), BasisFamily::kRwNorm)
                  .isApprox(Matrix::Constant(3, 3, 1.0 / 3.0)));
  EXPECT_EQ(basis_matrix(triangle(), BasisFamily::kRawAug), Matrix::Ones(3, 3));
}

TEST(BasisMatrix, RandomWalkIsNotSymmetric) {
  const Graph star = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_FALSE(is_symmetric(basis_matrix(star, BasisFamily::kRwNorm)));
  EXPECT_NSGC_ERROR(symmetric_basis(star, BasisFamily::kRwNorm), ErrorCode::kNotSymmetric);
}

TEST(BasisMatrix, RandomWalkSpectrumMatchesSymmetricSimilarity) {
  std::mt19937_64 rng(2);
  const Graph g = random_graph(10, 0.3, rng);
  Eigen::EigenSolver<Matrix> general(basis_matrix(g, BasisFamily::kRwNorm));
  Vector rw = general.eigenvalues().real();
  EXPECT_LE(general.eigenvalues().imag().cwiseAbs().maxCoeff(), 1e-10);
  Vector sym = eig_sym(spectral_matrix(g, BasisFamily::kRwNorm)).eigvals;
  std::sort(rw.begin(), rw.end());
  std::sort(sym.begin(), sym.end());
  EXPECT_LE((rw - sym).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(BasisFamilyNames, RoundTrip) {
  for (BasisFamily f : {BasisFamily::kRawAug, BasisFamily::kSymNorm, BasisFamily::kRwNorm,
                        BasisFamily::kLaplacian}) {
    EXPECT_EQ(parse_basis_family(basis_family_name(f)), f);
  }
  EXPECT_NSGC_ERROR(parse_basis_family("cayley"), ErrorCode::kBadConfig);
}

TEST(Permutation, Validation) {
  EXPECT_NSGC_ERROR(Permutation({0, 0}), ErrorCode::kIndexOutOfRange);
  EXPECT_NSGC_ERROR(Permutation({0, 2}), ErrorCode::kIndexOutOfRange);
  const Permutation p({2, 0, 1});
  const Permutation inv = p.inverse();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(inv[p[i]], i);
  EXPECT_NSGC_ERROR(permute_graph(path2(), Permutation::identity(3)),
                    ErrorCode::kDimensionMismatch);
}

TEST(Permutation, HandExamples) {
  const Permutation swap({1, 0});
  EXPECT_EQ(permute_matrix(adjacency(path2()), swap).matrix(), mat({{0, 1}, {1, 0}}));
  EXPECT_EQ(permute_matrix(SymMatrix::diagonal(Vector::LinSpaced(2, 1, 2)), swap).matrix(),
            mat({{2, 0}, {0, 1}}));
  std::mt19937_64 rng(3);
  const Graph g = random_graph(7, 0.5, rng);
  const Graph same = permute_graph(g, Permutation::identity(7));
  EXPECT_EQ(same.edges(), g.edges());
  EXPECT_EQ(same.node_feat(), g.node_feat());
}

// Property sweep over random graphs: relabeling commutes with adjacency, and
// the augmented matrix adds exactly the identity.
TEST(GraphProperties, RandomGraphs) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> size(1, 24);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = size(rng);
    const Graph g = random_graph(n, 0.3, rng, 2, 1);
    const Permutation m = random_permutation(n, rng);
    EXPECT_EQ(adjacency(permute_graph(g, m)).matrix(), permute_matrix(adjacency(g), m).matrix());
    EXPECT_EQ(augmented_adjacency(g).matrix() - adjacency(g).matrix(), Matrix::Identity(n, n));

    const Vector sym = eig_sym(symmetric_basis(g, BasisFamily::kSymNorm)).eigvals;
    EXPECT_LE(sym.cwiseAbs().maxCoeff(), 1.0 + 1e-10);
    const Vector lap = eig_sym(symmetric_basis(g, BasisFamily::kLaplacian)).eigvals;
    EXPECT_GE(lap.minCoeff(), -1e-10);
  }
}

TEST(PermuteGraph, CarriesFeatures) {
  std::mt19937_64 rng(5);
  const Graph g = random_graph(6, 0.6, rng, 2, 3);
  const Permutation m = random_permutation(6, rng);
  const Graph h = permute_graph(g, m);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(h.node_feat().row(m[i]), g.node_feat().row(i));
  ASSERT_EQ(h.edges().size(), g.edges().size());
  for (size_t e = 0; e < g.edges().size(); ++e) {
    const int u = std::min(m[g.edges()[e].u], m[g.edges()[e].v]);
    const int v = std::max(m[g.edges()[e].u], m[g.edges()[e].v]);
    const auto it = std::find(h.edges().begin(), h.edges().end(), Edge{u, v});
    ASSERT_NE(it, h.edges().end());
    EXPECT_EQ(h.edge_feat().row(it - h.edges().begin()), g.edge_feat().row(static_cast<Index>(e)));
  }
}

TEST(SymMatrix, ValidatesInput) {
  EXPECT_NSGC_ERROR(SymMatrix(mat({{0, 1}, {2, 0}})), ErrorCode::kNotSymmetric);
  EXPECT_NSGC_ERROR(SymMatrix(Matrix::Zero(2, 3)), ErrorCode::kDimensionMismatch);
  const SymMatrix s(mat({{1, 2 + 1e-14}, {2, 1}}));
  EXPECT_EQ(s(0, 1), s(1, 0));
}

}  // namespace
}  // namespace nsgc
