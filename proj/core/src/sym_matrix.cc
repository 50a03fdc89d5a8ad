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

#include "nsgc/sym_matrix.h"

#include <algorithm>
#include <string>

#include "nsgc/error.h"

namespace nsgc {

bool is_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  const double tol = 1e-12 * std::max(1.0, m.norm());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = j + 1; i < m.rows(); ++i) {
      if (!(std::abs(m(i, j) - m(j, i)) <= tol)) return false;
    }
  }
  return true;
}

SymMatrix::SymMatrix(const Matrix& entries) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "SymMatrix needs a square matrix, got " +
                    std::to_string(entries.rows()) + "x" +
                    std::to_string(entries.cols()));
  }
  if (!is_symmetric(entries)) {
    throw Error(ErrorCode::kNotSymmetric, "matrix is not symmetric");
  }
  entries_ = 0.5 * (entries + entries.transpose());
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "SymMatrix needs a square matrix");
  }
  return SymMatrix(Matrix(0.5 * (m + m.transpose())), Trusted{});
}

SymMatrix SymMatrix::identity(Index n) {
  return SymMatrix(Matrix::Identity(n, n), Trusted{});
}

SymMatrix SymMatrix::zero(Index n) {
  return SymMatrix(Matrix::Zero(n, n), Trusted{});
}

SymMatrix SymMatrix::diagonal(const Vector& diag) {
  return SymMatrix(Matrix(diag.asDiagonal()), Trusted{});
}

}  // namespace nsgc
