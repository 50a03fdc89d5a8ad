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

#ifndef NSGC_SYM_MATRIX_H_
#define NSGC_SYM_MATRIX_H_

#include "nsgc/types.h"

namespace nsgc {

// Dense real symmetric matrix. Construction checks symmetry to
// 1e-12 * max(1, ||S||_F) and stores the exactly symmetrized entries.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& entries);

  // Averages `m` with its transpose; only for results that are symmetric up to
  // rounding, such as P f(L) P^T products.
  static SymMatrix symmetrized(const Matrix& m);
  static SymMatrix identity(Index n);
  static SymMatrix zero(Index n);
  static SymMatrix diagonal(const Vector& diag);

  Index n() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }
  double frobenius_norm() const { return entries_.norm(); }

 private:
  struct Trusted {};
  SymMatrix(Matrix entries, Trusted) : entries_(std::move(entries)) {}

  Matrix entries_;
};

// True when |m(i,j) - m(j,i)| <= 1e-12 * max(1, ||m||_F) for all i, j.
bool is_symmetric(const Matrix& m);

}  // namespace nsgc

#endif  // NSGC_SYM_MATRIX_H_
