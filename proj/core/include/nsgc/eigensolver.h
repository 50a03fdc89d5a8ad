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

#ifndef NSGC_EIGENSOLVER_H_
#define NSGC_EIGENSOLVER_H_

#include "nsgc/sym_matrix.h"
#include "nsgc/types.h"

namespace nsgc {

// S = P diag(eigvals) P^T with eigenvectors as the columns of P.
//
// Eigenvalues are ordered by descending |lambda|; ties go to the larger signed
// value, then to the lower index on the diagonal of the converged Jacobi
// iterate. Within a degenerate eigenspace the basis is whatever the rotations
// produced; nothing downstream depends on that choice.
struct EigenDecomposition {
  Matrix eigvecs;
  Vector eigvals;

  Index n() const { return eigvals.size(); }
  // Magnitude under which an eigenvalue counts as zero:
  // 1e-9 * max(1, |lambda_1|).
  double zero_tolerance() const;
};

struct JacobiOptions {
  int max_sweeps = 100;
  // Stop once the off-diagonal Frobenius norm is below this times ||S||_F.
  double relative_tolerance = 1e-12;
};

// Cyclic Jacobi. Deterministic for identical input bits. Throws kNoConvergence
// when the sweep budget runs out.
EigenDecomposition eig_sym(const SymMatrix& s, const JacobiOptions& options = {});

SymMatrix reconstruct(const EigenDecomposition& d);

struct SpectrumStats {
  double spectral_gap_ratio = 1.0;  // |lambda_2 / lambda_1|
  double condition_number = 1.0;    // |lambda_1| / min nonzero |lambda_i|
  int num_zero = 0;
};

// spectral_gap_ratio is 1 when lambda_1 == 0 and 0 for a 1x1 matrix.
// condition_number is 1 when every eigenvalue is zero.
SpectrumStats spectrum_stats(const EigenDecomposition& d);

}  // namespace nsgc

#endif  // NSGC_EIGENSOLVER_H_
