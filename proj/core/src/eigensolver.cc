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

#include "nsgc/eigensolver.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "nsgc/error.h"

namespace nsgc {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

// One rotation in the (p, q) plane that zeroes a(p, q); a and v are updated in
// place (a <- J^T a J, v <- v J).
void rotate(Matrix& a, Matrix& v, Index p, Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) /
        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Index n = a.rows();

  for (Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

double EigenDecomposition::zero_tolerance() const {
  const double lead = eigvals.size() > 0 ? std::abs(eigvals(0)) : 0.0;
  return 1e-9 * std::max(1.0, lead);
}

EigenDecomposition eig_sym(const SymMatrix& s, const JacobiOptions& options) {
  const Index n = s.n();
  Matrix a = s.matrix();
  if (!a.allFinite()) {
    throw Error(ErrorCode::kDomainError, "eig_sym: matrix has non-finite entries");
  }
  Matrix v = Matrix::Identity(n, n);
  const double target = options.relative_tolerance * a.norm();

  bool converged = off_diagonal_norm(a) <= target;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "Jacobi iteration did not converge in " +
                    std::to_string(options.max_sweeps) + " sweeps");
  }

  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const Vector diag = a.diagonal();
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    const double ax = std::abs(diag(x));
    const double ay = std::abs(diag(y));
    if (ax != ay) return ax > ay;
    return diag(x) > diag(y);
  });

  EigenDecomposition d;
  d.eigvals.resize(n);
  d.eigvecs.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    d.eigvals(i) = diag(order[static_cast<size_t>(i)]);
    d.eigvecs.col(i) = v.col(order[static_cast<size_t>(i)]);
  }
  return d;
}

SymMatrix reconstruct(const EigenDecomposition& d) {
  return SymMatrix::symmetrized(d.eigvecs * d.eigvals.asDiagonal() *
                                d.eigvecs.transpose());
}

SpectrumStats spectrum_stats(const EigenDecomposition& d) {
  SpectrumStats stats;
  const Index n = d.n();
  if (n == 0) return stats;
  const double tol = d.zero_tolerance();
  const double lead = std::abs(d.eigvals(0));

  double min_nonzero = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double m = std::abs(d.eigvals(i));
    if (m <= tol) {
      ++stats.num_zero;
    } else {
      min_nonzero = m;  // eigenvalues are sorted by descending magnitude
    }
  }
  if (lead <= tol) {
    stats.spectral_gap_ratio = 1.0;
    stats.condition_number = 1.0;
    return stats;
  }
  stats.spectral_gap_ratio = n >= 2 ? std::abs(d.eigvals(1)) / lead : 0.0;
  stats.condition_number = lead / min_nonzero;
  return stats;
}

}  // namespace nsgc
