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

#include "nsgc/filters.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsgc/error.h"

namespace nsgc {

namespace {

double eps_power(double magnitude, double exponent) {
  if (exponent == 0.0) return 1.0;
  return magnitude == 0.0 ? 0.0 : std::exp(exponent * std::log(magnitude));
}

void check_stack_shapes(const BasisStack& stack, const FilterCoefficients& theta,
                        const Matrix& h) {
  if (static_cast<size_t>(theta.order()) + 1 != stack.mats.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "filter has " + std::to_string(theta.order() + 1) +
                    " coefficients per channel but the stack holds " +
                    std::to_string(stack.mats.size()) + " matrices");
  }
  if (h.rows() != stack.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "signal has " + std::to_string(h.rows()) + " rows, stack is " +
                    std::to_string(stack.n()) + "x" + std::to_string(stack.n()));
  }
}

std::vector<double> diffusion_coefficients(const DiffusionWeights& weights,
                                           int truncation, double* tail) {
  std::vector<double> theta;
  if (const auto* ppr = std::get_if<PprWeights>(&weights)) {
    if (!(ppr->alpha > 0.0 && ppr->alpha <= 1.0)) {
      throw Error(ErrorCode::kDomainError, "PPR alpha must lie in (0, 1]");
    }
    double w = ppr->alpha;
    for (int k = 0; k <= truncation; ++k) {
      theta.push_back(w);
      w *= 1.0 - ppr->alpha;
    }
    *tail = std::pow(1.0 - ppr->alpha, truncation + 1);
  } else if (const auto* heat = std::get_if<HeatWeights>(&weights)) {
    if (!(heat->t >= 0.0)) {
      throw Error(ErrorCode::kDomainError, "heat kernel time must be >= 0");
    }
    double w = std::exp(-heat->t);
    for (int k = 0; k <= truncation; ++k) {
      theta.push_back(w);
      w *= heat->t / (k + 1);
    }
    // Remaining Poisson mass, summed term by term to avoid cancellation.
    double rest = 0.0;
    for (int k = truncation + 1; w > 0.0 && k < truncation + 100000; ++k) {
      rest += w;
      if (k > heat->t && w <= 1e-18 * rest) break;
      w *= heat->t / (k + 1);
    }
    *tail = rest;
  } else {
    const auto& list = std::get<ExplicitWeights>(weights).theta;
    const size_t used = std::min(list.size(), static_cast<size_t>(truncation) + 1);
    theta.assign(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(used));
    double rest = 0.0;
    for (size_t k = used; k < list.size(); ++k) rest += std::abs(list[k]);
    *tail = rest;
  }
  return theta;
}

}  // namespace

FilterCoefficients::FilterCoefficients(Matrix theta) : theta_(std::move(theta)) {
  if (theta_.rows() < 1 || theta_.cols() < 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "filter coefficients need at least one row and column");
  }
  if (!theta_.allFinite()) {
    throw Error(ErrorCode::kDomainError, "filter coefficients must be finite");
  }
}

FilterCoefficients FilterCoefficients::shared(const Vector& theta) {
  return FilterCoefficients(Matrix(theta));
}

Vector filter_response(const Vector& theta, const Vector& eigvals, double eps) {
  Vector out = Vector::Zero(eigvals.size());
  for (Index j = 0; j < eigvals.size(); ++j) {
    const double m = std::abs(eigvals(j));
    for (Index i = 0; i < theta.size(); ++i) {
      out(j) += theta(i) * eps_power(m, eps * static_cast<double>(i));
    }
  }
  return out;
}

FilterFit fit_filter(const EigenDecomposition& d, const Vector& desired,
                     double eps, int k) {
  if (k < 0) throw Error(ErrorCode::kDomainError, "filter order k must be >= 0");
  if (!(eps > 0.0)) throw Error(ErrorCode::kDomainError, "eps must be > 0");
  if (desired.size() != d.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "desired response has " + std::to_string(desired.size()) +
                    " values for " + std::to_string(d.n()) + " eigenvalues");
  }
  const double zero_tol = d.zero_tolerance();
  Matrix v(d.n(), k + 1);
  for (Index i = 0; i < d.n(); ++i) {
    double m = std::abs(d.eigvals(i));
    if (m <= zero_tol) m = 0.0;
    for (int j = 0; j <= k; ++j) v(i, j) = eps_power(m, eps * j);
  }
  // Orthogonal factorization with a minimum-norm solve; V can be badly
  // conditioned so the normal equations are avoided.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(v);
  FilterFit fit;
  fit.theta = cod.solve(desired);
  fit.residual = (v * fit.theta - desired).norm();
  fit.rank = cod.rank();
  fit.rank_deficient = fit.rank < std::min<Index>(v.rows(), v.cols());
  return fit;
}

FilterFit fit_filter(const EigenDecomposition& d,
                     const std::function<double(double)>& desired, double eps,
                     int k) {
  Vector target(d.n());
  for (Index i = 0; i < d.n(); ++i) target(i) = desired(d.eigvals(i));
  return fit_filter(d, target, eps, k);
}

Matrix apply_shared_filter(const BasisStack& stack,
                           const FilterCoefficients& theta, const Matrix& h) {
  check_stack_shapes(stack, theta, h);
  if (theta.channels() != 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "shared filter needs a single coefficient column");
  }
  Matrix out = Matrix::Zero(h.rows(), h.cols());
  for (size_t i = 0; i < stack.mats.size(); ++i) {
    const double t = theta.theta()(static_cast<Index>(i), 0);
    if (t != 0.0) out.noalias() += t * (stack.mats[i] * h);
  }
  return out;
}

Matrix apply_channel_filter(const BasisStack& stack,
                            const FilterCoefficients& theta, const Matrix& h) {
  check_stack_shapes(stack, theta, h);
  if (theta.channels() != h.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "channel filter has " + std::to_string(theta.channels()) +
                    " columns for " + std::to_string(h.cols()) + " channels");
  }
  Matrix out = Matrix::Zero(h.rows(), h.cols());
  for (size_t i = 0; i < stack.mats.size(); ++i) {
    const Matrix propagated = stack.mats[i] * h;
    out.noalias() +=
        propagated * theta.theta().row(static_cast<Index>(i)).asDiagonal();
  }
  return out;
}

Matrix gcn_layer(const SymMatrix& a_hat, const Matrix& h, const Matrix& w,
                 Nonlinearity sigma) {
  if (h.rows() != a_hat.n() || h.cols() != w.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "gcn_layer shape mismatch");
  }
  Matrix out = a_hat.matrix() * h * w;
  if (sigma == Nonlinearity::kRelu) out = out.cwiseMax(0.0);
  return out;
}

DiffusionResult diffusion_matrix(const Matrix& t, const DiffusionWeights& weights,
                                 int truncation) {
  if (t.rows() != t.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "transition matrix must be square");
  }
  if (truncation < 0) {
    throw Error(ErrorCode::kDomainError, "truncation must be >= 0");
  }
  DiffusionResult result;
  const std::vector<double> theta =
      diffusion_coefficients(weights, truncation, &result.tail_bound);

  std::optional<double> radius;
  if (is_symmetric(t)) {
    const EigenDecomposition d = eig_sym(SymMatrix::symmetrized(t));
    radius = d.n() > 0 ? std::abs(d.eigvals(0)) : 0.0;
  } else {
    result.warning =
        "spectral radius check skipped: transition matrix is not symmetric";
  }
  if (radius) {
    if (const auto* ppr = std::get_if<PprWeights>(&weights)) {
      if ((1.0 - ppr->alpha) * *radius >= 1.0 + 1e-12) {
        throw Error(ErrorCode::kDivergentSeries,
                    "PPR series diverges: (1 - alpha) * rho(T) >= 1");
      }
    } else if (std::holds_alternative<ExplicitWeights>(weights) &&
               *radius > 1.0 + 1e-12 && theta.size() >= 2) {
      const size_t last = theta.size() - 1;
      const double grow = std::abs(theta[last]) * *radius;
      if (theta[last] != 0.0 && grow >= std::abs(theta[last - 1])) {
        throw Error(ErrorCode::kDivergentSeries,
                    "explicit weights do not decay fast enough for rho(T) > 1");
      }
    }
  }

  const Index n = t.rows();
  if (theta.empty()) {
    result.matrix = Matrix::Zero(n, n);
    return result;
  }
  Matrix acc = theta.back() * Matrix::Identity(n, n);
  for (size_t k = theta.size() - 1; k-- > 0;) {
    acc = acc * t;
    acc.diagonal().array() += theta[k];
  }
  result.matrix = std::move(acc);
  return result;
}

}  // namespace nsgc
