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

#ifndef NSGC_FILTERS_H_
#define NSGC_FILTERS_H_

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "nsgc/eigensolver.h"
#include "nsgc/spectral.h"
#include "nsgc/sym_matrix.h"
#include "nsgc/types.h"

namespace nsgc {

// (k+1) x c coefficients; c = 1 for a shared filter, c = d for one filter per
// feature channel.
class FilterCoefficients {
 public:
  explicit FilterCoefficients(Matrix theta);
  static FilterCoefficients shared(const Vector& theta);

  const Matrix& theta() const { return theta_; }
  int order() const { return static_cast<int>(theta_.rows()) - 1; }
  Index channels() const { return theta_.cols(); }

 private:
  Matrix theta_;
};

// sum_i theta_i |lambda|^{eps i} per eigenvalue, with |lambda|^0 = 1.
Vector filter_response(const Vector& theta, const Vector& eigvals, double eps);

struct FilterFit {
  Vector theta;
  double residual = 0.0;  // ||V theta - desired||_2
  Index rank = 0;
  bool rank_deficient = false;
};

// Minimal-norm least squares for V theta = desired with
// V(i, j) = |lambda_i|^{eps j}, j = 0..k. `desired` is aligned with d.eigvals.
FilterFit fit_filter(const EigenDecomposition& d, const Vector& desired,
                     double eps, int k);
FilterFit fit_filter(const EigenDecomposition& d,
                     const std::function<double(double)>& desired, double eps,
                     int k);

// sum_i theta_i mats[i] H.
Matrix apply_shared_filter(const BasisStack& stack,
                           const FilterCoefficients& theta, const Matrix& h);
// Column j: sum_i theta(i, j) mats[i] H(:, j).
Matrix apply_channel_filter(const BasisStack& stack,
                            const FilterCoefficients& theta, const Matrix& h);

enum class Nonlinearity { kIdentity, kRelu };

// sigma(A_hat H W).
Matrix gcn_layer(const SymMatrix& a_hat, const Matrix& h, const Matrix& w,
                 Nonlinearity sigma);

struct PprWeights {
  double alpha;
};
struct HeatWeights {
  double t;
};
struct ExplicitWeights {
  std::vector<double> theta;
};
using DiffusionWeights = std::variant<PprWeights, HeatWeights, ExplicitWeights>;

struct DiffusionResult {
  Matrix matrix;
  // Sum of |theta_k| for k beyond the truncation (0 for a finite explicit list).
  double tail_bound = 0.0;
  // Empty when the spectral radius check ran; otherwise says why it was skipped.
  std::string warning;
};

// sum_{k=0}^{K} theta_k T^k. The spectral radius of T is checked when T is
// symmetric. Throws kDivergentSeries when the weighted terms cannot shrink.
DiffusionResult diffusion_matrix(const Matrix& t, const DiffusionWeights& weights,
                                 int truncation);

}  // namespace nsgc

#endif  // NSGC_FILTERS_H_
