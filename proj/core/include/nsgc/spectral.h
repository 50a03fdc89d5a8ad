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

#ifndef NSGC_SPECTRAL_H_
#define NSGC_SPECTRAL_H_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsgc/eigensolver.h"
#include "nsgc/sym_matrix.h"
#include "nsgc/types.h"

namespace nsgc {

// Entry-wise function applied to eigenvalues.
class SpectralMap {
 public:
  enum class Kind { kPowerEps, kResidual, kPprStep, kCustom };

  // |lambda|^eps with |0|^eps = 0; eps in (0, 1).
  static SpectralMap power_eps(double eps);
  // (1 - alpha) lambda + alpha; alpha in (0, 1).
  static SpectralMap residual(double alpha);
  // phi_{t+1}(lambda) = (1 - alpha) lambda phi_t(lambda) + alpha, phi_0 = 1,
  // iterated `steps` times.
  static SpectralMap ppr_step(double alpha, int steps = 10);
  static SpectralMap custom(std::function<double(double)> fn, std::string label);
  static SpectralMap identity();
  static SpectralMap constant(double c);

  double operator()(double lambda) const { return fn_(lambda); }
  Kind kind() const { return kind_; }
  double parameter() const { return parameter_; }
  const std::string& description() const { return description_; }

 private:
  SpectralMap(Kind kind, double parameter, std::string description,
              std::function<double(double)> fn)
      : kind_(kind),
        parameter_(parameter),
        description_(std::move(description)),
        fn_(std::move(fn)) {}

  Kind kind_;
  double parameter_;
  std::string description_;
  std::function<double(double)> fn_;
};

// P phi(Lambda) P^T. Eigenvalues within d.zero_tolerance() are passed to phi as
// exact zeros. Throws kDomainError if phi is not finite at some eigenvalue.
SymMatrix transform(const EigenDecomposition& d, const SpectralMap& phi);

// S^eps = P |Lambda|^eps P^T, eps in (0, 1).
SymMatrix non_spatial_basis(const EigenDecomposition& d, double eps);

// Ordered basis [B^0, B^step, ..., B^{step k}].
//
// Built either from one eigendecomposition (fractional powers of |Lambda|) or by
// repeated multiplication of a possibly nonsymmetric matrix (integer powers, step
// fixed to 1). mats[0] is exactly the identity.
struct BasisStack {
  double eps = 1.0;
  int k = 0;
  std::vector<Matrix> mats;
  std::optional<EigenDecomposition> source_decomp;
  // Largest |entry| over all mats; non-finite means the powers overflowed.
  double max_abs_entry = 0.0;

  Index n() const { return mats.empty() ? 0 : mats.front().rows(); }
  bool overflowed() const;
};

// Errors: kDomainError for eps outside (0, 1) or k < 0; kNoConvergence from
// eig_sym.
BasisStack basis_stack(const SymMatrix& s, double eps, int k);
BasisStack basis_stack(const EigenDecomposition& d, double eps, int k);

// [I, B, B^2, ..., B^k] by repeated products.
BasisStack power_stack(const Matrix& b, int k);

// Cosine that may be undefined because the filtered signal vanished. In that
// case value is 0 and degenerate is set.
struct CosineResult {
  double value = 0.0;
  bool degenerate = false;
};

// cos(S h, p_i) in closed form: alpha_i lambda_i / sqrt(sum_j alpha_j^2 lambda_j^2)
// with alpha = P^T h.
CosineResult cosine_to_eigenvector(const EigenDecomposition& d, const Vector& h,
                                   Index i);

// cos(S^k h, S^k h') = sum a_i b_i lambda_i^{2k} / (norms). Evaluated with
// lambda / |lambda_1| so large k does not overflow.
CosineResult cosine_between_filtered(const EigenDecomposition& d,
                                     const Vector& h, const Vector& h_prime,
                                     int power);

enum TrajectoryFlag : unsigned {
  kFlagNone = 0,
  kFlagDegenerate = 1u << 0,    // S^k h vanished
  kFlagPairDegenerate = 1u << 1,
  kFlagLeadingTie = 1u << 2,    // |lambda_1| == |lambda_2|
  kFlagAlpha1Zero = 1u << 3,    // h orthogonal to p_1
};

struct ConvergenceRecord {
  int k = 0;
  double cos_p1 = 0.0;  // |cos(S^k h, p_1)|
  double cos_pn = 0.0;  // |cos(S^k h, p_n)|
  // 1 - cos_p1^2 computed without cancellation.
  double sin2_p1 = 0.0;
  std::optional<double> cos_pair;  // |cos(S^k h, S^k h')|
  unsigned flags = kFlagNone;
};

struct ConvergenceTrajectory {
  std::vector<ConvergenceRecord> records;
  // Index of the first eigenvector with a nonzero coefficient in h; the
  // trajectory converges toward it when it is unique in magnitude.
  Index effective_leading_index = 0;
  bool leading_tie = false;
};

ConvergenceTrajectory convergence_trajectory(
    const EigenDecomposition& d, const Vector& h,
    const std::optional<Vector>& h_prime, int k_max);

std::string trajectory_flags_string(unsigned flags);

// Least-squares slope of log(1 - cos^2(S^k h, p_1)) against k. Records with
// 1 - cos^2 > floor qualify; the regression uses the final tenth of them (at
// least two) so the faster-decaying transient from |lambda_3|, |lambda_4|, ...
// does not bias the estimate. Empty when the leading eigenvalue is tied, h is orthogonal to p_1,
// or fewer than two records remain.
std::optional<double> fit_convergence_rate(const ConvergenceTrajectory& t,
                                           double floor = 1e-12);

// The asymptotic slope 2 log|lambda_2 / lambda_1|.
double predicted_convergence_rate(const EigenDecomposition& d);

struct ContainmentReport {
  double max_residual = 0.0;
  bool passed = false;
};

// max_i ||(s_ring - phi(lambda_i) I) p_i||.
ContainmentReport eigenspace_containment_check(const EigenDecomposition& d,
                                               const SymMatrix& s_ring,
                                               const SpectralMap& phi,
                                               double tol);

struct Collision {
  double lambda_a;
  double lambda_b;
  double value;
};

struct InjectivityReport {
  bool injective = true;
  std::vector<Collision> collisions;
};

// Distinct eigenvalues (|a - b| > 1e-10) with |phi(a) - phi(b)| <= 1e-10.
InjectivityReport injectivity_check(const Vector& spectrum,
                                    const SpectralMap& phi);

}  // namespace nsgc

#endif  // NSGC_SPECTRAL_H_
