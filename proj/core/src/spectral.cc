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

#include "nsgc/spectral.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "nsgc/error.h"

namespace nsgc {

namespace {

void check_open_unit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in (0, 1), got " << value;
    throw Error(ErrorCode::kDomainError, msg.str());
  }
}

std::string format_label(const char* kind, double value) {
  std::ostringstream out;
  out << kind << "(" << value << ")";
  return out.str();
}

// Eigenvalues with noise-level magnitude become exact zeros.
Vector snapped_eigvals(const EigenDecomposition& d) {
  const double tol = d.zero_tolerance();
  Vector lam = d.eigvals;
  for (Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) <= tol) lam(i) = 0.0;
  }
  return lam;
}

void check_signal(const EigenDecomposition& d, const Vector& h) {
  if (h.size() != d.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "signal length " + std::to_string(h.size()) +
                    " does not match dimension " + std::to_string(d.n()));
  }
}

// Eigen-coordinates of S^k h divided by a positive scalar, so that the largest
// surviving component has magnitude |alpha_i|. Cosines are unaffected by the
// scaling. Empty when S^k h vanishes.
std::optional<Vector> scaled_filtered(const EigenDecomposition& d,
                                      const Vector& h, int k) {
  const Vector lam = snapped_eigvals(d);
  Vector alpha = d.eigvecs.transpose() * h;
  const double noise = 1e-14 * h.norm();
  for (Index i = 0; i < alpha.size(); ++i) {
    if (std::abs(alpha(i)) <= noise) alpha(i) = 0.0;
  }
  if (k == 0) {
    if (alpha.isZero(0.0)) return std::nullopt;
    return alpha;
  }
  double scale = 0.0;
  for (Index i = 0; i < alpha.size(); ++i) {
    if (alpha(i) != 0.0) scale = std::max(scale, std::abs(lam(i)));
  }
  if (scale == 0.0) return std::nullopt;
  Vector c(alpha.size());
  for (Index i = 0; i < alpha.size(); ++i) {
    if (alpha(i) == 0.0 || lam(i) == 0.0) {
      c(i) = 0.0;
      continue;
    }
    const double mag = std::pow(std::abs(lam(i)) / scale, k);
    const double sign = (lam(i) < 0.0 && (k % 2) == 1) ? -1.0 : 1.0;
    c(i) = alpha(i) * sign * mag;
  }
  return c;
}

}  // namespace

SpectralMap SpectralMap::power_eps(double eps) {
  check_open_unit(eps, "eps");
  return SpectralMap(Kind::kPowerEps, eps, format_label("power_eps", eps),
                     [eps](double lambda) {
                       const double m = std::abs(lambda);
                       return m == 0.0 ? 0.0 : std::exp(eps * std::log(m));
                     });
}

SpectralMap SpectralMap::residual(double alpha) {
  check_open_unit(alpha, "alpha");
  return SpectralMap(Kind::kResidual, alpha, format_label("residual", alpha),
                     [alpha](double lambda) {
                       return (1.0 - alpha) * lambda + alpha;
                     });
}

SpectralMap SpectralMap::ppr_step(double alpha, int steps) {
  check_open_unit(alpha, "alpha");
  if (steps < 0) {
    throw Error(ErrorCode::kDomainError, "ppr_step needs steps >= 0");
  }
  return SpectralMap(Kind::kPprStep, alpha, format_label("ppr_step", alpha),
                     [alpha, steps](double lambda) {
                       double phi = 1.0;
                       for (int t = 0; t < steps; ++t) {
                         phi = (1.0 - alpha) * lambda * phi + alpha;
                       }
                       return phi;
                     });
}

SpectralMap SpectralMap::custom(std::function<double(double)> fn,
                                std::string label) {
  return SpectralMap(Kind::kCustom, 0.0, std::move(label), std::move(fn));
}

SpectralMap SpectralMap::identity() {
  return custom([](double lambda) { return lambda; }, "identity");
}

SpectralMap SpectralMap::constant(double c) {
  return custom([c](double) { return c; }, format_label("constant", c));
}

SymMatrix transform(const EigenDecomposition& d, const SpectralMap& phi) {
  const Vector lam = snapped_eigvals(d);
  Vector mapped(lam.size());
  for (Index i = 0; i < lam.size(); ++i) {
    mapped(i) = phi(lam(i));
    if (!std::isfinite(mapped(i))) {
      std::ostringstream msg;
      msg << phi.description() << " is undefined at eigenvalue " << lam(i);
      throw Error(ErrorCode::kDomainError, msg.str());
    }
  }
  return SymMatrix::symmetrized(d.eigvecs * mapped.asDiagonal() *
                                d.eigvecs.transpose());
}

SymMatrix non_spatial_basis(const EigenDecomposition& d, double eps) {
  return transform(d, SpectralMap::power_eps(eps));
}

bool BasisStack::overflowed() const { return !std::isfinite(max_abs_entry); }

BasisStack basis_stack(const SymMatrix& s, double eps, int k) {
  check_open_unit(eps, "eps");
  if (k < 0) throw Error(ErrorCode::kDomainError, "basis order k must be >= 0");
  return basis_stack(eig_sym(s), eps, k);
}

BasisStack basis_stack(const EigenDecomposition& d, double eps, int k) {
  check_open_unit(eps, "eps");
  if (k < 0) throw Error(ErrorCode::kDomainError, "basis order k must be >= 0");
  const Index n = d.n();
  const Vector mag = snapped_eigvals(d).cwiseAbs();

  BasisStack stack;
  stack.eps = eps;
  stack.k = k;
  stack.mats.reserve(static_cast<size_t>(k) + 1);
  stack.mats.push_back(Matrix::Identity(n, n));
  stack.max_abs_entry = n > 0 ? 1.0 : 0.0;
  for (int i = 1; i <= k; ++i) {
    Vector scaled(n);
    for (Index j = 0; j < n; ++j) {
      scaled(j) = mag(j) == 0.0 ? 0.0 : std::exp(eps * i * std::log(mag(j)));
    }
    Matrix m = d.eigvecs * scaled.asDiagonal() * d.eigvecs.transpose();
    m = 0.5 * (m + m.transpose());
    stack.max_abs_entry = std::max(stack.max_abs_entry, m.cwiseAbs().maxCoeff());
    stack.mats.push_back(std::move(m));
  }
  stack.source_decomp = d;
  return stack;
}

BasisStack power_stack(const Matrix& b, int k) {
  if (b.rows() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "power_stack needs a square matrix");
  }
  if (k < 0) throw Error(ErrorCode::kDomainError, "basis order k must be >= 0");
  BasisStack stack;
  stack.eps = 1.0;
  stack.k = k;
  stack.mats.reserve(static_cast<size_t>(k) + 1);
  stack.mats.push_back(Matrix::Identity(b.rows(), b.cols()));
  stack.max_abs_entry = b.rows() > 0 ? 1.0 : 0.0;
  for (int i = 1; i <= k; ++i) {
    Matrix m = stack.mats.back() * b;
    const double peak = m.allFinite() ? m.cwiseAbs().maxCoeff()
                                      : std::numeric_limits<double>::infinity();
    stack.max_abs_entry = std::max(stack.max_abs_entry, peak);
    stack.mats.push_back(std::move(m));
  }
  return stack;
}

CosineResult cosine_to_eigenvector(const EigenDecomposition& d, const Vector& h,
                                   Index i) {
  check_signal(d, h);
  if (i < 0 || i >= d.n()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "eigen index " + std::to_string(i) + " out of range");
  }
  const auto c = scaled_filtered(d, h, 1);
  if (!c) return {0.0, true};
  return {(*c)(i) / c->norm(), false};
}

CosineResult cosine_between_filtered(const EigenDecomposition& d,
                                     const Vector& h, const Vector& h_prime,
                                     int power) {
  check_signal(d, h);
  check_signal(d, h_prime);
  if (power < 0) throw Error(ErrorCode::kDomainError, "power must be >= 0");
  const auto a = scaled_filtered(d, h, power);
  const auto b = scaled_filtered(d, h_prime, power);
  if (!a || !b) return {0.0, true};
  const double value = a->dot(*b) / (a->norm() * b->norm());
  return {std::clamp(value, -1.0, 1.0), false};
}

ConvergenceTrajectory convergence_trajectory(
    const EigenDecomposition& d, const Vector& h,
    const std::optional<Vector>& h_prime, int k_max) {
  check_signal(d, h);
  if (h_prime) check_signal(d, *h_prime);
  if (k_max < 0) throw Error(ErrorCode::kDomainError, "k_max must be >= 0");
  const Index n = d.n();

  ConvergenceTrajectory out;
  if (n >= 2) {
    const double a1 = std::abs(d.eigvals(0));
    const double a2 = std::abs(d.eigvals(1));
    out.leading_tie = a1 - a2 <= 1e-12 * a1;
  }
  const Vector alpha = d.eigvecs.transpose() * h;
  const double noise = 1e-14 * h.norm();
  out.effective_leading_index = 0;
  while (out.effective_leading_index < n &&
         std::abs(alpha(out.effective_leading_index)) <= noise) {
    ++out.effective_leading_index;
  }
  unsigned base_flags = kFlagNone;
  if (out.leading_tie) base_flags |= kFlagLeadingTie;
  if (out.effective_leading_index != 0) base_flags |= kFlagAlpha1Zero;

  out.records.reserve(static_cast<size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    ConvergenceRecord rec;
    rec.k = k;
    rec.flags = base_flags;
    const auto c = scaled_filtered(d, h, k);
    if (!c) {
      rec.flags |= kFlagDegenerate;
      rec.sin2_p1 = 1.0;
    } else {
      const double norm2 = c->squaredNorm();
      const double norm = std::sqrt(norm2);
      rec.cos_p1 = std::min(1.0, std::abs((*c)(0)) / norm);
      rec.cos_pn = std::min(1.0, std::abs((*c)(n - 1)) / norm);
      rec.sin2_p1 = c->tail(n - 1).squaredNorm() / norm2;
    }
    if (h_prime) {
      const CosineResult pair = cosine_between_filtered(d, h, *h_prime, k);
      if (pair.degenerate) {
        rec.flags |= kFlagPairDegenerate;
        rec.cos_pair = 0.0;
      } else {
        rec.cos_pair = std::abs(pair.value);
      }
    }
    out.records.push_back(rec);
  }
  return out;
}

std::string trajectory_flags_string(unsigned flags) {
  std::string out;
  auto add = [&out](const char* name) {
    if (!out.empty()) out += '|';
    out += name;
  };
  if (flags & kFlagDegenerate) add("degenerate");
  if (flags & kFlagPairDegenerate) add("pair_degenerate");
  if (flags & kFlagLeadingTie) add("leading_tie");
  if (flags & kFlagAlpha1Zero) add("alpha1_zero");
  return out;
}

std::optional<double> fit_convergence_rate(const ConvergenceTrajectory& t,
                                           double floor) {
  if (t.leading_tie || t.effective_leading_index != 0) return std::nullopt;
  std::vector<const ConvergenceRecord*> usable;
  for (const ConvergenceRecord& r : t.records) {
    if ((r.flags & kFlagDegenerate) || !(r.sin2_p1 > floor)) continue;
    usable.push_back(&r);
  }
  // log(1 - cos^2) is a log-sum-exp over the subdominant eigenvalues; its
  // early slope is steeper than the asymptotic one. Regress over the final
  // tenth of the window (at least two records), where the lambda_2 term
  // dominates.
  const size_t tail = std::max<size_t>(2, usable.size() / 10);
  const size_t first = usable.size() > tail ? usable.size() - tail : 0;
  double sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
  int count = 0;
  for (size_t i = first; i < usable.size(); ++i) {
    const double k = usable[i]->k;
    const double y = std::log(usable[i]->sin2_p1);
    sk += k;
    sy += y;
    skk += k * k;
    sky += k * y;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double denom = count * skk - sk * sk;
  if (denom == 0.0) return std::nullopt;
  return (count * sky - sk * sy) / denom;
}

double predicted_convergence_rate(const EigenDecomposition& d) {
  if (d.n() < 2 || d.eigvals(0) == 0.0) return 0.0;
  return 2.0 * std::log(std::abs(d.eigvals(1)) / std::abs(d.eigvals(0)));
}

ContainmentReport eigenspace_containment_check(const EigenDecomposition& d,
                                               const SymMatrix& s_ring,
                                               const SpectralMap& phi,
                                               double tol) {
  if (s_ring.n() != d.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "transformed matrix does not match decomposition");
  }
  const Vector lam = snapped_eigvals(d);
  ContainmentReport report;
  for (Index i = 0; i < d.n(); ++i) {
    const Vector p = d.eigvecs.col(i);
    const double r = (s_ring.matrix() * p - phi(lam(i)) * p).norm();
    report.max_residual = std::max(report.max_residual, r);
  }
  report.passed = report.max_residual <= tol;
  return report;
}

InjectivityReport injectivity_check(const Vector& spectrum,
                                    const SpectralMap& phi) {
  constexpr double kTol = 1e-10;
  InjectivityReport report;
  for (Index i = 0; i < spectrum.size(); ++i) {
    for (Index j = i + 1; j < spectrum.size(); ++j) {
      const double a = spectrum(i);
      const double b = spectrum(j);
      if (std::abs(a - b) <= kTol) continue;
      const double fa = phi(a);
      if (std::abs(fa - phi(b)) > kTol) continue;
      const bool known = std::any_of(
          report.collisions.begin(), report.collisions.end(),
          [&](const Collision& c) {
            return (std::abs(c.lambda_a - a) <= kTol &&
                    std::abs(c.lambda_b - b) <= kTol) ||
                   (std::abs(c.lambda_a - b) <= kTol &&
                    std::abs(c.lambda_b - a) <= kTol);
          });
      if (!known) report.collisions.push_back({a, b, fa});
    }
  }
  report.injective = report.collisions.empty();
  return report;
}

}  // namespace nsgc
