// Copyright 2026 The rfkit Authors.
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

#include "rfkit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rfkit/bessel.hpp"
#include "rfkit/errors.hpp"

namespace rfkit {

namespace {

constexpr Eigen::Index kPanelRows = 64;

void check_input(const KernelSpec& spec, Eigen::Index cols, const char* what) {
  if (static_cast<std::size_t>(cols) != spec.dim()) {
    throw DimensionError(std::string(what) + " has dimension " + std::to_string(cols) +
                         ", kernel expects " + std::to_string(spec.dim()));
  }
}

// Inputs mapped so that ||D||_M becomes the Euclidean norm.
RowMatrix whiten(const KernelSpec& spec, const RowMatrix& x) {
  if (!x.allFinite()) throw DomainError("kernel input contains NaN or Inf");
  if (!spec.is_radial() || spec.shape().is_identity()) return x;
  return x * spec.shape().sqrt();  // sqrt(M) is symmetric
}

template <typename RowA, typename RowB>
double pair_value(const KernelSpec& spec, const RowA& a, const RowB& b) {
  if (spec.family() == KernelFamily::kL1Laplacian) return std::exp(-(a - b).cwiseAbs().sum());
  return radial_profile(spec, (a - b).norm());
}

}  // namespace

std::string_view family_name(KernelFamily family) noexcept {
  switch (family) {
    case KernelFamily::kGaussian: return "gaussian";
    case KernelFamily::kL1Laplacian: return "l1_laplacian";
    case KernelFamily::kLaplacian: return "laplacian";
    case KernelFamily::kExpPower: return "exp_power";
    case KernelFamily::kMatern: return "matern";
  }
  return "unknown";
}

KernelFamily parse_family(std::string_view name) {
  for (auto f : {KernelFamily::kGaussian, KernelFamily::kL1Laplacian, KernelFamily::kLaplacian,
                 KernelFamily::kExpPower, KernelFamily::kMatern}) {
    if (family_name(f) == name) return f;
  }
  throw ParameterError("unknown kernel family '" + std::string(name) + "'");
}

KernelSpec::KernelSpec(KernelFamily family, double alpha, double nu, ShapeMatrix shape)
    : family_(family), alpha_(alpha), nu_(nu), shape_(std::move(shape)) {}

KernelSpec KernelSpec::gaussian(ShapeMatrix shape) {
  return KernelSpec(KernelFamily::kGaussian, 0.0, 0.0, std::move(shape));
}

KernelSpec KernelSpec::l1_laplacian(std::size_t dim) {
  return KernelSpec(KernelFamily::kL1Laplacian, 0.0, 0.0, ShapeMatrix::identity(dim));
}

KernelSpec KernelSpec::laplacian(ShapeMatrix shape) {
  return KernelSpec(KernelFamily::kLaplacian, 0.0, 0.0, std::move(shape));
}

KernelSpec KernelSpec::exp_power(double alpha, ShapeMatrix shape) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw ParameterError("exponential-power alpha must lie in (0, 2], got " +
                         std::to_string(alpha));
  }
  return KernelSpec(KernelFamily::kExpPower, alpha, 0.0, std::move(shape));
}

KernelSpec KernelSpec::matern(double nu, ShapeMatrix shape) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw ParameterError("Matern nu must be a finite positive number, got " + std::to_string(nu));
  }
  return KernelSpec(KernelFamily::kMatern, 0.0, nu, std::move(shape));
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os << family_name(family_);
  if (family_ == KernelFamily::kExpPower) os << "(alpha=" << alpha_ << ")";
  if (family_ == KernelFamily::kMatern) os << "(nu=" << nu_ << ")";
  return os.str();
}

double mahalanobis_norm(const ShapeMatrix& shape, const Vector& u) {
  if (static_cast<std::size_t>(u.size()) != shape.dim()) {
    throw DimensionError("vector has dimension " + std::to_string(u.size()) +
                         ", shape matrix has " + std::to_string(shape.dim()));
  }
  if (shape.is_identity()) return u.norm();
  return (shape.sqrt() * u).norm();
}

bool matern_has_closed_form(double nu) noexcept { return nu == 0.5 || nu == 1.5 || nu == 2.5; }

double matern_closed_form(double nu, double r) {
  if (nu == 0.5) return std::exp(-r);
  if (nu == 1.5) {
    const double t = std::sqrt(3.0) * r;
    return (1.0 + t) * std::exp(-t);
  }
  if (nu == 2.5) {
    const double t = std::sqrt(5.0) * r;
    return (1.0 + t + (5.0 / 3.0) * r * r) * std::exp(-t);
  }
  throw ParameterError("no closed-form Matern profile for nu = " + std::to_string(nu));
}

double matern_bessel(double nu, double r) {
  if (r <= 0.0) return 1.0;
  const double z = std::sqrt(2.0 * nu) * r;
  const double log_value = (1.0 - nu) * std::log(2.0) - std::lgamma(nu) + nu * std::log(z) +
                           log_bessel_k(nu, z);
  return std::min(1.0, std::exp(log_value));
}

double radial_profile(const KernelSpec& spec, double r) {
  switch (spec.family()) {
    case KernelFamily::kGaussian: return std::exp(-0.5 * r * r);
    case KernelFamily::kLaplacian: return std::exp(-r);
    case KernelFamily::kExpPower:
      return spec.alpha() == 1.0 ? std::exp(-r) : std::exp(-std::pow(r, spec.alpha()));
    case KernelFamily::kMatern:
      if (r == 0.0) return 1.0;
      return matern_has_closed_form(spec.nu()) ? matern_closed_form(spec.nu(), r)
                                               : matern_bessel(spec.nu(), r);
    case KernelFamily::kL1Laplacian: break;
  }
  throw ParameterError("the l1-Laplacian kernel has no radial profile in ||.||_M");
}

double kernel_of_difference(const KernelSpec& spec, const Vector& delta) {
  check_input(spec, delta.size(), "difference vector");
  if (!delta.allFinite()) throw DomainError("kernel input contains NaN or Inf");
  if (spec.family() == KernelFamily::kL1Laplacian) return std::exp(-delta.cwiseAbs().sum());
  return radial_profile(spec, mahalanobis_norm(spec.shape(), delta));
}

double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& z) {
  check_input(spec, x.size(), "x");
  check_input(spec, z.size(), "z");
  return kernel_of_difference(spec, x - z);
}

Matrix kernel_matrix(const KernelSpec& spec, const RowMatrix& x, const RowMatrix& z) {
  check_input(spec, x.cols(), "X");
  check_input(spec, z.cols(), "Z");
  const RowMatrix xw = whiten(spec, x);
  const RowMatrix zw = whiten(spec, z);
  const Eigen::Index n = x.rows();
  const Eigen::Index m = z.rows();
  Matrix k(n, m);
  const Eigen::Index panels = (n + kPanelRows - 1) / kPanelRows;
#if defined(RFKIT_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (Eigen::Index panel = 0; panel < panels; ++panel) {
    const Eigen::Index begin = panel * kPanelRows;
    const Eigen::Index end = std::min(n, begin + kPanelRows);
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index i = begin; i < end; ++i) k(i, j) = pair_value(spec, xw.row(i), zw.row(j));
    }
  }
  return k;
}

Matrix kernel_matrix(const KernelSpec& spec, const RowMatrix& x) {
  check_input(spec, x.cols(), "X");
  const RowMatrix xw = whiten(spec, x);
  const Eigen::Index n = x.rows();
  Matrix k(n, n);
  const Eigen::Index panels = (n + kPanelRows - 1) / kPanelRows;
#if defined(RFKIT_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (Eigen::Index panel = 0; panel < panels; ++panel) {
    const Eigen::Index begin = panel * kPanelRows;
    const Eigen::Index end = std::min(n, begin + kPanelRows);
    for (Eigen::Index j = begin; j < n; ++j) {
      for (Eigen::Index i = begin; i < std::min(end, j + 1); ++i) {
        k(i, j) = i == j ? 1.0 : pair_value(spec, xw.row(i), xw.row(j));
      }
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) k(i, j) = k(j, i);
  }
  return k;
}

}  // namespace rfkit
