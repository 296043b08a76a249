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

#ifndef RFKIT_KERNELS_HPP_
#define RFKIT_KERNELS_HPP_

#include <string>
#include <string_view>

#include "rfkit/multivariate.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

enum class KernelFamily { kGaussian, kL1Laplacian, kLaplacian, kExpPower, kMatern };

std::string_view family_name(KernelFamily family) noexcept;
KernelFamily parse_family(std::string_view name);

/// A shift-invariant kernel K(x, z) = kappa(x - z).
///
///   Gaussian        exp(-||D||_M^2 / 2)
///   L1Laplacian     exp(-||D||_1)          (ignores M apart from its dimension)
///   Laplacian       exp(-||D||_M)
///   ExpPower(a)     exp(-||D||_M^a),  a in (0, 2]
///   Matern(nu)      2^(1-nu)/Gamma(nu) (sqrt(2 nu) r)^nu K_nu(sqrt(2 nu) r),  r = ||D||_M
///
/// Note ExpPower(2) is exp(-||D||^2), which is not the Gaussian above.
class KernelSpec {
 public:
  static KernelSpec gaussian(ShapeMatrix shape);
  static KernelSpec l1_laplacian(std::size_t dim);
  static KernelSpec laplacian(ShapeMatrix shape);
  static KernelSpec exp_power(double alpha, ShapeMatrix shape);
  static KernelSpec matern(double nu, ShapeMatrix shape);

  KernelFamily family() const noexcept { return family_; }
  double alpha() const noexcept { return alpha_; }
  double nu() const noexcept { return nu_; }
  const ShapeMatrix& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return shape_.dim(); }

  // Radially symmetric in ||.||_M; every family except L1Laplacian.
  bool is_radial() const noexcept { return family_ != KernelFamily::kL1Laplacian; }

  // e.g. "laplacian", "exp_power(alpha=0.7)", "matern(nu=1.5)".
  std::string describe() const;

 private:
  KernelSpec(KernelFamily family, double alpha, double nu, ShapeMatrix shape);

  KernelFamily family_;
  double alpha_;
  double nu_;
  ShapeMatrix shape_;
};

double mahalanobis_norm(const ShapeMatrix& shape, const Vector& u);

// General-order Matern profile via Bessel-K; r >= 0 and kappa(0) = 1.
double matern_bessel(double nu, double r);
// Closed forms for nu in {1/2, 3/2, 5/2}; ParameterError otherwise.
double matern_closed_form(double nu, double r);
bool matern_has_closed_form(double nu) noexcept;

// kappa as a function of r = ||D||_M for radial families.
double radial_profile(const KernelSpec& spec, double r);

double kernel_of_difference(const KernelSpec& spec, const Vector& delta);
double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& z);

// Entry (i, j) = K(x_i, z_j).
Matrix kernel_matrix(const KernelSpec& spec, const RowMatrix& x, const RowMatrix& z);
// Symmetric K(X, X); evaluates the upper triangle only.
Matrix kernel_matrix(const KernelSpec& spec, const RowMatrix& x);

}  // namespace rfkit

#endif  // RFKIT_KERNELS_HPP_
