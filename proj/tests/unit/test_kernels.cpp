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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <vector>

#include "rfkit/bessel.hpp"
#include "rfkit/errors.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/multivariate.hpp"
#include "test_support.hpp"

namespace rfkit {
namespace {

Vector random_vector(std::size_t d, RngStream& rng, double scale = 1.0) {
  Vector v(d);
  for (std::size_t i = 0; i < d; ++i) v(i) = scale * rng.normal();
  return v;
}

ShapeMatrix random_shape(std::size_t d, RngStream& rng) {
  Matrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.normal() / std::sqrt(double(d));
  return ShapeMatrix(a * a.transpose() + 0.3 * Matrix::Identity(d, d));
}

std::vector<KernelSpec> all_radial(const ShapeMatrix& s) {
  return {KernelSpec::gaussian(s),        KernelSpec::laplacian(s),
          KernelSpec::exp_power(0.7, s),  KernelSpec::exp_power(1.3, s),
          KernelSpec::exp_power(2.0, s),  KernelSpec::matern(0.5, s),
          KernelSpec::matern(1.5, s),     KernelSpec::matern(2.5, s),
          KernelSpec::matern(4.0, s),     KernelSpec::matern(0.3, s)};
}

TEST(Mahalanobis, HandValues) {
  EXPECT_EQ(mahalanobis_norm(ShapeMatrix::identity(2), Vector::Zero(2)), 0.0);
  Vector u(2);
  u << 3.0, 4.0;
  EXPECT_DOUBLE_EQ(mahalanobis_norm(ShapeMatrix::identity(2), u), 5.0);
  Vector d(2);
  d << 4.0, 1.0;
  u << 1.0, 1.0;
  EXPECT_DOUBLE_EQ(mahalanobis_norm(ShapeMatrix::diagonal(d), u), std::sqrt(5.0));
}

TEST(BesselK, HalfOrderClosedForm) {
  const double expected = std::sqrt(std::numbers::pi / 2.0) * std::exp(-1.0);
  EXPECT_NEAR(bessel_k(0.5, 1.0), expected, 1e-15);
  EXPECT_NEAR(bessel_k(0.5, 1.0), 0.4610685044478946, 1e-15);
  EXPECT_NEAR(testing::bessel_k_quadrature(0.5, 1.0), expected, 1e-13);
}

TEST(BesselK, MatchesIntegralRepresentation) {
  for (double nu : {0.0, 0.3, 0.5, 1.0, 1.5, 2.0, 2.5, 4.0, 7.3}) {
    for (double x : {1e-3, 0.1, 0.9, 1.99, 2.0, 2.01, 5.0, 20.0, 60.0}) {
      const double oracle = testing::bessel_k_quadrature(nu, x);
      EXPECT_NEAR(bessel_k(nu, x) / oracle, 1.0, 1e-10) << "nu=" << nu << " x=" << x;
    }
  }
  EXPECT_NEAR(bessel_k(1.5, 2.0) / testing::bessel_k_quadrature(1.5, 2.0), 1.0, 1e-10);
}

TEST(BesselK, LogScaleAgreesAndSurvivesLargeArguments) {
  for (double nu : {0.5, 2.0, 4.0}) {
    for (double x : {0.5, 3.0, 30.0}) {
      EXPECT_NEAR(log_bessel_k(nu, x), std::log(bessel_k(nu, x)), 1e-12);
    }
  }
  const double big = log_bessel_k(4.0, 2000.0);
  EXPECT_TRUE(std::isfinite(big));
  EXPECT_NEAR(big, 0.5 * std::log(std::numbers::pi / 4000.0) - 2000.0, 1e-2);
}

TEST(BesselK, StrictlyDecreasing) {
  for (double nu : {0.2, 1.5, 4.0}) {
    double prev = bessel_k(nu, 0.01);
    for (double x = 0.02; x < 40.0; x *= 1.1) {
      const double k = bessel_k(nu, x);
      EXPECT_LT(k, prev) << nu << " " << x;
      prev = k;
    }
  }
}

TEST(BesselK, DomainErrors) {
  EXPECT_THROW(bessel_k(1.0, 0.0), DomainError);
  EXPECT_THROW(bessel_k(1.0, -1.0), DomainError);
  EXPECT_THROW(bessel_k(-0.5, 1.0), DomainError);
}

TEST(KernelEval, UnitOnDiagonal) {
  RngStream rng(1, 0);
  const ShapeMatrix s = random_shape(4, rng);
  const Vector x = random_vector(4, rng);
  for (const KernelSpec& k : all_radial(s)) EXPECT_EQ(kernel_eval(k, x, x), 1.0) << k.describe();
  EXPECT_EQ(kernel_eval(KernelSpec::l1_laplacian(4), x, x), 1.0);
}

TEST(KernelEval, MaternThreeHalvesClosedForm) {
  const ShapeMatrix s = ShapeMatrix::identity(3);
  const KernelSpec k = KernelSpec::matern(1.5, s);
  for (double t : {0.01, 0.3, 1.0, 4.0}) {
    Vector x = Vector::Zero(3), z = Vector::Zero(3);
    z(1) = t;
    const double r3 = std::sqrt(3.0) * t;
    EXPECT_NEAR(kernel_eval(k, x, z), (1.0 + r3) * std::exp(-r3), 1e-12);
  }
}

TEST(KernelEval, MaternHalfIsLaplacian) {
  RngStream rng(2, 0);
  const ShapeMatrix s = random_shape(6, rng);
  const KernelSpec m = KernelSpec::matern(0.5, s);
  const KernelSpec l = KernelSpec::laplacian(s);
  for (int i = 0; i < 100; ++i) {
    const Vector x = random_vector(6, rng), z = random_vector(6, rng);
    const double a = kernel_eval(m, x, z), b = kernel_eval(l, x, z);
    EXPECT_NEAR(a, b, 1e-10 * b);
  }
}

TEST(KernelEval, ExpPowerOneIsLaplacian) {
  RngStream rng(3, 0);
  const ShapeMatrix s = random_shape(3, rng);
  for (int i = 0; i < 100; ++i) {
    const Vector x = random_vector(3, rng), z = random_vector(3, rng);
    EXPECT_EQ(kernel_eval(KernelSpec::exp_power(1.0, s), x, z),
              kernel_eval(KernelSpec::laplacian(s), x, z));
  }
}

TEST(KernelEval, GaussianAndExpPowerTwoDiffer) {
  const ShapeMatrix s = ShapeMatrix::identity(1);
  Vector x(1), z(1);
  x << 0.0;
  z << 1.0;
  EXPECT_NEAR(kernel_eval(KernelSpec::gaussian(s), x, z), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(kernel_eval(KernelSpec::exp_power(2.0, s), x, z), std::exp(-1.0), 1e-15);
}

TEST(KernelEval, L1LaplacianIsSeparable) {
  Vector x(3), z(3);
  x << 1.0, -2.0, 0.5;
  z << 0.0, 1.0, 0.0;
  EXPECT_NEAR(kernel_eval(KernelSpec::l1_laplacian(3), x, z), std::exp(-4.5), 1e-15);
}

TEST(KernelEval, DimensionMismatchThrows) {
  const KernelSpec k = KernelSpec::laplacian(ShapeMatrix::identity(3));
  EXPECT_THROW(kernel_eval(k, Vector::Zero(3), Vector::Zero(2)), DimensionError);
}

TEST(KernelEval, InvalidParametersThrow) {
  const ShapeMatrix s = ShapeMatrix::identity(2);
  EXPECT_THROW(KernelSpec::exp_power(0.0, s), ParameterError);
  EXPECT_THROW(KernelSpec::exp_power(2.1, s), ParameterError);
  EXPECT_THROW(KernelSpec::matern(0.0, s), ParameterError);
  EXPECT_THROW(matern_closed_form(2.0, 1.0), ParameterError);
}

TEST(KernelProperties, ShiftInvariance) {
  RngStream rng(4, 0);
  const ShapeMatrix s = random_shape(5, rng);
  auto specs = all_radial(s);
  specs.push_back(KernelSpec::l1_laplacian(5));
  for (const KernelSpec& k : specs) {
    for (int i = 0; i < 20; ++i) {
      const Vector x = random_vector(5, rng), z = random_vector(5, rng);
      const Vector c = random_vector(5, rng, 3.0);
      EXPECT_NEAR(kernel_eval(k, x + c, z + c), kernel_eval(k, x, z), 1e-12) << k.describe();
    }
  }
}

KernelSpec with_shape(const KernelSpec& k, ShapeMatrix s) {
  switch (k.family()) {
    case KernelFamily::kGaussian: return KernelSpec::gaussian(std::move(s));
    case KernelFamily::kLaplacian: return KernelSpec::laplacian(std::move(s));
    case KernelFamily::kExpPower: return KernelSpec::exp_power(k.alpha(), std::move(s));
    case KernelFamily::kMatern: return KernelSpec::matern(k.nu(), std::move(s));
    case KernelFamily::kL1Laplacian: break;
  }
  return KernelSpec::l1_laplacian(s.dim());
}

TEST(KernelProperties, AnisotropyReducesToIsotropicOnWhitenedInputs) {
  RngStream rng(5, 0);
  const ShapeMatrix s = random_shape(4, rng);
  const ShapeMatrix id = ShapeMatrix::identity(4);
  for (const KernelSpec& k : all_radial(s)) {
    const KernelSpec iso = with_shape(k, id);
    for (int i = 0; i < 20; ++i) {
      const Vector x = random_vector(4, rng), z = random_vector(4, rng);
      EXPECT_NEAR(kernel_eval(k, x, z), kernel_eval(iso, s.sqrt() * x, s.sqrt() * z), 1e-10)
          << k.describe();
    }
  }
}

TEST(KernelProperties, BesselPathMatchesClosedForms) {
  for (double nu : {0.5, 1.5, 2.5}) {
    ASSERT_TRUE(matern_has_closed_form(nu));
    for (int i = 0; i <= 2000; ++i) {
      const double r = 1e-6 * std::pow(20.0 / 1e-6, i / 2000.0);
      const double closed = matern_closed_form(nu, r);
      EXPECT_NEAR(matern_bessel(nu, r), closed, 1e-8 * closed) << "nu=" << nu << " r=" << r;
    }
  }
}

TEST(KernelProperties, ValuesInUnitIntervalAndBelowOneOffDiagonal) {
  RngStream rng(6, 0);
  const ShapeMatrix s = random_shape(3, rng);
  for (const KernelSpec& k : all_radial(s)) {
    for (int i = 0; i < 50; ++i) {
      const Vector x = random_vector(3, rng), z = random_vector(3, rng, 0.3);
      const double v = kernel_eval(k, x, z);
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
  }
}

TEST(KernelMatrix, DiagonalOnesAndEntrywiseAgreement) {
  RngStream rng(7, 0);
  RowMatrix x(3, 2);
  x << 0.0, 0.0, 1.0, 0.0, 0.3, -0.4;
  const KernelSpec k = KernelSpec::laplacian(ShapeMatrix::identity(2));
  const Matrix sym = kernel_matrix(k, x);
  const Matrix cross = kernel_matrix(k, x, x);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(sym(i, i), 1.0);
    for (int j = 0; j < 3; ++j) {
      const double e = kernel_eval(k, x.row(i).transpose(), x.row(j).transpose());
      EXPECT_NEAR(sym(i, j), e, 1e-15);
      EXPECT_NEAR(cross(i, j), e, 1e-15);
    }
  }
  EXPECT_NEAR(sym(0, 1), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(sym(0, 2), std::exp(-0.5), 1e-15);
}

TEST(KernelMatrix, PositiveSemidefinite) {
  RngStream rng(8, 0);
  const std::size_t n = 200, d = 5;
  RowMatrix x(n, d);
  for (std::size_t i = 0; i < n; ++i) x.row(i) = random_vector(d, rng).transpose();
  const ShapeMatrix s = random_shape(d, rng);
  auto specs = all_radial(s);
  specs.push_back(KernelSpec::l1_laplacian(d));
  for (const KernelSpec& k : specs) {
    const Matrix km = kernel_matrix(k, x);
    EXPECT_EQ(km, km.transpose()) << k.describe();
    Eigen::SelfAdjointEigenSolver<Matrix> es(km, Eigen::EigenvaluesOnly);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8) << k.describe();
  }
}

TEST(KernelMatrix, CrossMatchesSymmetricPath) {
  RngStream rng(9, 0);
  RowMatrix x(130, 3);
  for (Eigen::Index i = 0; i < x.rows(); ++i) x.row(i) = random_vector(3, rng).transpose();
  const KernelSpec k = KernelSpec::matern(4.0, random_shape(3, rng));
  EXPECT_LT((kernel_matrix(k, x) - kernel_matrix(k, x, x)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(KernelSpec, ParseAndDescribe) {
  EXPECT_EQ(parse_family("matern"), KernelFamily::kMatern);
  EXPECT_EQ(parse_family("l1_laplacian"), KernelFamily::kL1Laplacian);
  EXPECT_THROW(parse_family("rbf2"), ParameterError);
  EXPECT_EQ(KernelSpec::matern(1.5, ShapeMatrix::identity(2)).describe(), "matern(nu=1.5)");
}

}  // namespace
}  // namespace rfkit
