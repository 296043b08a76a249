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

#include <cmath>
#include <vector>

#include "rfkit/errors.hpp"
#include "rfkit/harness.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/multivariate.hpp"

namespace rfkit {
namespace {

RowMatrix random_rows(std::size_t n, std::size_t d, RngStream& rng) {
  RowMatrix x(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) x(i, j) = rng.normal();
  return x;
}

Matrix random_symmetric(std::size_t n, RngStream& rng) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.normal();
  return 0.5 * (a + a.transpose());
}

// Largest |eigenvalue| by power iteration on A^2.
double power_iteration_norm(const Matrix& a) {
  Vector v = Vector::Ones(a.rows()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    const Vector w = a * (a * v);
    lambda = w.norm();
    v = w / lambda;
  }
  return std::sqrt(lambda);
}

TEST(RelError, ZeroForIdenticalMatrices) {
  RngStream rng(1, 0);
  const Matrix k = random_symmetric(10, rng);
  for (NormKind n : {NormKind::kFrobenius, NormKind::kOperator, NormKind::kNuclear}) {
    EXPECT_EQ(rel_error(k, k, n), 0.0);
  }
}

TEST(RelError, HandComputedDiagonalCase) {
  const Matrix k = Matrix::Identity(2, 2);
  Matrix g = Matrix::Identity(2, 2);
  g(1, 1) = 2.0;
  EXPECT_NEAR(rel_error(k, g, NormKind::kFrobenius), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(rel_error(k, g, NormKind::kOperator), 1.0, 1e-15);
  EXPECT_NEAR(rel_error(k, g, NormKind::kNuclear), 0.5, 1e-15);
  const RelativeErrors all = rel_errors(k, g);
  EXPECT_NEAR(all.frobenius, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(all.op, 1.0, 1e-15);
  EXPECT_NEAR(all.nuclear, 0.5, 1e-15);
}

TEST(RelError, OperatorNormMatchesPowerIteration) {
  RngStream rng(2, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_symmetric(50, rng);
    const SymmetricNorms n = symmetric_norms(a);
    EXPECT_NEAR(n.op, power_iteration_norm(a), 1e-8 * n.op);
  }
}

TEST(RelError, RawNormInequalities) {
  RngStream rng(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const SymmetricNorms n = symmetric_norms(random_symmetric(30, rng));
    EXPECT_LE(n.op, n.frobenius * (1 + 1e-14));
    EXPECT_LE(n.frobenius, n.nuclear * (1 + 1e-14));
  }
}

TEST(RelError, RejectsMismatchedOrAsymmetric) {
  EXPECT_THROW(rel_error(Matrix::Identity(2, 2), Matrix::Identity(3, 3), NormKind::kFrobenius),
               DimensionError);
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(rel_error(Matrix::Identity(2, 2), a, NormKind::kOperator), ParameterError);
}

TEST(CfCheck, ZeroProbeIsExact) {
  RngStream rng(4, 0);
  const KernelSpec k = KernelSpec::laplacian(ShapeMatrix::identity(3));
  const auto dev = cf_check(spectral_sampler(k), k, {Vector::Zero(3)}, 1000, rng);
  ASSERT_EQ(dev.size(), 1u);
  EXPECT_EQ(dev[0], 0.0);
}

TEST(CfCheck, LaplacianUnitProbe) {
  RngStream rng(5, 0);
  const KernelSpec k = KernelSpec::laplacian(ShapeMatrix::identity(4));
  Vector u = Vector::Zero(4);
  u(0) = 0.6;
  u(2) = 0.8;
  EXPECT_LT(cf_check(spectral_sampler(k), k, {u}, 1000000, rng)[0], 0.005);
}

TEST(CfCheck, MaternNuTwoFiveProbes) {
  RngStream rng(6, 0);
  const std::size_t d = 8;
  const KernelSpec k = KernelSpec::matern(2.0, ShapeMatrix::identity(d));
  std::vector<Vector> probes;
  for (double r : {0.1, 0.4, 0.8, 1.5, 3.0}) {
    Vector u(d);
    for (std::size_t j = 0; j < d; ++j) u(j) = rng.normal();
    probes.push_back(r * u.normalized());
  }
  for (double dev : cf_check(spectral_sampler(k), k, probes, 1000000, rng)) EXPECT_LT(dev, 0.005);
}

TEST(MeasureError, DeterministicAndOrdered) {
  RngStream rng(7, 0);
  const RowMatrix x = random_rows(120, 5, rng);
  const KernelSpec k = KernelSpec::exp_power(0.8, ShapeMatrix::identity(5));
  const Matrix exact = kernel_matrix(k, x);
  for (Scheme scheme : {Scheme::kRff, Scheme::kOrf}) {
    const ErrorReport a = measure_error(k, x, exact, scheme, 200, SeedRecord{7, 1});
    const ErrorReport b = measure_error(k, x, exact, scheme, 200, SeedRecord{7, 1});
    EXPECT_EQ(a.rel_frobenius, b.rel_frobenius);
    EXPECT_EQ(a.rel_operator, b.rel_operator);
    EXPECT_EQ(a.rel_nuclear, b.rel_nuclear);
    for (double e : {a.rel_frobenius, a.rel_operator, a.rel_nuclear}) {
      EXPECT_TRUE(std::isfinite(e));
      EXPECT_GE(e, 0.0);
    }
    EXPECT_EQ(a.n, 120u);
    EXPECT_EQ(a.p, 200u);
  }
}

TEST(MeasureError, ErrorShrinksWithP) {
  RngStream rng(8, 0);
  const RowMatrix x = random_rows(200, 4, rng);
  const KernelSpec k = KernelSpec::laplacian(ShapeMatrix::identity(4));
  const Matrix exact = kernel_matrix(k, x);
  const ErrorReport small = measure_error(k, x, exact, Scheme::kRff, 64, SeedRecord{8, 1});
  const ErrorReport large = measure_error(k, x, exact, Scheme::kRff, 4096, SeedRecord{8, 2});
  EXPECT_LT(large.rel_frobenius, small.rel_frobenius / 3.0);
}

TEST(BenchSpeedup, TableWellFormed) {
  RngStream rng(9, 0);
  const RowMatrix x = random_rows(300, 6, rng);
  const KernelSpec k = KernelSpec::matern(4.0, ShapeMatrix::identity(6));
  for (std::size_t repeats : {1u, 5u}) {
    BenchOptions opts;
    opts.repeats = repeats;
    opts.seed = SeedRecord{9, 0};
    const SpeedupTable t = bench_speedup(k, x, {12, 48, 192}, Scheme::kOrf, opts);
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.repeats, repeats);
    EXPECT_EQ(t.n, 300u);
    EXPECT_GE(t.threads, 1);
    for (const SpeedupRow& r : t.rows) {
      EXPECT_GT(r.exact_ms, 0.0);
      EXPECT_GT(r.feature_ms, 0.0);
      EXPECT_NEAR(r.speedup, r.exact_ms / r.feature_ms, 1e-12 * r.speedup);
    }
    EXPECT_GT(t.rows.front().rel_frobenius, t.rows.back().rel_frobenius);
  }
}

TEST(Norms, ParseNames) {
  EXPECT_EQ(parse_norm("frobenius"), NormKind::kFrobenius);
  EXPECT_EQ(parse_norm("operator"), NormKind::kOperator);
  EXPECT_EQ(parse_norm("nuclear"), NormKind::kNuclear);
  EXPECT_THROW(parse_norm("max"), ParameterError);
}

}  // namespace
}  // namespace rfkit
