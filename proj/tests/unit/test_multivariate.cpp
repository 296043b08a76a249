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

#include "rfkit/distributions.hpp"
#include "rfkit/errors.hpp"
#include "rfkit/multivariate.hpp"
#include "rfkit/stats.hpp"

namespace rfkit {
namespace {

constexpr double kKsLevel = 0.01;

Matrix random_spd(std::size_t d, RngStream& rng) {
  Matrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.normal();
  return a * a.transpose() + 0.5 * Matrix::Identity(d, d);
}

double rel_frob(const Matrix& a, const Matrix& b) { return (a - b).norm() / b.norm(); }

TEST(ShapeMatrix, IdentityAndDiagonalRoots) {
  EXPECT_EQ(sqrt_psd(Matrix::Identity(4, 4)), Matrix::Identity(4, 4));
  Matrix m = Matrix::Zero(2, 2);
  m.diagonal() << 4.0, 9.0;
  const Matrix r = sqrt_psd(m);
  EXPECT_NEAR(r(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(r(1, 1), 3.0, 1e-15);
  EXPECT_NEAR(r(0, 1), 0.0, 1e-15);
}

TEST(ShapeMatrix, RandomSpdFactorsReconstruct) {
  RngStream rng(5, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_spd(5, rng);
    const ShapeMatrix s(m);
    EXPECT_LT(rel_frob(s.sqrt() * s.sqrt(), m), 1e-10);
    EXPECT_LT(rel_frob(s.sqrt(), s.sqrt().transpose()), 1e-15);
    EXPECT_LT((s.chol() * s.chol().transpose() - m).norm(), 1e-10 * m.norm());
  }
}

TEST(ShapeMatrix, RejectsAsymmetricAndIndefinite) {
  Matrix a(2, 2);
  a << 1.0, 0.5, 0.4, 1.0;
  EXPECT_THROW(ShapeMatrix{a}, ParameterError);
  Matrix b(2, 2);
  b << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(ShapeMatrix{b}, NotPositiveDefiniteError);
  Matrix c = Matrix::Identity(3, 3);
  c(2, 2) = 1e-14;
  EXPECT_THROW(sqrt_psd(c), NotPositiveDefiniteError);
}

TEST(Haar, BlocksAreOrthogonalWithUnitRows) {
  RngStream rng(6, 0);
  const HaarBlockMatrix h = sample_haar_blocks(48, 16, rng);
  ASSERT_EQ(h.q.rows(), 48);
  ASSERT_EQ(h.blocks, 3u);
  for (int b = 0; b < 3; ++b) {
    const Matrix block = h.q.middleRows(16 * b, 16);
    EXPECT_LT((block.transpose() * block - Matrix::Identity(16, 16)).norm(), 1e-10);
  }
  for (Eigen::Index i = 0; i < h.q.rows(); ++i) EXPECT_NEAR(h.q.row(i).norm(), 1.0, 1e-12);
  EXPECT_THROW(sample_haar_blocks(50, 16, rng), ParameterError);
}

TEST(Haar, CircleAngleIsUniform) {
  RngStream rng(7, 0);
  std::vector<std::size_t> counts(16, 0);
  for (int i = 0; i < 100000; ++i) {
    const Matrix q = sample_haar_unitary(2, rng);
    double angle = std::atan2(q(1, 0), q(0, 0));
    if (angle < 0) angle += 2.0 * std::numbers::pi;
    const auto bin = static_cast<std::size_t>(angle / (2.0 * std::numbers::pi) * 16.0);
    ++counts[std::min<std::size_t>(bin, 15)];
  }
  EXPECT_GT(chi_square_uniform_p_value(counts), kKsLevel);
}

TEST(Haar, LawInvariantUnderFixedRotation) {
  // Traces of Q^T R Q for a fixed symmetric R should have the same law as
  // those of (O Q)^T R (O Q) for a fixed orthogonal O.
  RngStream rng(8, 0);
  const std::size_t d = 5;
  Matrix r = Matrix::Zero(d, d);
  r.diagonal() << 3.0, 1.0, 0.0, -1.0, 2.0;
  const Matrix o = sample_haar_unitary(d, rng);
  std::vector<double> plain, rotated;
  for (int i = 0; i < 20000; ++i) {
    const Matrix q = sample_haar_unitary(d, rng);
    plain.push_back((q.transpose() * r * q).topLeftCorner(2, 2).trace());
    const Matrix oq = o * sample_haar_unitary(d, rng);
    rotated.push_back((oq.transpose() * r * oq).topLeftCorner(2, 2).trace());
  }
  EXPECT_TRUE(ks_two_sample(plain, rotated).passes(kKsLevel));
}

Matrix sample_covariance(const std::vector<Vector>& xs) {
  const std::size_t d = xs.front().size();
  Matrix c = Matrix::Zero(d, d);
  for (const Vector& x : xs) c += x * x.transpose();
  return c / static_cast<double>(xs.size());
}

TEST(Mvn, CovarianceConverges) {
  RngStream rng(9, 0);
  Matrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  for (const ShapeMatrix& s : {ShapeMatrix::identity(2), ShapeMatrix(m)}) {
    std::vector<Vector> xs;
    xs.reserve(1000000);
    for (int i = 0; i < 1000000; ++i) xs.push_back(sample_mvn(s, rng));
    const double tol = s.is_identity() ? 0.01 : 0.02;
    EXPECT_LT((sample_covariance(xs) - s.matrix()).cwiseAbs().maxCoeff(), tol);
  }
}

TEST(Mvn, ZeroInputGivesZero) {
  Matrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  EXPECT_EQ(mvn_from_standard(ShapeMatrix(m), Vector::Zero(2)), Vector::Zero(2));
}

std::vector<double> projections(const std::vector<Vector>& xs, const Vector& e) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const Vector& x : xs) out.push_back(e.dot(x));
  return out;
}

ShapeMatrix test_shape() {
  Matrix m(3, 3);
  m << 2.0, 0.3, 0.1, 0.3, 1.0, -0.2, 0.1, -0.2, 0.5;
  return ShapeMatrix(m);
}

TEST(MvCauchy, ProjectionsAreCauchyWithMahalanobisScale) {
  RngStream rng(10, 0);
  const ShapeMatrix s = test_shape();
  std::vector<Vector> xs;
  for (int i = 0; i < 100000; ++i) xs.push_back(sample_mv_cauchy(s, rng));
  Vector e(3);
  e << 0.6, -0.8, 0.0;
  const double scale = std::sqrt(e.dot(s.matrix() * e));
  EXPECT_TRUE(ks_one_sample(projections(xs, e), [&](double x) { return cauchy_cdf(scale, x); })
                  .passes(kKsLevel));
}

TEST(MvCauchy, SignFlippedInputsNegateDraw) {
  RngStream rng(11, 0);
  const ShapeMatrix s = test_shape();
  for (int i = 0; i < 100; ++i) {
    const Vector g = standard_normal_vector(3, rng);
    const double v = rng.normal();
    EXPECT_EQ(cauchy_from_normals(s, -g, v), -cauchy_from_normals(s, g, v));
  }
}

TEST(MvCauchy, OneDimensionMatchesStableCms) {
  RngStream a(12, 0), b(12, 1);
  const ShapeMatrix s = ShapeMatrix::identity(1);
  std::vector<double> mv, cms;
  for (int i = 0; i < 100000; ++i) {
    mv.push_back(sample_mv_cauchy(s, a)(0));
    cms.push_back(sample_stable_cms(StableParams{1.0, 0.0, 1.0}, b));
  }
  EXPECT_TRUE(ks_two_sample(mv, cms).passes(kKsLevel));
}

TEST(MvCauchy, NormFollowsGbp) {
  for (std::size_t d : {4u, 16u}) {
    RngStream rng(13, d);
    const double sigma = 1.7;
    const ShapeMatrix s = ShapeMatrix::diagonal(Vector::Constant(d, sigma * sigma));
    std::vector<double> norms;
    for (int i = 0; i < 100000; ++i) norms.push_back(sample_mv_cauchy(s, rng).norm());
    const GbpParams g{0.5 * d, 0.5, 2.0, sigma};
    EXPECT_TRUE(ks_one_sample(norms, [&](double x) { return gbp_cdf(g, x); }).passes(kKsLevel));
  }
}

TEST(MvT, HalfNuIsCauchy) {
  RngStream a(14, 0), b(14, 1);
  const ShapeMatrix s = test_shape();
  Vector e(3);
  e << 0.2, 0.5, -1.0;
  std::vector<double> t, c;
  for (int i = 0; i < 100000; ++i) {
    t.push_back(e.dot(sample_mv_t(0.5, s, a)));
    c.push_back(e.dot(sample_mv_cauchy(s, b)));
  }
  EXPECT_TRUE(ks_two_sample(t, c).passes(kKsLevel));
}

TEST(MvT, LargeNuIsGaussian) {
  RngStream rng(15, 0);
  const ShapeMatrix s = test_shape();
  Vector e(3);
  e << 1.0, 1.0, 0.0;
  const double sd = std::sqrt(e.dot(s.matrix() * e));
  std::vector<double> xs;
  for (int i = 0; i < 100000; ++i) xs.push_back(e.dot(sample_mv_t(1e4, s, rng)));
  EXPECT_TRUE(ks_one_sample(xs, [&](double x) { return normal_cdf(x / sd); }).passes(kKsLevel));
}

TEST(MvT, NormFollowsGbp) {
  RngStream rng(16, 0);
  const double sigma = 0.8, nu = 1.5;
  const std::size_t d = 8;
  const ShapeMatrix s = ShapeMatrix::diagonal(Vector::Constant(d, sigma * sigma));
  std::vector<double> norms;
  for (int i = 0; i < 100000; ++i) norms.push_back(sample_mv_t(nu, s, rng).norm());
  const GbpParams g{0.5 * d, nu, 2.0, sigma * std::sqrt(2.0 * nu)};
  EXPECT_TRUE(ks_one_sample(norms, [&](double x) { return gbp_cdf(g, x); }).passes(kKsLevel));
  // Cross-sampler: GBP draws against the norm of t draws.
  RngStream r2(16, 1);
  std::vector<double> gbp;
  for (int i = 0; i < 100000; ++i) gbp.push_back(sample_gbp(g, r2));
  EXPECT_LT(ks_two_sample(norms, gbp).statistic, 0.01);
}

double empirical_cos_cf(const std::vector<Vector>& xs, const Vector& u) {
  double acc = 0.0;
  for (const Vector& x : xs) acc += std::cos(u.dot(x));
  return acc / static_cast<double>(xs.size());
}

std::vector<Vector> probes(std::size_t d, RngStream& rng) {
  std::vector<Vector> out;
  for (double r : {0.2, 0.5, 1.0, 1.5, 2.5}) {
    Vector u = standard_normal_vector(d, rng);
    out.push_back(r * u / u.norm());
  }
  return out;
}

TEST(MultivariateCf, AllSamplersMatchTargets) {
  const std::size_t n = 1000000;
  const double tol = 5.0 / std::sqrt(static_cast<double>(n));
  const ShapeMatrix s = test_shape();
  RngStream rng(17, 0);
  const auto us = probes(3, rng);
  const auto mnorm = [&](const Vector& u) { return std::sqrt(u.dot(s.matrix() * u)); };
  struct Case {
    const char* name;
    std::function<Vector(RngStream&)> draw;
    std::function<double(double)> cf;
  };
  const std::vector<Case> cases{
      {"gaussian", [&](RngStream& r) { return sample_mvn(s, r); },
       [](double m) { return std::exp(-0.5 * m * m); }},
      {"cauchy", [&](RngStream& r) { return sample_mv_cauchy(s, r); },
       [](double m) { return std::exp(-m); }},
      {"stable", [&](RngStream& r) { return sample_ec_stable(1.3, s, r); },
       [](double m) { return std::exp(-std::pow(m, 1.3)); }},
  };
  for (const Case& c : cases) {
    RngStream r(18, 0);
    std::vector<Vector> xs;
    xs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) xs.push_back(c.draw(r));
    for (const Vector& u : us) {
      EXPECT_LT(std::abs(empirical_cos_cf(xs, u) - c.cf(mnorm(u))), tol) << c.name;
    }
  }
  // t with 2 nu = 3 degrees of freedom: CF (1 + sqrt(3) m) e^{-sqrt(3) m}.
  RngStream r(19, 0);
  std::vector<Vector> xs;
  xs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) xs.push_back(sample_mv_t(1.5, s, r));
  for (const Vector& u : us) {
    const double m = std::sqrt(3.0) * mnorm(u);
    EXPECT_LT(std::abs(empirical_cos_cf(xs, u) - (1.0 + m) * std::exp(-m)), tol) << "t";
  }
}

TEST(EcStable, AlphaOneProjectionsMatchCauchySampler) {
  RngStream a(20, 0), b(20, 1);
  const ShapeMatrix s = test_shape();
  Vector e(3);
  e << 0.0, 1.0, 1.0;
  std::vector<double> st, ca;
  for (int i = 0; i < 100000; ++i) {
    st.push_back(e.dot(sample_ec_stable(1.0, s, a)));
    ca.push_back(e.dot(sample_mv_cauchy(s, b)));
  }
  EXPECT_TRUE(ks_two_sample(st, ca).passes(kKsLevel));
}

TEST(EcStable, SymmetricAboutOrigin) {
  RngStream rng(21, 0);
  const ShapeMatrix s = test_shape();
  Vector e(3);
  e << 1.0, -2.0, 0.5;
  int positive = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) positive += e.dot(sample_ec_stable(0.8, s, rng)) > 0.0;
  // Two-sided binomial sign test at 0.01: |z| < 2.576.
  const double z = (positive - 0.5 * n) / std::sqrt(0.25 * n);
  EXPECT_LT(std::abs(z), 2.576);
}

TEST(EcStable, RejectsAlphaOutOfRange) {
  RngStream rng(22, 0);
  EXPECT_THROW(sample_ec_stable(2.0, ShapeMatrix::identity(2), rng), ParameterError);
  EXPECT_THROW(sample_ec_stable(0.0, ShapeMatrix::identity(2), rng), ParameterError);
}

}  // namespace
}  // namespace rfkit
