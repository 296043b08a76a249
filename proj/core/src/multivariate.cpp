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

#include "rfkit/multivariate.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "rfkit/distributions.hpp"
#include "rfkit/errors.hpp"

namespace rfkit {

namespace {

constexpr double kEigenFloor = 1e-12;

void check_symmetric(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("shape matrix must be square and non-empty, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw ParameterError("shape matrix has non-finite entries");
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ParameterError("shape matrix is not symmetric");
  }
}

Eigen::SelfAdjointEigenSolver<Matrix> checked_eigen(const Matrix& m) {
  check_symmetric(m);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const Vector& ev = eig.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0) || ev.minCoeff() <= kEigenFloor * top) {
    throw NotPositiveDefiniteError("matrix is not positive definite (min eigenvalue " +
                                   std::to_string(ev.minCoeff()) + ", max " +
                                   std::to_string(top) + ")");
  }
  return eig;
}

}  // namespace

Matrix sqrt_psd(const Matrix& m) {
  const auto eig = checked_eigen(m);
  const Matrix& v = eig.eigenvectors();
  Matrix r = v * eig.eigenvalues().cwiseSqrt().asDiagonal() * v.transpose();
  return 0.5 * (r + r.transpose());
}

ShapeMatrix::ShapeMatrix(const Matrix& m) : m_(0.5 * (m + m.transpose())) {
  check_symmetric(m);
  identity_ = m.isIdentity(0.0);
  if (identity_) {
    sqrt_ = m_;
    chol_ = m_;
    return;
  }
  sqrt_ = sqrt_psd(m_);
  Eigen::LLT<Matrix> llt(m_);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("Cholesky factorization of shape matrix failed");
  }
  chol_ = llt.matrixL();
}

ShapeMatrix ShapeMatrix::identity(std::size_t dim) {
  return ShapeMatrix(Matrix::Identity(static_cast<Eigen::Index>(dim),
                                      static_cast<Eigen::Index>(dim)));
}

ShapeMatrix ShapeMatrix::diagonal(const Vector& diag) {
  return ShapeMatrix(Matrix(diag.asDiagonal()));
}

Vector standard_normal_vector(std::size_t d, RngStream& rng) {
  Vector g(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = rng.normal();
  return g;
}

Matrix sample_haar_unitary(std::size_t d, RngStream& rng) {
  if (d == 0) throw ParameterError("Haar dimension must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

HaarBlockMatrix sample_haar_blocks(std::size_t p, std::size_t d, RngStream& rng) {
  if (d == 0 || p == 0 || p % d != 0) {
    throw ParameterError("orthogonal features need p to be a positive multiple of d (p = " +
                         std::to_string(p) + ", d = " + std::to_string(d) + ")");
  }
  HaarBlockMatrix out;
  out.blocks = p / d;
  const auto n = static_cast<Eigen::Index>(d);
  out.q.resize(static_cast<Eigen::Index>(p), n);
  for (std::size_t b = 0; b < out.blocks; ++b) {
    out.q.middleRows(static_cast<Eigen::Index>(b) * n, n) = sample_haar_unitary(d, rng);
  }
  return out;
}

Vector mvn_from_standard(const ShapeMatrix& shape, const Vector& g) {
  if (static_cast<std::size_t>(g.size()) != shape.dim()) {
    throw DimensionError("Gaussian input has dimension " + std::to_string(g.size()) +
                         ", shape matrix has " + std::to_string(shape.dim()));
  }
  if (shape.is_identity()) return g;
  return shape.chol().triangularView<Eigen::Lower>() * g;
}

Vector cauchy_from_normals(const ShapeMatrix& shape, const Vector& g, double v) {
  return mvn_from_standard(shape, g) / v;
}

Vector sample_mvn(const ShapeMatrix& shape, RngStream& rng) {
  return mvn_from_standard(shape, standard_normal_vector(shape.dim(), rng));
}

Vector sample_mv_cauchy(const ShapeMatrix& shape, RngStream& rng) {
  const Vector g = standard_normal_vector(shape.dim(), rng);
  double v = rng.normal();
  while (std::abs(v) < 1e-300) v = rng.normal();
  return cauchy_from_normals(shape, g, v);
}

Vector sample_mv_t(double nu, const ShapeMatrix& shape, RngStream& rng) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw ParameterError("t degrees-of-freedom parameter nu must be positive");
  }
  const Vector u = sample_mvn(shape, rng);
  double v = sample_chi_squared(2.0 * nu, rng);
  while (v < 1e-300) v = sample_chi_squared(2.0 * nu, rng);
  return u * std::sqrt(2.0 * nu / v);
}

Vector sample_ec_stable(double alpha, const ShapeMatrix& shape, RngStream& rng) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ParameterError("elliptically contoured stable needs alpha in (0, 2); use the "
                         "Gaussian sampler for alpha = 2");
  }
  const double a = sample_stable_cms(exp_power_mixing_law(alpha), rng);
  return std::sqrt(a) * sample_mvn(shape, rng);
}

}  // namespace rfkit
