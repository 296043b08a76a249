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

#ifndef RFKIT_MULTIVARIATE_HPP_
#define RFKIT_MULTIVARIATE_HPP_

#include <cstddef>

#include "rfkit/rng.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

/// Symmetric positive definite shape matrix M with cached factors.
///
/// Holds M, its unique symmetric square root (from the symmetric
/// eigendecomposition) and its lower Cholesky factor. Eigenvalues must
/// exceed 1e-12 times the largest eigenvalue. Immutable once built, so it
/// can be shared freely between threads.
class ShapeMatrix {
 public:
  explicit ShapeMatrix(const Matrix& m);

  static ShapeMatrix identity(std::size_t dim);
  static ShapeMatrix diagonal(const Vector& diag);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  const Matrix& sqrt() const noexcept { return sqrt_; }
  const Matrix& chol() const noexcept { return chol_; }
  bool is_identity() const noexcept { return identity_; }

 private:
  Matrix m_;
  Matrix sqrt_;
  Matrix chol_;
  bool identity_ = false;
};

// Symmetric R with R * R = M. Throws NotPositiveDefiniteError when an
// eigenvalue is at or below 1e-12 * max eigenvalue.
Matrix sqrt_psd(const Matrix& m);

/// p x d matrix made of p / d independent Haar-distributed d x d blocks.
struct HaarBlockMatrix {
  Matrix q;
  std::size_t blocks = 0;
};

// Haar orthogonal matrix: QR of a Gaussian matrix with the signs of R's
// diagonal folded into Q.
Matrix sample_haar_unitary(std::size_t d, RngStream& rng);
HaarBlockMatrix sample_haar_blocks(std::size_t p, std::size_t d, RngStream& rng);

Vector standard_normal_vector(std::size_t d, RngStream& rng);

// Deterministic transforms of standard normal inputs; the samplers below
// are these transforms applied to fresh draws.
Vector mvn_from_standard(const ShapeMatrix& shape, const Vector& g);
Vector cauchy_from_normals(const ShapeMatrix& shape, const Vector& g, double v);

// N(0, M).
Vector sample_mvn(const ShapeMatrix& shape, RngStream& rng);
// Cauchy(0, M) as u / v, u ~ N(0, M), v ~ N(0, 1).
Vector sample_mv_cauchy(const ShapeMatrix& shape, RngStream& rng);
// Multivariate t with 2 nu degrees of freedom: u sqrt(2 nu / v), v ~ chi^2(2 nu).
Vector sample_mv_t(double nu, const ShapeMatrix& shape, RngStream& rng);
// Elliptically contoured alpha-stable with characteristic function
// exp(-||u||_M^alpha); alpha in (0, 2).
Vector sample_ec_stable(double alpha, const ShapeMatrix& shape, RngStream& rng);

}  // namespace rfkit

#endif  // RFKIT_MULTIVARIATE_HPP_
