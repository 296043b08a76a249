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

#ifndef RFKIT_FEATURE_MAPS_HPP_
#define RFKIT_FEATURE_MAPS_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "rfkit/kernels.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

enum class Scheme { kRff, kOrf };

std::string_view scheme_name(Scheme scheme) noexcept;
Scheme parse_scheme(std::string_view name);

// Everything needed to re-draw an operator: the stream it was sampled from.
struct SeedRecord {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  bool operator==(const SeedRecord&) const = default;
};

/// Random feature operator x -> psi_p(A x) with a p x d projection A.
///
/// RFF: A = W, rows drawn i.i.d. from the kernel's spectral law.
/// ORF: A = S Q sqrt(M), S diagonal radial draws and Q stacked Haar blocks.
/// The projection is a pure function of (kernel, scheme, p, seed record).
class FeatureOperator {
 public:
  Scheme scheme() const noexcept { return scheme_; }
  const KernelSpec& kernel() const noexcept { return kernel_; }
  std::size_t p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return kernel_.dim(); }
  std::size_t feature_dim() const noexcept { return 2 * p_; }
  const SeedRecord& seed_record() const noexcept { return seed_; }

  // Effective p x d projection (W, or S Q sqrt(M)).
  const RowMatrix& projection() const noexcept { return projection_; }
  // ORF factors; empty for RFF.
  const Vector& radial() const noexcept { return radial_; }
  const Matrix& rotation() const noexcept { return rotation_; }

  std::string id() const;

 private:
  friend FeatureOperator build_rff(const KernelSpec&, std::size_t, SeedRecord);
  friend FeatureOperator build_orf(const KernelSpec&, std::size_t, SeedRecord);

  FeatureOperator(Scheme scheme, KernelSpec kernel, std::size_t p, SeedRecord seed)
      : scheme_(scheme), kernel_(std::move(kernel)), p_(p), seed_(seed) {}

  Scheme scheme_;
  KernelSpec kernel_;
  std::size_t p_;
  SeedRecord seed_;
  RowMatrix projection_;
  Vector radial_;
  Matrix rotation_;
};

/// Feature matrix with 2p columns laid out as interleaved (cos, sin) pairs.
struct FeatureMatrix {
  RowMatrix phi;
  std::string operator_id;
};

// (cos u_1, sin u_1, cos u_2, sin u_2, ...) / sqrt(p), p = u.size().
Vector psi(const Vector& u);

FeatureOperator build_rff(const KernelSpec& kernel, std::size_t p, SeedRecord seed);
// p must be a multiple of the input dimension; not available for L1Laplacian.
FeatureOperator build_orf(const KernelSpec& kernel, std::size_t p, SeedRecord seed);
FeatureOperator build_operator(const KernelSpec& kernel, Scheme scheme, std::size_t p,
                               SeedRecord seed);

// Smallest multiple of d that is >= p.
std::size_t round_up_to_multiple(std::size_t p, std::size_t d);

FeatureMatrix featurize(const FeatureOperator& op, const RowMatrix& x);
Matrix gram_approx(const FeatureMatrix& phi);
// Cross Gram Phi_a Phi_b^T.
Matrix gram_approx(const FeatureMatrix& a, const FeatureMatrix& b);

// Versioned JSON record (kernel, scheme, p, seed record, layout). Weights are
// not stored; deserialize() re-draws them.
std::string serialize_operator(const FeatureOperator& op);
FeatureOperator deserialize_operator(std::string_view text);

}  // namespace rfkit

#endif  // RFKIT_FEATURE_MAPS_HPP_
