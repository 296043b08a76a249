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

#ifndef RFKIT_HARNESS_HPP_
#define RFKIT_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rfkit/feature_maps.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/rng.hpp"
#include "rfkit/types.hpp"

namespace rfkit {

enum class NormKind { kFrobenius, kOperator, kNuclear };

std::string_view norm_name(NormKind norm) noexcept;
NormKind parse_norm(std::string_view name);

// Norms of a symmetric matrix; operator and nuclear come from its spectrum.
struct SymmetricNorms {
  double frobenius = 0.0;
  double op = 0.0;
  double nuclear = 0.0;
};
SymmetricNorms symmetric_norms(const Matrix& a);

// ||G - K|| / ||K|| in the chosen norm. Both must be square, equally sized
// and symmetric to 1e-10.
double rel_error(const Matrix& k, const Matrix& g, NormKind norm);

struct RelativeErrors {
  double frobenius = 0.0;
  double op = 0.0;
  double nuclear = 0.0;
};
// All three relative norms with one eigendecomposition per matrix.
RelativeErrors rel_errors(const Matrix& k, const Matrix& g);

using VectorSampler = std::function<Vector(RngStream&)>;

// The multivariate law whose characteristic function is the kernel profile:
// N(0, M), Cauchy(0, M), t(2 nu, M), elliptically contoured alpha-stable, or
// i.i.d. Cauchy for L1Laplacian.
VectorSampler spectral_sampler(const KernelSpec& spec);

// |(1/n) sum_i cos(w_i^T D) - kappa(D)| for each probe D.
std::vector<double> cf_check(const VectorSampler& sampler, const KernelSpec& target,
                             const std::vector<Vector>& probes, std::size_t n_samples,
                             RngStream& rng);

struct ErrorReport {
  std::size_t n = 0;
  std::size_t p = 0;
  std::string kernel;
  Scheme scheme = Scheme::kRff;
  double rel_frobenius = 0.0;
  double rel_operator = 0.0;
  double rel_nuclear = 0.0;
  SeedRecord seed;
  double exact_ms = 0.0;
  double build_ms = 0.0;
  double featurize_ms = 0.0;
  double gram_ms = 0.0;
};

struct NormSelection {
  bool frobenius = true;
  bool op = true;
  bool nuclear = true;
};

// Builds the operator, featurizes X and compares the approximate Gram with
// the exact kernel matrix (pass it in to reuse across p).
ErrorReport measure_error(const KernelSpec& spec, const RowMatrix& x, const Matrix& exact,
                          Scheme scheme, std::size_t p, SeedRecord seed, NormSelection norms = {});

struct SpeedupRow {
  std::size_t p = 0;
  double exact_ms = 0.0;    // median over repeats
  double feature_ms = 0.0;  // median of featurize + Gram (+ build if requested)
  double build_ms = 0.0;    // median operator construction time
  double speedup = 0.0;     // exact_ms / feature_ms
  double rel_frobenius = 0.0;
};

struct SpeedupTable {
  std::string kernel;
  Scheme scheme = Scheme::kRff;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t repeats = 0;
  int threads = 1;
  bool includes_build = false;
  std::vector<SpeedupRow> rows;
};

struct BenchOptions {
  std::size_t repeats = 3;
  bool include_build = false;
  SeedRecord seed;
};

SpeedupTable bench_speedup(const KernelSpec& spec, const RowMatrix& x,
                           const std::vector<std::size_t>& p_grid, Scheme scheme,
                           const BenchOptions& options);

int worker_threads() noexcept;

}  // namespace rfkit

#endif  // RFKIT_HARNESS_HPP_
