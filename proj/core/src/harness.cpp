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

#include "rfkit/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "rfkit/distributions.hpp"
#include "rfkit/errors.hpp"
#include "rfkit/multivariate.hpp"
#include "rfkit/stats.hpp"

#if defined(RFKIT_HAVE_OPENMP)
#include <omp.h>
#endif

namespace rfkit {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_pair(const Matrix& k, const Matrix& g) {
  if (k.rows() != k.cols() || g.rows() != g.cols() || k.rows() != g.rows()) {
    throw DimensionError("error norms need two square matrices of equal size");
  }
  const double scale = std::max({k.cwiseAbs().maxCoeff(), g.cwiseAbs().maxCoeff(), 1.0});
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale ||
      (g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ParameterError("error norms need symmetric matrices");
  }
}

double safe_ratio(double num, double den, const char* norm) {
  if (!(den > 0.0)) {
    throw NumericalError(std::string("reference kernel matrix has zero ") + norm + " norm");
  }
  return num / den;
}

}  // namespace

std::string_view norm_name(NormKind norm) noexcept {
  switch (norm) {
    case NormKind::kFrobenius: return "frobenius";
    case NormKind::kOperator: return "operator";
    case NormKind::kNuclear: return "nuclear";
  }
  return "unknown";
}

NormKind parse_norm(std::string_view name) {
  for (auto n : {NormKind::kFrobenius, NormKind::kOperator, NormKind::kNuclear}) {
    if (norm_name(n) == name) return n;
  }
  throw ParameterError("unknown norm '" + std::string(name) + "'");
}

SymmetricNorms symmetric_norms(const Matrix& a) {
  SymmetricNorms out;
  out.frobenius = a.norm();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  const Vector abs_ev = eig.eigenvalues().cwiseAbs();
  out.op = abs_ev.size() ? abs_ev.maxCoeff() : 0.0;
  out.nuclear = abs_ev.sum();
  return out;
}

double rel_error(const Matrix& k, const Matrix& g, NormKind norm) {
  check_pair(k, g);
  const Matrix diff = g - k;
  if (norm == NormKind::kFrobenius) return safe_ratio(diff.norm(), k.norm(), "Frobenius");
  const SymmetricNorms nd = symmetric_norms(diff);
  const SymmetricNorms nk = symmetric_norms(k);
  return norm == NormKind::kOperator ? safe_ratio(nd.op, nk.op, "operator")
                                     : safe_ratio(nd.nuclear, nk.nuclear, "nuclear");
}

RelativeErrors rel_errors(const Matrix& k, const Matrix& g) {
  check_pair(k, g);
  const SymmetricNorms nd = symmetric_norms(g - k);
  const SymmetricNorms nk = symmetric_norms(k);
  return {safe_ratio(nd.frobenius, nk.frobenius, "Frobenius"),
          safe_ratio(nd.op, nk.op, "operator"), safe_ratio(nd.nuclear, nk.nuclear, "nuclear")};
}

VectorSampler spectral_sampler(const KernelSpec& spec) {
  const ShapeMatrix shape = spec.shape();
  switch (spec.family()) {
    case KernelFamily::kGaussian:
      return [shape](RngStream& rng) { return sample_mvn(shape, rng); };
    case KernelFamily::kLaplacian:
      return [shape](RngStream& rng) { return sample_mv_cauchy(shape, rng); };
    case KernelFamily::kMatern:
      return [shape, nu = spec.nu()](RngStream& rng) { return sample_mv_t(nu, shape, rng); };
    case KernelFamily::kExpPower:
      if (spec.alpha() == 2.0) {
        return [shape](RngStream& rng) { return Vector(std::numbers::sqrt2 * sample_mvn(shape, rng)); };
      }
      return [shape, alpha = spec.alpha()](RngStream& rng) {
        return sample_ec_stable(alpha, shape, rng);
      };
    case KernelFamily::kL1Laplacian:
      return [d = spec.dim()](RngStream& rng) {
        Vector w(static_cast<Eigen::Index>(d));
        for (Eigen::Index i = 0; i < w.size(); ++i) {
          w[i] = std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
        }
        return w;
      };
  }
  throw ParameterError("unsupported kernel family");
}

std::vector<double> cf_check(const VectorSampler& sampler, const KernelSpec& target,
                             const std::vector<Vector>& probes, std::size_t n_samples,
                             RngStream& rng) {
  if (n_samples == 0) throw ParameterError("cf_check needs at least one sample");
  for (const Vector& probe : probes) {
    if (static_cast<std::size_t>(probe.size()) != target.dim()) {
      throw DimensionError("probe dimension does not match the kernel");
    }
    if (!probe.allFinite()) throw DomainError("probe contains NaN or Inf");
  }
  std::vector<double> sums(probes.size(), 0.0);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Vector w = sampler(rng);
    for (std::size_t k = 0; k < probes.size(); ++k) sums[k] += std::cos(w.dot(probes[k]));
  }
  std::vector<double> deviations(probes.size());
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const double empirical = sums[k] / static_cast<double>(n_samples);
    deviations[k] = std::abs(empirical - kernel_of_difference(target, probes[k]));
  }
  return deviations;
}

ErrorReport measure_error(const KernelSpec& spec, const RowMatrix& x, const Matrix& exact,
                          Scheme scheme, std::size_t p, SeedRecord seed, NormSelection norms) {
  ErrorReport report;
  report.n = static_cast<std::size_t>(x.rows());
  report.p = p;
  report.kernel = spec.describe();
  report.scheme = scheme;
  report.seed = seed;

  auto t0 = Clock::now();
  const FeatureOperator op = build_operator(spec, scheme, p, seed);
  report.build_ms = elapsed_ms(t0);
  t0 = Clock::now();
  const FeatureMatrix phi = featurize(op, x);
  report.featurize_ms = elapsed_ms(t0);
  t0 = Clock::now();
  const Matrix g = gram_approx(phi);
  report.gram_ms = elapsed_ms(t0);

  check_pair(exact, g);
  const Matrix diff = g - exact;
  if (norms.frobenius) {
    report.rel_frobenius = safe_ratio(diff.norm(), exact.norm(), "Frobenius");
  }
  if (norms.op || norms.nuclear) {
    const SymmetricNorms nd = symmetric_norms(diff);
    const SymmetricNorms nk = symmetric_norms(exact);
    if (norms.op) report.rel_operator = safe_ratio(nd.op, nk.op, "operator");
    if (norms.nuclear) report.rel_nuclear = safe_ratio(nd.nuclear, nk.nuclear, "nuclear");
  }
  return report;
}

SpeedupTable bench_speedup(const KernelSpec& spec, const RowMatrix& x,
                           const std::vector<std::size_t>& p_grid, Scheme scheme,
                           const BenchOptions& options) {
  if (x.rows() == 0) throw ParameterError("bench needs at least one input row");
  if (options.repeats == 0) throw ParameterError("bench needs at least one repeat");
  SpeedupTable table;
  table.kernel = spec.describe();
  table.scheme = scheme;
  table.n = static_cast<std::size_t>(x.rows());
  table.d = static_cast<std::size_t>(x.cols());
  table.repeats = options.repeats;
  table.threads = worker_threads();
  table.includes_build = options.include_build;

  std::vector<double> exact_times;
  Matrix exact;
  for (std::size_t r = 0; r < options.repeats; ++r) {
    const auto t0 = Clock::now();
    exact = kernel_matrix(spec, x);
    exact_times.push_back(elapsed_ms(t0));
  }
  const double exact_ms = median(exact_times);

  for (std::size_t p : p_grid) {
    if (p == 0) throw ParameterError("bench p values must be positive");
    std::vector<double> feature_times;
    std::vector<double> build_times;
    double rel_frob = 0.0;
    for (std::size_t r = 0; r < options.repeats; ++r) {
      auto t0 = Clock::now();
      const FeatureOperator op = build_operator(spec, scheme, p, options.seed);
      build_times.push_back(elapsed_ms(t0));
      t0 = Clock::now();
      const Matrix g = gram_approx(featurize(op, x));
      double t = elapsed_ms(t0);
      if (options.include_build) t += build_times.back();
      feature_times.push_back(t);
      if (r == 0) rel_frob = (g - exact).norm() / exact.norm();
    }
    SpeedupRow row;
    row.p = p;
    row.exact_ms = exact_ms;
    row.feature_ms = median(feature_times);
    row.build_ms = median(build_times);
    row.speedup = exact_ms / row.feature_ms;
    row.rel_frobenius = rel_frob;
    table.rows.push_back(row);
  }
  return table;
}

int worker_threads() noexcept {
#if defined(RFKIT_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rfkit
