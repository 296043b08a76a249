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

#include "rfkit/distributions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "rfkit/errors.hpp"

namespace rfkit {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string(name) + " must be a finite positive number, got " +
                         std::to_string(v));
  }
}

}  // namespace

void StableParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw ParameterError("stable alpha must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw ParameterError("stable beta must lie in [-1, 1], got " + std::to_string(beta));
  }
  require_positive(sigma, "stable sigma");
}

void GbpParams::validate() const {
  require_positive(alpha, "GBP alpha");
  require_positive(beta, "GBP beta");
  require_positive(p, "GBP p");
  require_positive(q, "GBP q");
}

// Marsaglia & Tsang (2000). Shapes below one are boosted:
// Gamma(a) = Gamma(a + 1) * U^(1/a).
double sample_gamma(double shape, RngStream& rng) {
  require_positive(shape, "gamma shape");
  if (shape < 1.0) {
    const double g = sample_gamma(shape + 1.0, rng);
    return g * std::pow(rng.uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_chi_squared(double k, RngStream& rng) {
  require_positive(k, "chi-squared degrees of freedom");
  return 2.0 * sample_gamma(0.5 * k, rng);
}

double sample_chi(double k, RngStream& rng) {
  require_positive(k, "chi degrees of freedom");
  return std::sqrt(sample_chi_squared(k, rng));
}

double sample_beta(double a, double b, RngStream& rng) {
  require_positive(a, "beta shape a");
  require_positive(b, "beta shape b");
  const double x = sample_gamma(a, rng);
  const double y = sample_gamma(b, rng);
  return x / (x + y);
}

// Odds Z / (1 - Z) of Z = X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b),
// evaluated as X / Y so that Z close to one does not cancel.
double sample_betaprime(double a, double b, RngStream& rng) {
  require_positive(a, "beta-prime shape a");
  require_positive(b, "beta-prime shape b");
  for (int attempt = 0; attempt < 2; ++attempt) {
    const double x = sample_gamma(a, rng);
    const double y = sample_gamma(b, rng);
    const double r = x / y;
    if (std::isfinite(r)) return r;
  }
  throw NumericalError("beta-prime draw overflowed twice; shape b is too small");
}

double sample_gbp(const GbpParams& params, RngStream& rng) {
  params.validate();
  const double u = sample_betaprime(params.alpha, params.beta, rng);
  return params.q * std::pow(u, 1.0 / params.p);
}

double stable_cms_transform(const StableParams& params, double v, double w) {
  const double alpha = params.alpha;
  const double beta = params.beta;
  const double sigma = params.sigma;
  if (alpha == 1.0) {
    // tan(pi/2) is infinite here, so B and C are undefined; use the
    // alpha = 1 limit of the same construction.
    const double half_pi = 0.5 * kPi;
    const double shifted = half_pi + beta * v;
    const double x =
        (shifted * std::tan(v) - beta * std::log(half_pi * w * std::cos(v) / shifted)) / half_pi;
    return sigma * x + (2.0 / kPi) * beta * sigma * std::log(sigma);
  }
  const double t = beta * std::tan(0.5 * kPi * alpha);
  const double b = std::atan(t) / alpha;
  const double c = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
  const double shifted = alpha * (v + b);
  const double head = std::sin(shifted) / std::pow(std::cos(v), 1.0 / alpha);
  const double tail = std::pow(std::cos(v - shifted) / w, (1.0 - alpha) / alpha);
  return sigma * c * head * tail;
}

double sample_stable_cms(const StableParams& params, RngStream& rng) {
  params.validate();
  for (int attempt = 0; attempt < 2; ++attempt) {
    const double v = kPi * (rng.uniform_open() - 0.5);
    const double w = rng.exponential();
    const double x = stable_cms_transform(params, v, w);
    if (std::isfinite(x)) return x;
  }
  throw NumericalError("stable draw was non-finite twice (alpha = " +
                       std::to_string(params.alpha) + ")");
}

std::complex<double> stable_charfn(const StableParams& params, double t) {
  params.validate();
  if (t == 0.0) return {1.0, 0.0};
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  const double phi = params.alpha == 1.0 ? -(2.0 / kPi) * std::log(std::abs(t))
                                         : std::tan(0.5 * kPi * params.alpha);
  const double mag = std::pow(std::abs(params.sigma * t), params.alpha);
  return std::exp(std::complex<double>(-mag, mag * params.beta * sgn * phi));
}

double exp_power_mixing_scale(double alpha) {
  return 2.0 * std::pow(std::cos(0.25 * kPi * alpha), 2.0 / alpha);
}

StableParams exp_power_mixing_law(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ParameterError("exponential-power mixing law needs alpha in (0, 2), got " +
                         std::to_string(alpha));
  }
  return StableParams{0.5 * alpha, 1.0, exp_power_mixing_scale(alpha)};
}

double chi_squared_cdf(double k, double x) {
  require_positive(k, "chi-squared degrees of freedom");
  if (x <= 0.0) return 0.0;
  if (!std::isfinite(x)) return 1.0;
  return boost::math::gamma_p(0.5 * k, 0.5 * x);
}

double chi_cdf(double k, double x) {
  if (x <= 0.0) return 0.0;
  return chi_squared_cdf(k, x * x);
}

double betaprime_cdf(double a, double b, double x) {
  require_positive(a, "beta-prime shape a");
  require_positive(b, "beta-prime shape b");
  if (x <= 0.0) return 0.0;
  if (!std::isfinite(x)) return 1.0;
  // x / (1 + x) written to stay accurate for large x.
  const double z = x / (1.0 + x);
  const double zc = 1.0 / (1.0 + x);
  return z <= 0.5 ? boost::math::ibeta(a, b, z) : 1.0 - boost::math::ibeta(b, a, zc);
}

double gbp_cdf(const GbpParams& params, double x) {
  params.validate();
  if (x <= 0.0) return 0.0;
  if (!std::isfinite(x)) return 1.0;
  return betaprime_cdf(params.alpha, params.beta, std::pow(x / params.q, params.p));
}

double gbp_pdf(const GbpParams& params, double x) {
  params.validate();
  if (x < 0.0) return 0.0;
  const double r = x / params.q;
  const double log_pdf = std::log(params.p) + (params.alpha * params.p - 1.0) * std::log(r) -
                         std::log(params.q) - std::log(boost::math::beta(params.alpha, params.beta)) -
                         (params.alpha + params.beta) * std::log1p(std::pow(r, params.p));
  return std::exp(log_pdf);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double cauchy_cdf(double scale, double x) {
  require_positive(scale, "Cauchy scale");
  return 0.5 + std::atan(x / scale) / kPi;
}

}  // namespace rfkit
