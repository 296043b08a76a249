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

#ifndef RFKIT_DISTRIBUTIONS_HPP_
#define RFKIT_DISTRIBUTIONS_HPP_

#include <complex>

#include "rfkit/rng.hpp"

namespace rfkit {

// S(alpha, beta, sigma) with location fixed at zero.
struct StableParams {
  double alpha = 2.0;  // (0, 2]
  double beta = 0.0;   // [-1, 1]
  double sigma = 1.0;  // > 0

  void validate() const;
};

// GBP(alpha, beta, p, q): q * u^(1/p) with u ~ BetaPrime(alpha, beta).
struct GbpParams {
  double alpha = 1.0;
  double beta = 1.0;
  double p = 1.0;
  double q = 1.0;

  void validate() const;
};

double sample_gamma(double shape, RngStream& rng);
double sample_chi(double k, RngStream& rng);
double sample_chi_squared(double k, RngStream& rng);
double sample_beta(double a, double b, RngStream& rng);
double sample_betaprime(double a, double b, RngStream& rng);
double sample_gbp(const GbpParams& params, RngStream& rng);

/// Chambers-Mallows-Stuck sampler for S(alpha, beta, sigma).
///
/// alpha == 1 takes a separate branch. A non-finite draw is resampled
/// once; a second non-finite draw raises NumericalError. Extremely small
/// alpha (below ~0.3) puts mass far out in the tails where double precision
/// rounds coarsely; such draws are still finite but lose relative accuracy.
double sample_stable_cms(const StableParams& params, RngStream& rng);

/// The deterministic CMS transform of V ~ U(-pi/2, pi/2) and W ~ Exp(1).
double stable_cms_transform(const StableParams& params, double v, double w);

/// exp(-|sigma t|^alpha (1 - j beta sgn(t) Phi(t))),
/// Phi = tan(pi alpha / 2) for alpha != 1 and -(2/pi) log|t| at alpha == 1.
std::complex<double> stable_charfn(const StableParams& params, double t);

/// Scale of the one-sided stable mixing law used for exponential-power
/// weights: 2 cos^(2/alpha)(pi alpha / 4).
double exp_power_mixing_scale(double alpha);

/// S(alpha/2, 1, 2 cos^(2/alpha)(pi alpha / 4)); requires alpha in (0, 2).
StableParams exp_power_mixing_law(double alpha);

double chi_cdf(double k, double x);
double chi_squared_cdf(double k, double x);
double betaprime_cdf(double a, double b, double x);
double gbp_cdf(const GbpParams& params, double x);
double gbp_pdf(const GbpParams& params, double x);
double normal_cdf(double x);
double cauchy_cdf(double scale, double x);

}  // namespace rfkit

#endif  // RFKIT_DISTRIBUTIONS_HPP_
