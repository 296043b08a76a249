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

#include "rfkit/bessel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rfkit/errors.hpp"

namespace rfkit {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;
constexpr double kRescale = 1e250;

// Taylor coefficients of 1/Gamma(z) = sum_k c_k z^k (Abramowitz & Stegun 6.1.34).
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

struct TemmeGammas {
  double gam1;      // (1/G(1-mu) - 1/G(1+mu)) / (2 mu)
  double gam2;      // (1/G(1-mu) + 1/G(1+mu)) / 2
  double inv_plus;  // 1/G(1+mu)
  double inv_minus; // 1/G(1-mu)
};

// 1/Gamma(1 + x) = sum_{k>=1} c_k x^(k-1); the odd and even parts give gam2
// and gam1 without cancellation at small mu.
TemmeGammas temme_gammas(double mu) {
  double gam1 = 0.0;
  double gam2 = 0.0;
  const double mu2 = mu * mu;
  double pw = 1.0;
  for (std::size_t k = 1; k <= kRecipGamma.size(); k += 2) {
    gam2 += kRecipGamma[k - 1] * pw;
    if (k < kRecipGamma.size()) gam1 -= kRecipGamma[k] * pw;
    pw *= mu2;
  }
  return {gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1};
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, returned as log-scale pair
// (value * exp(log_scale)).
struct FractionalPair {
  double k_mu;
  double k_mu1;
  double log_scale;
};

FractionalPair fractional_order(double mu, double x) {
  const double mu2 = mu * mu;
  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.inv_plus;
    double q = 0.5 / (e * g.inv_minus);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i <= kMaxIter; ++i) {
      const double di = i;
      ff = (di * ff + p + q) / (di * di - mu2);
      c *= d / di;
      p /= di - mu;
      q /= di + mu;
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - di * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return {sum, sum1 * 2.0 / x, 0.0};
  }
  // Steed's algorithm for the continued fraction CF2.
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  const double kmu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  return {kmu, kmu * (mu + x + 0.5 - h) / x, -x};
}

void check_domain(double nu, double x) {
  if (!(x > 0.0) || std::isnan(x)) {
    throw DomainError("bessel_k requires x > 0, got " + std::to_string(x));
  }
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw DomainError("bessel_k requires a finite order nu >= 0, got " + std::to_string(nu));
  }
}

}  // namespace

double log_bessel_k(double nu, double x) {
  check_domain(nu, x);
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  FractionalPair fp = fractional_order(mu, x);
  double k_lo = fp.k_mu;
  double k_hi = fp.k_mu1;
  double log_scale = fp.log_scale;
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * (2.0 / x) * k_hi + k_lo;
    k_lo = k_hi;
    k_hi = next;
    if (k_hi > kRescale) {
      k_lo /= kRescale;
      k_hi /= kRescale;
      log_scale += std::log(kRescale);
    }
  }
  return std::log(k_lo) + log_scale;
}

double bessel_k(double nu, double x) { return std::exp(log_bessel_k(nu, x)); }

}  // namespace rfkit
