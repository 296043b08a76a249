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

#ifndef RFKIT_STATS_HPP_
#define RFKIT_STATS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rfkit {

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 1.0;
  double effective_n = 0.0;

  bool passes(double level) const noexcept { return p_value >= level; }
};

// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

// One-sample KS test against a continuous CDF. Uses Stephens' small-sample
// correction (sqrt(n) + 0.12 + 0.11 / sqrt(n)) D for the p-value.
KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Pearson chi-square goodness-of-fit p-value for observed bin counts against
// equal expected frequencies.
double chi_square_uniform_p_value(std::span<const std::size_t> counts);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);
double quantile(std::vector<double> xs, double q);
double median(std::vector<double> xs);
double pearson_correlation(std::span<const double> a, std::span<const double> b);
// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace rfkit

#endif  // RFKIT_STATS_HPP_
