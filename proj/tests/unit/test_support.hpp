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

#ifndef RFKIT_TESTS_TEST_SUPPORT_HPP_
#define RFKIT_TESTS_TEST_SUPPORT_HPP_

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "rfkit/rng.hpp"

namespace rfkit::testing {

template <typename Draw>
std::vector<double> draws(std::size_t n, RngStream& rng, Draw draw) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw(rng));
  return out;
}

// Integral of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate(f, a, b);
}

// Integral of f over [a, infinity).
inline double integrate_to_infinity(const std::function<double(double)>& f, double a = 0.0) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([&](double x) { return f(x + a); }, 0.0,
                     std::numeric_limits<double>::infinity());
}

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt.
inline double bessel_k_quadrature(double nu, double x) {
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  const double upper = std::acosh(1.0 + 800.0 / x) + 1.0;
  return gk.integrate(
      [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); }, 0.0, upper, 15,
      1e-14);
}

}  // namespace rfkit::testing

#endif  // RFKIT_TESTS_TEST_SUPPORT_HPP_
