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

#ifndef RFKIT_BESSEL_HPP_
#define RFKIT_BESSEL_HPP_

namespace rfkit {

/// Modified Bessel function of the second kind, K_nu(x), for real nu >= 0
/// and x > 0.
///
/// Uses Temme's series for x < 2 and Steed's continued fraction otherwise,
/// both at a fractional order |mu| <= 1/2, followed by forward recurrence in
/// the order. Relative accuracy is around 1e-14 over nu in [0, 50] and
/// x in (1e-8, 700). Returns +inf where K_nu(x) overflows a double; use
/// log_bessel_k there. Throws DomainError for x <= 0 or nu < 0.
double bessel_k(double nu, double x);

/// log K_nu(x), finite wherever K_nu(x) itself would over- or underflow.
double log_bessel_k(double nu, double x);

}  // namespace rfkit

#endif  // RFKIT_BESSEL_HPP_
