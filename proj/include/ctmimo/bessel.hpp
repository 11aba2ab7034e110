// Copyright 2026 The ctmimo Authors.
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

#ifndef CTMIMO_BESSEL_HPP_
#define CTMIMO_BESSEL_HPP_

#include <cmath>
#include <numbers>

namespace ctmimo {

// Above this argument the Hankel expansion is used; below it the
// ascending power series. At 13 the series loses at most ~eps * I0(13)
// to cancellation and the optimally truncated asymptotic tail is below
// e^{-26}, so both branches stay well inside 1e-10.
inline constexpr double kBesselJ0Switchover = 13.0;

// Ascending series sum_k (-x^2/4)^k / (k!)^2.
inline double bessel_j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18) break;  // |J0| <= 1, so absolute cut-off
  }
  return sum;
}

// Hankel asymptotic expansion
//   J0(x) ~ sqrt(2 / (pi x)) (P(x) cos(x - pi/4) - Q(x) sin(x - pi/4)),
// truncated at the smallest term. Requires x > 0.
inline double bessel_j0_asymptotic(double x) {
  x = std::abs(x);
  const double eight_x = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev_mag = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (-(odd * odd)) / (k * eight_x);
    const double mag = std::abs(next);
    if (mag >= prev_mag) break;  // divergent tail
    term = next;
    prev_mag = mag;
    // t_k enters P for even k and Q for odd k with alternating signs.
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (mag < 1e-18) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Zeroth-order Bessel function of the first kind.
inline double bessel_j0(double x) {
  const double ax = std::abs(x);
  if (ax <= kBesselJ0Switchover) return bessel_j0_series(ax);
  return bessel_j0_asymptotic(ax);
}

}  // namespace ctmimo

#endif  // CTMIMO_BESSEL_HPP_
