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

#include <cmath>

#include <gtest/gtest.h>

#include "bessel_oracle.hpp"
#include "ctmimo/bessel.hpp"

namespace {

using ctmimo::bessel_j0;
using ctmimo_test::bessel_j0_reference;

TEST(BesselJ0, TableValues) {
  EXPECT_EQ(bessel_j0(0.0), 1.0);
  EXPECT_NEAR(bessel_j0(1.0), 0.7651976865579666, 1e-15);
  EXPECT_NEAR(bessel_j0(10.0), -0.2459357644513483, 1e-13);  // series cancellation near the switchover
  EXPECT_NEAR(bessel_j0(2.404825557695773), 0.0, 1e-14);
}

TEST(BesselJ0, OracleItselfMatchesTables) {
  EXPECT_NEAR(bessel_j0_reference(1.0), 0.7651976865579666, 1e-16);
  EXPECT_NEAR(bessel_j0_reference(10.0), -0.2459357644513483, 1e-16);
}

TEST(BesselJ0, MatchesHighPrecisionSeriesUpTo50) {
  double worst = 0.0;
  for (double x = 0.0; x <= 50.0; x += 0.0625) {
    worst = std::max(worst, std::abs(bessel_j0(x) - bessel_j0_reference(x)));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(BesselJ0, AgreesWithStandardLibrary) {
  for (double x = 0.0; x <= 50.0; x += 0.37) {
    EXPECT_NEAR(bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-10) << "x = " << x;
  }
}

TEST(BesselJ0, Even) {
  for (double x : {0.3, 2.0, 7.5, 13.0, 13.01, 40.0}) EXPECT_EQ(bessel_j0(-x), bessel_j0(x));
}

TEST(BesselJ0, BranchesAgreeAcrossSwitchover) {
  for (double x = 11.0; x <= 15.0; x += 0.125) {
    EXPECT_NEAR(ctmimo::bessel_j0_series(x), ctmimo::bessel_j0_asymptotic(x), 1e-10) << "x = " << x;
  }
}

TEST(BesselJ0, FortyTermSeriesOnSmallArguments) {
  for (double x = -8.0; x <= 8.0; x += 0.25) {
    long double term = 1, sum = 1;
    const long double q = -0.25L * x * x;
    for (int k = 1; k <= 40; ++k) {
      term *= q / (static_cast<long double>(k) * k);
      sum += term;
    }
    EXPECT_NEAR(bessel_j0(x), static_cast<double>(sum), 1e-10) << "x = " << x;
  }
}

}  // namespace
