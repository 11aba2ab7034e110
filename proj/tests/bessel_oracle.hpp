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

#ifndef CTMIMO_TESTS_BESSEL_ORACLE_HPP_
#define CTMIMO_TESTS_BESSEL_ORACLE_HPP_

// Reference J0 from the ascending series in 100-digit arithmetic; the
// cancellation that limits the double-precision series is irrelevant here.

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ctmimo_test {

inline double bessel_j0_reference(double x) {
  using Big = boost::multiprecision::cpp_bin_float_100;
  const Big q = -Big(x) * Big(x) / 4;
  Big term = 1;
  Big sum = 1;
  const Big tiny("1e-60");
  for (int k = 1; k < 2000; ++k) {
    term *= q / (Big(k) * k);
    sum += term;
    if (abs(term) < tiny && Big(k) * k > abs(q)) break;
  }
  return static_cast<double>(sum);
}

}  // namespace ctmimo_test

#endif  // CTMIMO_TESTS_BESSEL_ORACLE_HPP_
