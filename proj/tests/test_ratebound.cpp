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
#include <limits>

#include <gtest/gtest.h>

#include "ctmimo/network_rates.hpp"
#include "ctmimo/ratebound.hpp"
#include "test_helpers.hpp"

namespace {

using namespace ctmimo;

// Direct long-double transcription of the per-user bound, written
// independently of the library's term-by-term helpers.
double bound_oracle(const RateBoundInputs& in) {
  using L = long double;
  const std::size_t C = in.beta_row.size();
  const std::size_t l = in.serving_cell;
  L D = 1.0L / in.pilot_power;
  for (double b : in.beta_row) D += b;
  auto r2d = [&](std::size_t c) { return std::pow(static_cast<L>(in.rho_row[c]) * in.rho_row[c], in.delay); };
  L ip = 0, resid = 0;
  for (std::size_t c = 0; c < C; ++c) {
    const L b = in.beta_row[c];
    if (c != l) ip += r2d(c) * b * b;
    resid += b - r2d(c) * b * b / D;
  }
  const L in_n = (in.beta_others + resid + 1.0L / in.uplink_power) * D;
  const L m1 = static_cast<L>(in.antennas) - 1;
  const L bl = in.beta_row[l];
  const L sinr = m1 * bl * bl * r2d(l) / (m1 * ip + in_n);
  const L pre = 1.0L - static_cast<L>(in.trained_groups) / in.slot_symbols;
  return static_cast<double>(pre * std::log2(1.0L + sinr));
}

RateBoundInputs unit_single_cell() {
  RateBoundInputs in;
  in.antennas = 101;
  in.slot_symbols = 200;
  in.trained_groups = 15;
  in.delay = 0;
  in.serving_cell = 0;
  in.beta_row = {1.0};
  in.rho_row = {1.0};
  in.beta_others = 0.0;
  in.pilot_power = 1.0;
  in.uplink_power = 1.0;
  return in;
}

RateBoundInputs random_inputs(Rng& rng) {
  RateBoundInputs in;
  const auto C = static_cast<std::size_t>(rng.uniform_int(1, 7));
  in.antennas = static_cast<std::size_t>(rng.uniform_int(2, 500));
  in.slot_symbols = static_cast<std::size_t>(rng.uniform_int(1, 400));
  in.trained_groups = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(in.slot_symbols)));
  in.delay = static_cast<int>(rng.uniform_int(0, 8));
  in.serving_cell = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(C) - 1));
  for (std::size_t c = 0; c < C; ++c) {
    in.beta_row.push_back(std::pow(10.0, -rng.uniform(0, 8)));
    in.rho_row.push_back(rng.uniform(-1.0, 1.0));
  }
  in.beta_others = rng.uniform(0, 2) * std::pow(10.0, -rng.uniform(0, 6));
  in.pilot_power = std::pow(10.0, rng.uniform(-1, 10));
  in.uplink_power = std::pow(10.0, rng.uniform(-1, 10));
  return in;
}

TEST(PilotInterference, Examples) {
  RateBoundInputs in = unit_single_cell();
  EXPECT_EQ(pilot_interference(in), 0.0);
  in.beta_row = {1.0, 0.1};
  in.rho_row = {1.0, 0.9};
  in.delay = 1;
  EXPECT_NEAR(pilot_interference(in), 0.0081, 1e-15);
  in.delay = 2000;
  EXPECT_LT(pilot_interference(in), 1e-100);
}

TEST(NoiseInterference, Examples) {
  RateBoundInputs in = unit_single_cell();
  EXPECT_DOUBLE_EQ(noise_interference(in), 3.0);
  in.pilot_power = in.uplink_power = 1e15;
  EXPECT_NEAR(noise_interference(in), 0.0, 1e-12);
  in = unit_single_cell();
  in.rho_row = {0.8};
  double prev = 0.0;
  for (int d = 0; d < 10; ++d) {
    in.delay = d;
    EXPECT_GE(noise_interference(in), prev);
    prev = noise_interference(in);
  }
}

TEST(UserRate, Examples) {
  RateBoundInputs in = unit_single_cell();
  // (M - 1) beta^2 = 100 over I^n = 3; no extra estimate-variance factor.
  EXPECT_NEAR(user_rate_lb(in), 0.925 * std::log2(1.0 + 100.0 / 3.0), 1e-13);
  EXPECT_NEAR(user_rate_lb(in), 4.7189, 1e-4);
  in.antennas = 1;
  EXPECT_EQ(user_rate_lb(in), 0.0);
  in = unit_single_cell();
  in.trained_groups = in.slot_symbols;
  EXPECT_EQ(user_rate_lb(in), 0.0);
}

TEST(UserRate, MatchesIndependentOracle) {
  Rng rng(1);
  for (int t = 0; t < 5000; ++t) {
    const auto in = random_inputs(rng);
    const double want = bound_oracle(in);
    EXPECT_NEAR(user_rate_lb(in), want, 1e-11 * std::max(1.0, want));
  }
}

TEST(UserRate, FiniteAndNonNegative) {
  Rng rng(2);
  for (int t = 0; t < 2000; ++t) {
    const double r = user_rate_lb(random_inputs(rng));
    EXPECT_TRUE(std::isfinite(r));
    EXPECT_GE(r, 0.0);
  }
}

TEST(UserRate, SingleCellNonIncreasingInDelay) {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    RateBoundInputs in = random_inputs(rng);
    in.beta_row = {in.beta_row[0]};
    in.rho_row = {in.rho_row[0]};
    in.serving_cell = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (int d = 0; d < 12; ++d) {
      in.delay = d;
      const double r = user_rate_lb(in);
      EXPECT_LE(r, prev + 1e-15);
      prev = r;
    }
  }
}

TEST(UserRate, RejectsInvalidInputs) {
  RateBoundInputs in = unit_single_cell();
  in.beta_row = {0.0};
  EXPECT_THROW(user_rate_lb(in), ConfigError);
  in = unit_single_cell();
  in.rho_row = {1.2};
  EXPECT_THROW(user_rate_lb(in), ConfigError);
  in = unit_single_cell();
  in.trained_groups = 201;
  EXPECT_THROW(user_rate_lb(in), ConfigError);
  in = unit_single_cell();
  in.delay = -1;
  EXPECT_THROW(user_rate_lb(in), ConfigError);
}

TEST(ReferenceRate, DefinitionAndEdges) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    RateBoundInputs in = random_inputs(rng);
    const auto ng = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(in.slot_symbols)));
    RateBoundInputs direct = in;
    direct.delay = 0;
    direct.trained_groups = ng;
    EXPECT_EQ(reference_rate(in, ng), user_rate_lb(direct));
  }
  RateBoundInputs in = unit_single_cell();
  EXPECT_EQ(reference_rate(in, in.slot_symbols), 0.0);
  EXPECT_THROW(reference_rate(in, in.slot_symbols + 1), InvalidRegime);
}

TEST(ReferenceRate, LargeArrayLimit) {
  RateBoundInputs in = unit_single_cell();
  in.beta_row = {0.9, 0.2, 0.05};
  in.rho_row = {0.99, 0.95, 0.9};
  in.beta_others = 3.0;
  in.antennas = 2'000'000'000;
  const double lim = asymptotic_reference_rate(in.beta_row, 0, 30, 200);
  EXPECT_NEAR(reference_rate(in, 30), lim, 1e-6 * lim);
  EXPECT_NEAR(lim, (1.0 - 30.0 / 200.0) * std::log2(1.0 + asymptotic_sinr(in.beta_row, 0)), 1e-14);
  in.delay = 4;
  in.trained_groups = 15;
  const double out = asymptotic_outdated_rate(in.beta_row, in.rho_row, 0, 4, 15, 200);
  EXPECT_NEAR(user_rate_lb(in), out, 1e-6 * out);
}

TEST(AsymptoticSinr, Examples) {
  EXPECT_DOUBLE_EQ(asymptotic_sinr({0.3, 0.3}, 0), 1.0);
  EXPECT_TRUE(std::isinf(asymptotic_sinr({0.3}, 0)));
  EXPECT_DOUBLE_EQ(asymptotic_sinr({1.0, 0.5}, 0), 4.0);
}

AsymptoticInputs asym(std::vector<double> beta, double rmin, double rmax, std::size_t ng, std::size_t tau, int d) {
  AsymptoticInputs a;
  a.beta_row = std::move(beta);
  a.rho_min = rmin;
  a.rho_max = rmax;
  a.num_groups = ng;
  a.trained_groups = tau;
  a.slot_symbols = 200;
  a.delay = d;
  return a;
}

TEST(ImprovementCondition, FreshCsiAlwaysHolds) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto ng = static_cast<std::size_t>(rng.uniform_int(2, 199));
    const auto tau = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(ng) - 1));
    const auto r = improvement_condition(asym({rng.uniform(0.1, 1), rng.uniform(0.1, 1)}, 0.3, 0.9, ng, tau, 0));
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.lhs, 1.0);
    EXPECT_LT(r.rhs, 1.0);
  }
}

TEST(ImprovementCondition, HomogeneousGroupHolds) {
  for (int d : {0, 1, 5, 50}) EXPECT_TRUE(improvement_condition(asym({1.0, 0.7}, 0.8, 0.8, 30, 15, d)).holds);
}

TEST(ImprovementCondition, HandEvaluatedExample) {
  const double ratio = 0.8;
  const double rmax = 0.9;
  const double rmin = rmax * std::sqrt(ratio);
  const double rhs = std::pow(2.0, 170.0 / 185.0) - 1.0;
  EXPECT_NEAR(rhs, 0.8906, 1e-4);
  for (int d = 0; d < 4; ++d) {
    const auto r = improvement_condition(asym({1.0, 1.0}, rmin, rmax, 30, 15, d));
    EXPECT_NEAR(r.rhs, rhs, 1e-14);
    EXPECT_NEAR(r.lhs, std::pow(ratio, d), 1e-14);
    EXPECT_EQ(r.holds, d == 0) << "d = " << d;
    EXPECT_NEAR(r.margin, r.lhs - r.rhs, 1e-15);
  }
}

TEST(ImprovementCondition, ContaminationFreeUsesLimit) {
  const auto r = improvement_condition(asym({1.0}, 0.5, 0.9, 30, 15, 3));
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.holds);
}

TEST(ImprovementCondition, ScaleInvariant) {
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> beta(4);
    for (auto& b : beta) b = rng.uniform(0.01, 1.0);
    auto scaled = beta;
    for (auto& b : scaled) b *= 2.0;
    const auto a = improvement_condition(asym(beta, 0.6, 0.95, 30, 10, 2));
    const auto b = improvement_condition(asym(scaled, 0.6, 0.95, 30, 10, 2));
    EXPECT_NEAR(a.rhs, b.rhs, 1e-14);
    EXPECT_EQ(a.holds, b.holds);
  }
}

TEST(ImprovementCondition, InvalidRegime) {
  EXPECT_THROW(improvement_condition(asym({1.0, 0.5}, 0.5, 0.9, 30, 30, 1)), InvalidRegime);
  EXPECT_THROW(improvement_condition(asym({1.0, 0.5}, 0.5, 0.9, 200, 15, 1)), InvalidRegime);
  EXPECT_THROW(improvement_condition(asym({1.0, 0.5}, 0.0, 0.9, 30, 15, 1)), ConfigError);
  EXPECT_THROW(improvement_condition(asym({1.0, 0.5}, 0.95, 0.9, 30, 15, 1)), ConfigError);
}

TEST(SumRate, SingletonAndTotals) {
  using ctmimo_test::config;
  const auto s1 = generate_scenario(config(1, 1, 3));
  const auto g1 = ctmimo_test::grouped(s1, 1);
  const auto sr = sum_rate_lb(s1, g1, {2}, 1, 64);
  EXPECT_EQ(sr.total, user_rate_lb(make_rate_inputs(s1, g1, 0, 0, 2, 1, 64)));

  const auto s = generate_scenario(config(7, 6, 4));
  const auto g = ctmimo_test::grouped(s);
  const auto all = sum_rate_lb(s, g, {0, 1, 2, 0, 1, 2}, 3, 64);
  double max_term = 0.0, sum = 0.0;
  for (double r : all.per_user) {
    max_term = std::max(max_term, r);
    sum += r;
  }
  EXPECT_GE(all.total, max_term);
  EXPECT_NEAR(all.total, sum, 1e-12);
  EXPECT_THROW(sum_rate_lb(s, g, {0, 1}, 3, 64), ConfigError);

  CopilotGroups none;
  EXPECT_EQ(sum_rate_lb(s, none, {}, 0, 64).total, 0.0);
}

TEST(SumRate, RateInputsCoverAllOtherUsers) {
  using ctmimo_test::config;
  const auto s = generate_scenario(config(7, 4, 5));
  const auto g = ctmimo_test::grouped(s);
  for (std::size_t l = 0; l < 7; ++l) {
    double total = 0.0;
    for (std::size_t b = 0; b < 7; ++b) {
      for (std::size_t i = 0; i < 4; ++i) total += s.beta(l, b, i);
    }
    for (std::size_t k = 0; k < 4; ++k) {
      const auto in = make_rate_inputs(s, g, k, l, 0, 1, 8);
      double own = 0.0;
      for (double b : in.beta_row) own += b;
      EXPECT_NEAR(in.beta_others + own, total, 1e-12 * total);
    }
  }
}

}  // namespace
