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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include <gtest/gtest.h>

#include "bessel_oracle.hpp"
#include "ctmimo/netgen.hpp"
#include "ctmimo/scenario_io.hpp"

namespace {

using namespace ctmimo;

ScenarioConfig small_config(std::size_t cells, std::size_t users, std::uint64_t seed) {
  ScenarioConfig c;
  c.num_cells = cells;
  c.users_per_cell = users;
  c.rng_seed = seed;
  return c;
}

TEST(HexLayout, SingleCellAtOrigin) {
  const auto sites = generate_hex_layout(small_config(1, 1, 1));
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0].x, 0.0);
  EXPECT_EQ(sites[0].y, 0.0);
}

TEST(HexLayout, SevenCellRing) {
  const auto sites = generate_hex_layout(small_config(7, 1, 1));
  ASSERT_EQ(sites.size(), 7u);
  for (std::size_t k = 1; k < 7; ++k) {
    EXPECT_NEAR(distance(sites[0], sites[k]), 2598.0762113533160, 1e-9);
    const std::size_t next = k == 6 ? 1 : k + 1;
    // Neighbouring ring sites are also one inter-site distance apart.
    EXPECT_NEAR(distance(sites[k], sites[next]), std::sqrt(3.0) * 1500.0, 1e-9);
  }
}

TEST(HexLayout, RingCellsDoNotOverlapCentre) {
  const auto sites = generate_hex_layout(small_config(7, 1, 1));
  Rng rng(5);
  for (int t = 0; t < 20000; ++t) {
    const Point2 p{rng.uniform(-1500, 1500), rng.uniform(-1500, 1500)};
    if (!inside_hexagon(p, 0.999 * 1500.0)) continue;
    for (std::size_t k = 1; k < 7; ++k) {
      EXPECT_FALSE(inside_hexagon({p.x + sites[k].x, p.y + sites[k].y}, 1500.0));
    }
  }
}

TEST(HexLayout, RejectsOtherCellCounts) {
  for (std::size_t c : {2u, 3u, 4u, 19u}) {
    EXPECT_THROW(generate_hex_layout(small_config(c, 1, 1)), UnsupportedCellCount);
  }
}

TEST(DropUsers, EmptyWhenNoUsers) {
  auto cfg = small_config(7, 0, 1);
  Rng rng(1);
  const auto drop = drop_users(generate_hex_layout(cfg), cfg, rng);
  EXPECT_TRUE(drop.positions.empty());
  EXPECT_TRUE(drop.velocity.empty());
  EXPECT_TRUE(drop.angle.empty());
}

TEST(DropUsers, Deterministic) {
  auto cfg = small_config(7, 5, 1);
  const auto layout = generate_hex_layout(cfg);
  Rng a(99), b(99);
  const auto da = drop_users(layout, cfg, a);
  const auto db = drop_users(layout, cfg, b);
  for (std::size_t i = 0; i < da.positions.size(); ++i) {
    EXPECT_EQ(da.positions[i].x, db.positions[i].x);
    EXPECT_EQ(da.positions[i].y, db.positions[i].y);
  }
  EXPECT_EQ(da.velocity, db.velocity);
  EXPECT_EQ(da.angle, db.angle);
}

TEST(DropUsers, UniformOverHexagonOutsideMinDistance) {
  auto cfg = small_config(1, 10000, 1);
  Rng rng(2024);
  const auto drop = drop_users(generate_hex_layout(cfg), cfg, rng);
  double min_d = 1e300;
  std::size_t inner = 0;
  for (const auto& p : drop.positions) {
    const double d = std::hypot(p.x, p.y);
    min_d = std::min(min_d, d);
    if (d < 750.0) ++inner;
    EXPECT_TRUE(inside_hexagon(p, 1500.0));
  }
  EXPECT_GE(min_d, cfg.min_distance);
  const double r0 = cfg.min_distance;
  const double hex_area = 1.5 * std::sqrt(3.0) * 1500.0 * 1500.0;
  const double p = (std::numbers::pi * (750.0 * 750.0 - r0 * r0)) / (hex_area - std::numbers::pi * r0 * r0);
  const double n = static_cast<double>(drop.positions.size());
  const double sigma = std::sqrt(p * (1 - p) / n);
  EXPECT_NEAR(static_cast<double>(inner) / n, p, 4 * sigma);
}

TEST(DropUsers, SpeedsAndAnglesInRange) {
  auto cfg = small_config(7, 50, 1);
  Rng rng(3);
  const auto drop = drop_users(generate_hex_layout(cfg), cfg, rng);
  for (double v : drop.velocity) {
    EXPECT_GE(v, cfg.speed_min);
    EXPECT_LE(v, cfg.speed_max);
  }
  for (double a : drop.angle) {
    EXPECT_GE(a, 0.0);
    EXPECT_LT(a, 2 * std::numbers::pi);
  }
}

TEST(Pathloss, ReferenceAndClamp) {
  const ScenarioConfig cfg;
  EXPECT_EQ(pathloss(cfg.min_distance, cfg), 1.0);
  EXPECT_EQ(pathloss(0.0, cfg), 1.0);
  EXPECT_NEAR(pathloss(2 * cfg.min_distance, cfg), 0.08838834764831845, 1e-15);
}

TEST(Pathloss, NonIncreasingAndInUnitInterval) {
  const ScenarioConfig cfg;
  double prev = 1.0;
  for (double d = 0.0; d < 5000.0; d += 3.7) {
    const double b = pathloss(d, cfg);
    EXPECT_LE(b, prev);
    EXPECT_GT(b, 0.0);
    EXPECT_LE(b, 1.0);
    prev = b;
  }
}

TEST(Doppler, Examples) {
  EXPECT_NEAR(doppler_shift(30.0, std::numbers::pi / 2, 2e9), 0.0, 1e-12);
  EXPECT_NEAR(doppler_shift(30.0, 0.0, 2e9), 200.0, 1e-12);
  EXPECT_EQ(doppler_shift(0.0, 1.0, 2e9), 0.0);
}

TEST(Jakes, Examples) {
  EXPECT_EQ(jakes_rho(0.0, 1e-3), 1.0);
  const double T = 1e-3;
  const double f_zero = 2.404825557695773 / (2 * std::numbers::pi * T);
  EXPECT_NEAR(jakes_rho(f_zero, T), 0.0, 1e-9);
  const double f = doppler_shift(20.0 / 3.6, 0.0, 2e9);
  EXPECT_NEAR(f, 37.037, 1e-3);
  EXPECT_NEAR(jakes_rho(f, T), ctmimo_test::bessel_j0_reference(2 * std::numbers::pi * f * T), 1e-12);
  EXPECT_NEAR(jakes_rho(f, T), 0.986507, 1e-6);  // 1 - x^2/4 + x^4/64 at x = 0.23271
}

TEST(Jakes, RangeAndSymmetry) {
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    const double f = rng.uniform(-5000, 5000);
    const double T = rng.uniform(1e-5, 1e-2);
    const double r = jakes_rho(f, T);
    EXPECT_GE(r, -1.0);
    EXPECT_LE(r, 1.0);
    EXPECT_EQ(r, jakes_rho(-f, T));
  }
}

TEST(Scenario, InvariantsHold) {
  const auto s = generate_scenario(small_config(7, 12, 17));
  const auto& cfg = s.config();
  for (std::size_t j = 0; j < 7; ++j) {
    for (std::size_t b = 0; b < 7; ++b) {
      for (std::size_t i = 0; i < 12; ++i) {
        const double beta = s.beta(j, b, i);
        EXPECT_GT(beta, 0.0);
        EXPECT_LE(beta, 1.0);
        EXPECT_NEAR(beta, pathloss(distance(s.bs_positions()[j], s.user_position(b, i)), cfg), 1e-15);
        const double f = doppler_shift(s.velocity(b, i), s.angle(j, b, i), cfg.carrier_freq);
        EXPECT_NEAR(s.rho(j, b, i), jakes_rho(f, cfg.slot_duration), 1e-12);
        EXPECT_LE(std::abs(s.rho(j, b, i)), 1.0);
      }
    }
  }
  for (std::size_t b = 0; b < 7; ++b) {
    for (std::size_t i = 0; i < 12; ++i) {
      EXPECT_GE(distance(s.bs_positions()[b], s.user_position(b, i)), cfg.min_distance);
    }
  }
}

TEST(Scenario, Deterministic) {
  const auto a = generate_scenario(small_config(7, 6, 8));
  const auto b = generate_scenario(small_config(7, 6, 8));
  EXPECT_EQ(a.beta_tensor(), b.beta_tensor());
  EXPECT_EQ(a.rho_tensor(), b.rho_tensor());
  EXPECT_EQ(a.drop().angle, b.drop().angle);
  const auto c = generate_scenario(small_config(7, 6, 9));
  EXPECT_NE(a.beta_tensor(), c.beta_tensor());
}

TEST(Scenario, ShadowingLeavesGeometryAlone) {
  auto cfg = small_config(7, 6, 8);
  const auto plain = generate_scenario(cfg);
  cfg.shadowing_db = 8.0;
  const auto shadowed = generate_scenario(cfg);
  EXPECT_EQ(plain.rho_tensor(), shadowed.rho_tensor());
  EXPECT_NE(plain.beta_tensor(), shadowed.beta_tensor());
}

TEST(Scenario, ConfigValidation) {
  auto cfg = small_config(7, 3, 1);
  cfg.min_distance = 2000.0;
  EXPECT_THROW(generate_scenario(cfg), ConfigError);
  cfg = small_config(7, 3, 1);
  cfg.pathloss_exponent = 2.0;
  EXPECT_THROW(generate_scenario(cfg), ConfigError);
  cfg = small_config(7, 3, 1);
  cfg.speed_min = 30.0;
  cfg.speed_max = 10.0;
  EXPECT_THROW(generate_scenario(cfg), ConfigError);
  cfg = small_config(7, 3, 1);
  cfg.pilot_power = 0.0;
  EXPECT_THROW(generate_scenario(cfg), ConfigError);
}

TEST(ScenarioBundle, RoundTripIsBitwise) {
  auto cfg = small_config(7, 4, 21);
  cfg.shadowing_db = 6.0;
  const auto s = generate_scenario(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "ctmimo_bundle_test";
  std::filesystem::remove_all(dir);
  write_scenario_bundle(s, dir);
  const auto r = read_scenario_bundle(dir);
  EXPECT_EQ(r.beta_tensor(), s.beta_tensor());
  EXPECT_EQ(r.rho_tensor(), s.rho_tensor());
  EXPECT_EQ(r.drop().angle, s.drop().angle);
  EXPECT_EQ(r.drop().velocity, s.drop().velocity);
  EXPECT_EQ(r.config().rng_seed, s.config().rng_seed);
  EXPECT_EQ(r.config().shadowing_db, 6.0);
  for (std::size_t k = 0; k < 7; ++k) EXPECT_EQ(r.bs_positions()[k].x, s.bs_positions()[k].x);
  std::filesystem::remove_all(dir);
}

TEST(ScenarioBundle, MissingFileIsIoError) {
  EXPECT_THROW(read_scenario_bundle("/nonexistent/ctmimo"), IoError);
}

}  // namespace
