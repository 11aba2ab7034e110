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

#ifndef CTMIMO_NETGEN_HPP_
#define CTMIMO_NETGEN_HPP_

// Multi-cell scenario generation: hexagonal layout, user drops, large-scale
// fading and per-link channel autocorrelation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ctmimo/bessel.hpp"
#include "ctmimo/error.hpp"
#include "ctmimo/random.hpp"

namespace ctmimo {

inline constexpr double kSpeedOfLight = 3.0e8;  // m/s
inline constexpr std::size_t kMaxDropAttempts = 1'000'000;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Powers are linear and normalized to unit receiver noise; gains are
// referenced to the channel at `min_distance` (see pathloss()).
struct ScenarioConfig {
  std::size_t num_cells = 7;
  std::size_t users_per_cell = 30;
  double cell_radius = 1500.0;          // m, centre to vertex
  double min_distance = 10.0;           // m
  double pathloss_exponent = 3.5;
  double carrier_freq = 2.0e9;          // Hz
  double slot_duration = 1.0e-3;        // s
  std::size_t slot_symbols = 200;       // symbols per slot
  double speed_min = 20.0 / 3.6;        // m/s
  double speed_max = 80.0 / 3.6;        // m/s
  double pilot_power = 1.0e8;
  double uplink_power = 1.0e8;
  double shadowing_db = 0.0;            // log-normal std-dev, 0 disables
  std::uint64_t rng_seed = 1;

  void validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("invalid scenario config: " + what); };
    if (num_cells < 1) fail("num_cells must be >= 1");
    if (!(min_distance > 0.0) || !(min_distance < cell_radius)) fail("need 0 < min_distance < cell_radius");
    if (!(pathloss_exponent > 2.0)) fail("pathloss_exponent must be > 2");
    if (slot_symbols < 1) fail("slot_symbols must be >= 1");
    if (!(pilot_power > 0.0) || !(uplink_power > 0.0)) fail("powers must be > 0");
    if (!(speed_min >= 0.0) || !(speed_min <= speed_max)) fail("need 0 <= speed_min <= speed_max");
    if (!(carrier_freq > 0.0) || !(slot_duration > 0.0)) fail("carrier_freq and slot_duration must be > 0");
    if (!(shadowing_db >= 0.0)) fail("shadowing_db must be >= 0");
  }
};

// Base-station sites. Only the single cell and the centre-plus-first-ring
// (7 cells, no wrap-around) layouts are supported; edge cells therefore see
// less inter-cell interference than the centre cell.
inline std::vector<Point2> generate_hex_layout(const ScenarioConfig& config) {
  if (config.num_cells == 1) return {Point2{}};
  if (config.num_cells != 7) {
    throw UnsupportedCellCount("hexagonal layout supports 1 or 7 cells, got " +
                               std::to_string(config.num_cells));
  }
  std::vector<Point2> sites{Point2{}};
  const double ring = std::sqrt(3.0) * config.cell_radius;
  for (int k = 0; k < 6; ++k) {
    const double a = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
    sites.push_back({ring * std::cos(a), ring * std::sin(a)});
  }
  return sites;
}

// Flat-top hexagon of circumradius `radius` centred at the origin.
inline bool inside_hexagon(Point2 p, double radius) {
  const double ax = std::abs(p.x);
  const double ay = std::abs(p.y);
  const double s3 = std::sqrt(3.0);
  return ay <= 0.5 * s3 * radius && s3 * ax + ay <= s3 * radius;
}

struct UserDrop {
  std::size_t num_cells = 0;
  std::size_t users_per_cell = 0;
  std::vector<Point2> positions;  // [cell * K + user]
  std::vector<double> velocity;   // [cell * K + user], m/s
  std::vector<double> angle;      // [(bs * C + cell) * K + user], radians
};

inline UserDrop drop_users(const std::vector<Point2>& layout, const ScenarioConfig& config, Rng& rng) {
  const std::size_t C = layout.size();
  const std::size_t K = config.users_per_cell;
  UserDrop drop;
  drop.num_cells = C;
  drop.users_per_cell = K;
  drop.positions.reserve(C * K);
  const double r = config.cell_radius;
  for (std::size_t b = 0; b < C; ++b) {
    for (std::size_t i = 0; i < K; ++i) {
      std::size_t attempts = 0;
      while (true) {
        if (++attempts > kMaxDropAttempts) {
          throw SamplingFailure("user drop rejection sampling exceeded attempt cap");
        }
        const Point2 offset{rng.uniform(-r, r), rng.uniform(-r, r)};
        if (!inside_hexagon(offset, r)) continue;
        if (std::hypot(offset.x, offset.y) < config.min_distance) continue;
        drop.positions.push_back({layout[b].x + offset.x, layout[b].y + offset.y});
        break;
      }
    }
  }
  drop.velocity.resize(C * K);
  for (auto& v : drop.velocity) v = rng.uniform(config.speed_min, config.speed_max);
  drop.angle.resize(C * C * K);
  for (auto& a : drop.angle) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return drop;
}

// Distance-based gain referenced to min_distance, clamped to 1 inside it.
inline double pathloss(double distance_m, const ScenarioConfig& config) {
  const double d = std::max(distance_m, config.min_distance);
  return std::pow(d / config.min_distance, -config.pathloss_exponent);
}

inline double doppler_shift(double speed, double angle, double carrier_freq) {
  return speed * carrier_freq * std::cos(angle) / kSpeedOfLight;
}

// Per-slot autocorrelation under the Jakes spectrum.
inline double jakes_rho(double doppler_hz, double slot_duration) {
  const double rho = bessel_j0(2.0 * std::numbers::pi * std::abs(doppler_hz) * slot_duration);
  return std::clamp(rho, -1.0, 1.0);
}

// Immutable network ground truth. Link tensors are indexed [bs][cell][user]:
// the gain/correlation from user `user` of cell `cell` towards BS `bs`.
class Scenario {
 public:
  Scenario(ScenarioConfig config, std::vector<Point2> bs_positions, UserDrop drop,
           std::vector<double> beta, std::vector<double> rho)
      : config_(std::move(config)),
        bs_positions_(std::move(bs_positions)),
        drop_(std::move(drop)),
        beta_(std::move(beta)),
        rho_(std::move(rho)) {
    const std::size_t C = bs_positions_.size();
    const std::size_t K = drop_.users_per_cell;
    if (C != config_.num_cells || drop_.num_cells != C || K != config_.users_per_cell ||
        drop_.positions.size() != C * K || drop_.velocity.size() != C * K ||
        drop_.angle.size() != C * C * K || beta_.size() != C * C * K || rho_.size() != C * C * K) {
      throw ConfigError("scenario tensors have inconsistent shapes");
    }
    for (double b : beta_) {
      if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("scenario beta must be finite and > 0");
    }
    for (double r : rho_) {
      if (!(std::abs(r) <= 1.0)) throw ConfigError("scenario rho must satisfy |rho| <= 1");
    }
  }

  const ScenarioConfig& config() const { return config_; }
  std::size_t num_cells() const { return bs_positions_.size(); }
  std::size_t users_per_cell() const { return drop_.users_per_cell; }
  const std::vector<Point2>& bs_positions() const { return bs_positions_; }
  const UserDrop& drop() const { return drop_; }

  Point2 user_position(std::size_t cell, std::size_t user) const {
    return drop_.positions[cell * users_per_cell() + user];
  }
  double velocity(std::size_t cell, std::size_t user) const {
    return drop_.velocity[cell * users_per_cell() + user];
  }
  double angle(std::size_t bs, std::size_t cell, std::size_t user) const {
    return drop_.angle[link_index(bs, cell, user)];
  }
  double beta(std::size_t bs, std::size_t cell, std::size_t user) const {
    return beta_[link_index(bs, cell, user)];
  }
  double rho(std::size_t bs, std::size_t cell, std::size_t user) const {
    return rho_[link_index(bs, cell, user)];
  }
  double serving_rho(std::size_t cell, std::size_t user) const { return rho(cell, cell, user); }

  const std::vector<double>& beta_tensor() const { return beta_; }
  const std::vector<double>& rho_tensor() const { return rho_; }

  std::size_t link_index(std::size_t bs, std::size_t cell, std::size_t user) const {
    return (bs * num_cells() + cell) * users_per_cell() + user;
  }

 private:
  ScenarioConfig config_;
  std::vector<Point2> bs_positions_;
  UserDrop drop_;
  std::vector<double> beta_;
  std::vector<double> rho_;
};

inline Scenario generate_scenario(const ScenarioConfig& config) {
  config.validate();
  auto layout = generate_hex_layout(config);
  Rng rng(config.rng_seed);
  UserDrop drop = drop_users(layout, config, rng);
  const std::size_t C = layout.size();
  const std::size_t K = config.users_per_cell;
  std::vector<double> beta(C * C * K);
  std::vector<double> rho(C * C * K);
  for (std::size_t j = 0; j < C; ++j) {
    for (std::size_t b = 0; b < C; ++b) {
      for (std::size_t i = 0; i < K; ++i) {
        const std::size_t idx = (j * C + b) * K + i;
        beta[idx] = pathloss(distance(layout[j], drop.positions[b * K + i]), config);
        const double f = doppler_shift(drop.velocity[b * K + i], drop.angle[idx], config.carrier_freq);
        rho[idx] = jakes_rho(f, config.slot_duration);
      }
    }
  }
  if (config.shadowing_db > 0.0) {
    // Drawn after everything else so enabling it leaves the geometry unchanged.
    for (auto& b : beta) b *= std::pow(10.0, config.shadowing_db * rng.normal() / 10.0);
  }
  return Scenario(config, std::move(layout), std::move(drop), std::move(beta), std::move(rho));
}

}  // namespace ctmimo

#endif  // CTMIMO_NETGEN_HPP_
