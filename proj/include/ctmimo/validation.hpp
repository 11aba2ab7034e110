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

#ifndef CTMIMO_VALIDATION_HPP_
#define CTMIMO_VALIDATION_HPP_

// Quick self-checks behind `ctmimo validate`: small, seeded versions of the
// library's property tests, cheap enough to run on any machine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ctmimo/bessel.hpp"
#include "ctmimo/channel.hpp"
#include "ctmimo/grouping.hpp"
#include "ctmimo/netgen.hpp"
#include "ctmimo/network_rates.hpp"
#include "ctmimo/random.hpp"
#include "ctmimo/ratebound.hpp"
#include "ctmimo/scheduler.hpp"

namespace ctmimo {

// Synthetic scheduling instance with log-uniform gains, so that interference
// ranges from negligible to dominant. Delays up to `max_delay`.
inline SchedulingInstance random_scheduling_instance(Rng& rng, std::size_t num_groups, std::size_t num_cells,
                                                     std::size_t max_trained, int max_delay = 6,
                                                     TrainingEffect effect = TrainingEffect::kRefreshNumerator) {
  SchedulingInstance inst;
  inst.num_groups = num_groups;
  inst.num_cells = num_cells;
  inst.slot_symbols = static_cast<std::size_t>(rng.uniform_int(std::max<std::int64_t>(20, num_groups), 400));
  inst.max_trained = max_trained;
  inst.effect = effect;
  const auto antennas = static_cast<std::size_t>(rng.uniform_int(8, 256));
  const double power = std::pow(10.0, rng.uniform(1.0, 8.0));
  for (std::size_t g = 0; g < num_groups; ++g) inst.delays.push_back(static_cast<int>(rng.uniform_int(0, max_delay)));
  for (std::size_t g = 0; g < num_groups; ++g) {
    for (std::size_t l = 0; l < num_cells; ++l) {
      inst.weights.push_back(rng.uniform(0.0, 1.0));
      RateBoundInputs in;
      in.antennas = antennas;
      in.slot_symbols = inst.slot_symbols;
      in.serving_cell = l;
      in.pilot_power = power;
      in.uplink_power = power;
      for (std::size_t c = 0; c < num_cells; ++c) {
        const double scale = c == l ? 0.0 : rng.uniform(0.0, 6.0);
        in.beta_row.push_back(std::pow(10.0, -rng.uniform(0.0, 3.0) - scale));
        in.rho_row.push_back(rng.uniform(0.2, 1.0));
      }
      in.beta_others = std::pow(10.0, -rng.uniform(0.0, 4.0)) * static_cast<double>(num_groups);
      inst.inputs.push_back(std::move(in));
    }
  }
  inst.validate();
  return inst;
}

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline CheckResult check_bessel() {
  double worst = 0.0;
  for (double x : {12.0, 12.5, 13.0, 13.5, 14.0}) {
    worst = std::max(worst, std::abs(bessel_j0_series(x) - bessel_j0_asymptotic(x)));
  }
  std::ostringstream os;
  os << "max |series - asymptotic| near switchover = " << worst;
  return {"bessel_j0 switchover continuity", worst < 1e-10, os.str()};
}

inline CheckResult check_mmse_decomposition() {
  Rng rng(11);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> beta(7);
    for (auto& b : beta) b = std::pow(10.0, -rng.uniform(0.0, 8.0));
    const double pp = std::pow(10.0, rng.uniform(0.0, 9.0));
    const auto st = mmse_estimate_variance(beta, pp);
    for (std::size_t c = 0; c < beta.size(); ++c) {
      worst = std::max(worst, std::abs(st[c].est_variance + st[c].err_variance - beta[c]) / beta[c]);
    }
  }
  std::ostringstream os;
  os << "max relative |est + err - beta| = " << worst;
  return {"MMSE variance decomposition", worst < 1e-12, os.str()};
}

inline CheckResult check_kmeans_monotone() {
  Rng rng(12);
  std::size_t bad = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(60);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    const auto model = kmeans_1d(v, 1 + static_cast<std::size_t>(t % 5), rng);
    for (std::size_t i = 1; i < model.objective_history.size(); ++i) {
      if (model.objective_history[i] > model.objective_history[i - 1] * (1.0 + 1e-12) + 1e-15) ++bad;
    }
  }
  return {"k-means objective non-increasing", bad == 0, std::to_string(bad) + " increases"};
}

inline CheckResult check_grouping_partition() {
  ScenarioConfig cfg;
  cfg.users_per_cell = 12;
  cfg.rng_seed = 13;
  const Scenario s = generate_scenario(cfg);
  Rng rng(13);
  const auto groups = form_copilot_groups(s, kmeans_1d(serving_rho_values(s), 3, rng));
  std::vector<int> seen(s.num_cells() * s.users_per_cell(), 0);
  for (const auto& g : groups.members) {
    for (std::size_t c = 0; c < g.size(); ++c) ++seen[c * s.users_per_cell() + g[c]];
  }
  const bool ok = groups.num_groups() == cfg.users_per_cell &&
                  std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
  return {"copilot groups partition users", ok, std::to_string(groups.num_groups()) + " groups"};
}

inline CheckResult check_submodularity() {
  Rng rng(14);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto inst = random_scheduling_instance(rng, 8, 3, 8);
    const ScheduleObjective f(inst);
    for (int k = 0; k < 20; ++k) {
      ScheduleVector x(8), z(8);
      const auto n = static_cast<std::size_t>(rng.uniform_int(0, 7));
      for (std::size_t g = 0; g < 8; ++g) {
        if (g == n) continue;
        const auto r = rng.uniform_int(0, 2);
        if (r >= 1) z.set(g, true);
        if (r == 2) x.set(g, true);
      }
      worst = std::min(worst, marginal_gain(f, x, n) - marginal_gain(f, z, n));
    }
  }
  std::ostringstream os;
  os << "min gain(X) - gain(Z) = " << worst;
  return {"diminishing returns", worst >= -1e-9, os.str()};
}

inline CheckResult check_approximation() {
  Rng rng(15);
  double worst = 1.0;
  const ApproxConfig cfg;
  for (int t = 0; t < 20; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const auto tau = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n)));
    const auto inst = random_scheduling_instance(rng, n, 2, tau);
    const auto opt = brute_force_schedule(inst).objective;
    const auto got = submod_max_cardinality(inst, cfg).objective;
    if (opt > 0.0) worst = std::min(worst, got / opt);
  }
  std::ostringstream os;
  os << "worst achieved/optimum = " << worst << ", required >= " << 1.0 / cfg.guarantee_factor();
  return {"approximation guarantee", worst >= 1.0 / cfg.guarantee_factor(), os.str()};
}

inline CheckResult check_bound_vs_simulation() {
  ScenarioConfig cfg;
  cfg.users_per_cell = 4;
  cfg.rng_seed = 16;
  const Scenario s = generate_scenario(cfg);
  Rng rng(16);
  auto groups = form_copilot_groups(s, kmeans_1d(serving_rho_values(s), 2, rng));
  const std::vector<int> delays = {0, 1, 2, 3};
  const auto bound = sum_rate_lb(s, groups, delays, 2, 32);
  const auto sim = simulate_ergodic_rate(s, groups, delays, 2, 32, 200, 16);
  std::size_t bad = 0;
  for (std::size_t u = 0; u < bound.per_user.size(); ++u) {
    if (bound.per_user[u] > sim.per_user[u].mean + 3.0 * sim.per_user[u].std_error) ++bad;
  }
  return {"bound below simulation", bad == 0, std::to_string(bad) + " of " + std::to_string(bound.per_user.size()) +
                                                  " users above simulated + 3 SE"};
}

}  // namespace detail

inline std::vector<CheckResult> run_validation_suite() {
  std::vector<std::function<CheckResult()>> checks = {
      detail::check_bessel,          detail::check_mmse_decomposition, detail::check_kmeans_monotone,
      detail::check_grouping_partition, detail::check_submodularity,   detail::check_approximation,
      detail::check_bound_vs_simulation,
  };
  std::vector<CheckResult> out;
  for (auto& c : checks) out.push_back(c());
  return out;
}

}  // namespace ctmimo

#endif  // CTMIMO_VALIDATION_HPP_
