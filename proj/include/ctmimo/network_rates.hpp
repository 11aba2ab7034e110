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

#ifndef CTMIMO_NETWORK_RATES_HPP_
#define CTMIMO_NETWORK_RATES_HPP_

// Glue between a Scenario + CopilotGroups and the per-user closed-form bound.

#include <cstddef>
#include <vector>

#include "ctmimo/grouping.hpp"
#include "ctmimo/netgen.hpp"
#include "ctmimo/ratebound.hpp"

namespace ctmimo {

// Bound inputs for the member of `group` in cell `cell`, seen from its
// serving BS. Every other grouped user contributes to beta_others.
inline RateBoundInputs make_rate_inputs(const Scenario& scenario, const CopilotGroups& groups, std::size_t group,
                                        std::size_t cell, int delay, std::size_t trained_groups,
                                        std::size_t antennas) {
  const std::size_t C = scenario.num_cells();
  RateBoundInputs in;
  in.antennas = antennas;
  in.slot_symbols = scenario.config().slot_symbols;
  in.trained_groups = trained_groups;
  in.delay = delay;
  in.serving_cell = cell;
  in.pilot_power = scenario.config().pilot_power;
  in.uplink_power = scenario.config().uplink_power;
  in.beta_row.resize(C);
  in.rho_row.resize(C);
  for (std::size_t c = 0; c < C; ++c) {
    in.beta_row[c] = scenario.beta(cell, c, groups.user(group, c));
    in.rho_row[c] = scenario.rho(cell, c, groups.user(group, c));
  }
  double others = 0.0;
  for (std::size_t k = 0; k < groups.num_groups(); ++k) {
    if (k == group) continue;
    for (std::size_t c = 0; c < C; ++c) others += scenario.beta(cell, c, groups.user(k, c));
  }
  in.beta_others = others;
  return in;
}

struct SumRate {
  double total = 0.0;
  std::vector<double> per_user;  // [group * C + cell]
};

// Bound for every grouped user at the delays in `delays` (one per group).
inline SumRate sum_rate_lb(const Scenario& scenario, const CopilotGroups& groups, const std::vector<int>& delays,
                           std::size_t trained_groups, std::size_t antennas) {
  if (delays.size() != groups.num_groups()) throw ConfigError("sum_rate_lb: one delay per group required");
  const std::size_t C = scenario.num_cells();
  SumRate out;
  out.per_user.resize(groups.num_groups() * C);
  for (std::size_t g = 0; g < groups.num_groups(); ++g) {
    for (std::size_t l = 0; l < C; ++l) {
      const double r = user_rate_lb(make_rate_inputs(scenario, groups, g, l, delays[g], trained_groups, antennas));
      out.per_user[g * C + l] = r;
      out.total += r;
    }
  }
  return out;
}

// Reference-scheme rates: every group trained each slot, zero delay.
inline SumRate reference_sum_rate(const Scenario& scenario, const CopilotGroups& groups, std::size_t antennas) {
  const std::size_t C = scenario.num_cells();
  SumRate out;
  out.per_user.resize(groups.num_groups() * C);
  for (std::size_t g = 0; g < groups.num_groups(); ++g) {
    for (std::size_t l = 0; l < C; ++l) {
      const double r =
          reference_rate(make_rate_inputs(scenario, groups, g, l, 0, groups.num_groups(), antennas), groups.num_groups());
      out.per_user[g * C + l] = r;
      out.total += r;
    }
  }
  return out;
}

}  // namespace ctmimo

#endif  // CTMIMO_NETWORK_RATES_HPP_
