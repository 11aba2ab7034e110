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

#ifndef CTMIMO_RATEBOUND_HPP_
#define CTMIMO_RATEBOUND_HPP_

// Closed-form achievable-rate lower bound with outdated CSI under
// matched-filter reception, its large-array limits, and the condition under
// which reusing outdated CSI beats training every group every slot.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ctmimo/error.hpp"

namespace ctmimo {

// Everything the per-user bound needs for user `serving_cell` of one copilot
// group, seen from its serving BS. Rows are indexed by cell.
struct RateBoundInputs {
  std::size_t antennas = 100;           // M
  std::size_t slot_symbols = 200;       // T_s
  std::size_t trained_groups = 1;       // tau, groups trained this slot
  int delay = 0;                        // d_g, slots since the group last trained
  std::size_t serving_cell = 0;         // l
  std::vector<double> beta_row;         // beta^{[l]}_{g,c}
  std::vector<double> rho_row;          // rho^{[l]}_{g,c}
  double beta_others = 0.0;             // sum_{k != g} sum_c beta^{[l]}_{k,c}
  double pilot_power = 1.0;             // P_p
  double uplink_power = 1.0;            // P_u

  void validate() const {
    auto fail = [](const std::string& w) { throw ConfigError("invalid rate-bound inputs: " + w); };
    if (beta_row.empty() || beta_row.size() != rho_row.size()) fail("beta/rho rows must be non-empty and equal length");
    if (serving_cell >= beta_row.size()) fail("serving cell out of range");
    if (antennas < 1) fail("antennas must be >= 1");
    if (slot_symbols < 1) fail("slot_symbols must be >= 1");
    if (trained_groups > slot_symbols) fail("trained groups exceed slot symbols");
    if (delay < 0) fail("delay must be >= 0");
    for (double b : beta_row) if (!(b > 0.0)) fail("beta must be > 0");
    for (double r : rho_row) if (!(std::abs(r) <= 1.0)) fail("|rho| must be <= 1");
    if (!(beta_others >= 0.0)) fail("beta_others must be >= 0");
    if (!(pilot_power > 0.0) || !(uplink_power > 0.0)) fail("powers must be > 0");
  }
};

// rho^{2d}; the d = 0 case is exactly 1 even for rho = 0.
inline double aged_power(double rho, int delay) {
  return delay == 0 ? 1.0 : std::pow(rho * rho, delay);
}

// 1/P_p + sum_b beta_{g,b}: per-entry power of the shared pilot observation.
inline double pilot_observation_power(const RateBoundInputs& in) {
  double s = 1.0 / in.pilot_power;
  for (double b : in.beta_row) s += b;
  return s;
}

inline double pilot_interference(const RateBoundInputs& in) {
  double sum = 0.0;
  for (std::size_t c = 0; c < in.beta_row.size(); ++c) {
    if (c == in.serving_cell) continue;
    sum += aged_power(in.rho_row[c], in.delay) * in.beta_row[c] * in.beta_row[c];
  }
  return sum;
}

inline double noise_interference(const RateBoundInputs& in) {
  const double obs = pilot_observation_power(in);
  double residual = 0.0;
  for (std::size_t c = 0; c < in.beta_row.size(); ++c) {
    const double b = in.beta_row[c];
    residual += b - aged_power(in.rho_row[c], in.delay) * b * b / obs;
  }
  return (in.beta_others + residual + 1.0 / in.uplink_power) * obs;
}

// Effective SINR inside the log of the bound (no training prefactor).
inline double sinr_lower_bound(const RateBoundInputs& in) {
  if (in.antennas < 2) return 0.0;
  const double m1 = static_cast<double>(in.antennas - 1);
  const double own = in.beta_row[in.serving_cell];
  const double num = m1 * own * own * aged_power(in.rho_row[in.serving_cell], in.delay);
  return num / (m1 * pilot_interference(in) + noise_interference(in));
}

// Same interference terms but with the useful-signal aging factor removed,
// i.e. the numerator a group sees right after retraining while the
// interference terms keep their current-delay form.
inline double refreshed_sinr_lower_bound(const RateBoundInputs& in) {
  if (in.antennas < 2) return 0.0;
  const double m1 = static_cast<double>(in.antennas - 1);
  const double own = in.beta_row[in.serving_cell];
  return m1 * own * own / (m1 * pilot_interference(in) + noise_interference(in));
}

inline double training_prefactor(std::size_t trained, std::size_t slot_symbols) {
  return 1.0 - static_cast<double>(trained) / static_cast<double>(slot_symbols);
}

// Per-user lower bound in bits/s/Hz with prefactor (1 - tau/T_s).
inline double user_rate_lb(const RateBoundInputs& in) {
  in.validate();
  return training_prefactor(in.trained_groups, in.slot_symbols) * std::log2(1.0 + sinr_lower_bound(in));
}

// Rate of the classical protocol where all `num_groups` groups train every
// slot: zero CSI delay and prefactor (1 - N_g/T_s).
inline double reference_rate(RateBoundInputs in, std::size_t num_groups) {
  if (num_groups > in.slot_symbols) {
    throw InvalidRegime("reference scheme needs N_g <= T_s");
  }
  in.delay = 0;
  in.trained_groups = num_groups;
  return user_rate_lb(in);
}

// Large-array contamination-limited SINR; +infinity when no other cell
// shares the pilot.
inline double asymptotic_sinr(const std::vector<double>& beta_row, std::size_t serving_cell) {
  double den = 0.0;
  for (std::size_t b = 0; b < beta_row.size(); ++b) {
    if (b != serving_cell) den += beta_row[b] * beta_row[b];
  }
  const double own = beta_row.at(serving_cell);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return own * own / den;
}

// M -> infinity limit of user_rate_lb with outdated CSI.
inline double asymptotic_outdated_rate(const std::vector<double>& beta_row, const std::vector<double>& rho_row,
                                       std::size_t serving_cell, int delay, std::size_t trained_groups,
                                       std::size_t slot_symbols) {
  double den = 0.0;
  for (std::size_t b = 0; b < beta_row.size(); ++b) {
    if (b != serving_cell) den += aged_power(rho_row[b], delay) * beta_row[b] * beta_row[b];
  }
  const double own = beta_row.at(serving_cell);
  const double num = own * own * aged_power(rho_row.at(serving_cell), delay);
  const double pre = training_prefactor(trained_groups, slot_symbols);
  if (den == 0.0) return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return pre * std::log2(1.0 + num / den);
}

// M -> infinity limit of the reference scheme.
inline double asymptotic_reference_rate(const std::vector<double>& beta_row, std::size_t serving_cell,
                                        std::size_t num_groups, std::size_t slot_symbols) {
  const double s = asymptotic_sinr(beta_row, serving_cell);
  if (std::isinf(s)) return std::numeric_limits<double>::infinity();
  return training_prefactor(num_groups, slot_symbols) * std::log2(1.0 + s);
}

struct AsymptoticInputs {
  std::vector<double> beta_row;     // beta^{[l]}_{g,c}
  std::size_t serving_cell = 0;
  double rho_min = 1.0;             // smallest autocorrelation in the group
  double rho_max = 1.0;             // largest autocorrelation in the group
  std::size_t num_groups = 2;       // N_g
  std::size_t trained_groups = 1;   // tau
  std::size_t slot_symbols = 200;   // T_s
  int delay = 0;
};

struct ConditionResult {
  bool holds = false;
  double margin = 0.0;  // lhs - rhs
  double lhs = 0.0;
  double rhs = 0.0;
};

// Sufficient condition, per user, for outdated-CSI training with tau groups
// to beat training all N_g groups in the large-array limit:
//   (rho_min^2 / rho_max^2)^d >= ((1 + S)^((T_s - N_g)/(T_s - tau)) - 1) / S.
inline ConditionResult improvement_condition(const AsymptoticInputs& in) {
  if (in.trained_groups >= in.num_groups || in.num_groups >= in.slot_symbols) {
    throw InvalidRegime("condition requires tau < N_g < T_s");
  }
  if (in.delay < 0) throw ConfigError("delay must be >= 0");
  if (!(in.rho_min > 0.0) || !(in.rho_min <= in.rho_max) || !(in.rho_max <= 1.0)) {
    throw ConfigError("need 0 < rho_min <= rho_max <= 1");
  }
  const double ratio = (in.rho_min * in.rho_min) / (in.rho_max * in.rho_max);
  const double lhs = in.delay == 0 ? 1.0 : std::pow(ratio, in.delay);
  const double exponent = static_cast<double>(in.slot_symbols - in.num_groups) /
                          static_cast<double>(in.slot_symbols - in.trained_groups);
  const double s = asymptotic_sinr(in.beta_row, in.serving_cell);
  double rhs = 0.0;  // limit of ((1+S)^e - 1)/S for e < 1 as S -> infinity
  if (!std::isinf(s)) rhs = std::expm1(exponent * std::log1p(s)) / s;
  return {lhs >= rhs, lhs - rhs, lhs, rhs};
}

}  // namespace ctmimo

#endif  // CTMIMO_RATEBOUND_HPP_
