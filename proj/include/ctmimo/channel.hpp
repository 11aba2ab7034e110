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

#ifndef CTMIMO_CHANNEL_HPP_
#define CTMIMO_CHANNEL_HPP_

// Link-level Monte-Carlo: Gauss-Markov channel aging, MMSE estimation from a
// shared pilot observation, matched-filter combining and per-drop SINR.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "ctmimo/error.hpp"
#include "ctmimo/grouping.hpp"
#include "ctmimo/netgen.hpp"
#include "ctmimo/random.hpp"
#include "ctmimo/ratebound.hpp"

namespace ctmimo {

using ChannelVector = Eigen::VectorXcd;

struct EstimateStats {
  double est_variance = 0.0;  // per-antenna variance of the MMSE estimate
  double err_variance = 0.0;  // per-antenna variance of the estimation error
};

// Statistics for every copilot user c of one group towards one BS, given
// that BS's gains beta_row[c] for the group members.
inline std::vector<EstimateStats> mmse_estimate_variance(const std::vector<double>& beta_row, double pilot_power) {
  double obs = 1.0 / pilot_power;
  for (double b : beta_row) {
    if (!(b > 0.0)) throw ConfigError("mmse_estimate_variance: beta must be > 0");
    obs += b;
  }
  std::vector<EstimateStats> out;
  out.reserve(beta_row.size());
  for (double b : beta_row) {
    const double est = b * b / obs;
    out.push_back({est, b - est});
  }
  return out;
}

inline ChannelVector draw_standard_channel(std::size_t antennas, Rng& rng) {
  ChannelVector h(static_cast<Eigen::Index>(antennas));
  for (Eigen::Index m = 0; m < h.size(); ++m) h[m] = rng.complex_normal(1.0);
  return h;
}

// Entries i.i.d. CN(0, beta); beta = 0 yields the zero vector.
inline ChannelVector draw_initial_channel(double beta, std::size_t antennas, Rng& rng) {
  if (antennas < 1) throw ConfigError("draw_initial_channel: need at least one antenna");
  if (!(beta >= 0.0)) throw ConfigError("draw_initial_channel: beta must be >= 0");
  return std::sqrt(beta) * draw_standard_channel(antennas, rng);
}

// One AR(1) step of the unit-variance part: rho h + eps, eps ~ CN(0, 1 - rho^2).
inline ChannelVector evolve_channel(const ChannelVector& h, double rho, Rng& rng) {
  if (!(std::abs(rho) <= 1.0)) throw ConfigError("evolve_channel: |rho| must be <= 1");
  if (rho == 1.0 || rho == -1.0) return rho * h;
  return rho * h + std::sqrt(1.0 - rho * rho) * draw_standard_channel(static_cast<std::size_t>(h.size()), rng);
}

// `steps` AR(1) steps collapsed into one: rho^d h + CN(0, 1 - rho^{2d}).
inline ChannelVector evolve_channel_steps(const ChannelVector& h, double rho, int steps, Rng& rng) {
  if (!(std::abs(rho) <= 1.0)) throw ConfigError("evolve_channel_steps: |rho| must be <= 1");
  if (steps < 0) throw ConfigError("evolve_channel_steps: steps must be >= 0");
  if (steps == 0) return h;
  const double gain = std::pow(rho, steps);
  const double innovation = 1.0 - gain * gain;
  if (innovation <= 0.0) return gain * h;
  return gain * h + std::sqrt(innovation) * draw_standard_channel(static_cast<std::size_t>(h.size()), rng);
}

inline ChannelVector matched_filter(const ChannelVector& estimate) {
  const double n = estimate.norm();
  if (!(n > 0.0)) throw ZeroEstimate("matched_filter: estimate has zero norm");
  return estimate / n;
}

// One uplink training round of a copilot group towards one BS: the
// unit-variance channels h_c, the shared observation
// y = sum_c sqrt(beta_c) h_c + w / sqrt(P_p), and the per-user MMSE
// estimates ghat_c = beta_c / (1/P_p + sum beta) * y with errors
// gerr_c = sqrt(beta_c) h_c - ghat_c.
struct PilotRound {
  std::vector<ChannelVector> unit_channels;
  ChannelVector observation;
  double observation_power = 0.0;
  std::vector<ChannelVector> estimates;
  std::vector<ChannelVector> errors;
};

inline PilotRound draw_pilot_round(const std::vector<double>& beta_row, double pilot_power, std::size_t antennas,
                                   Rng& rng) {
  const auto M = static_cast<Eigen::Index>(antennas);
  PilotRound r;
  r.observation = ChannelVector::Zero(M);
  r.observation_power = 1.0 / pilot_power;
  for (double b : beta_row) {
    r.unit_channels.push_back(draw_standard_channel(antennas, rng));
    r.observation += std::sqrt(b) * r.unit_channels.back();
    r.observation_power += b;
  }
  r.observation += std::sqrt(1.0 / pilot_power) * draw_standard_channel(antennas, rng);
  for (std::size_t c = 0; c < beta_row.size(); ++c) {
    r.estimates.push_back((beta_row[c] / r.observation_power) * r.observation);
    r.errors.push_back(std::sqrt(beta_row[c]) * r.unit_channels[c] - r.estimates.back());
  }
  return r;
}

enum class AgingMethod {
  kComposite,  // one draw per delay: rho^d h + CN(0, 1 - rho^{2d})
  kIterated,   // d successive AR(1) steps
};

struct SimulationOptions {
  AgingMethod aging = AgingMethod::kComposite;
  std::size_t threads = 1;
  std::ostream* trace = nullptr;  // optional per-drop CSV: drop,group,cell,sinr,rate
};

struct RateEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct SimulationResult {
  std::vector<RateEstimate> per_user;  // [group * C + cell]
  RateEstimate total;                  // sum over users, per-drop statistics
  std::size_t drops = 0;
};

namespace detail {

// Per-user SINR at BS `bs` for one drop. Symbols are unit power and
// independent, so each interference component enters through its
// projected power |u^H v|^2; the noise contributes 1/P_u after
// normalisation by sqrt(P_u).
inline void simulate_bs_drop(const Scenario& scenario, const CopilotGroups& groups, const std::vector<int>& delays,
                             std::size_t bs, std::size_t antennas, AgingMethod aging, Rng& rng,
                             std::vector<double>& sinr_out) {
  const std::size_t C = scenario.num_cells();
  const std::size_t N = groups.num_groups();
  const auto M = static_cast<Eigen::Index>(antennas);
  const double pilot_power = scenario.config().pilot_power;
  const double noise = 1.0 / scenario.config().uplink_power;

  Eigen::MatrixXcd current(M, static_cast<Eigen::Index>(N * C));  // g_{kc}(t)
  Eigen::MatrixXcd combiners(M, static_cast<Eigen::Index>(N));
  std::vector<ChannelVector> observations(N);
  std::vector<double> obs_power(N);
  std::vector<double> beta_row(C);

  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t c = 0; c < C; ++c) beta_row[c] = scenario.beta(bs, c, groups.user(k, c));
    PilotRound round;
    for (int attempt = 0;; ++attempt) {
      round = draw_pilot_round(beta_row, pilot_power, antennas, rng);
      if (round.estimates[bs].norm() > 0.0) break;
      if (attempt > 100) throw ZeroEstimate("repeated zero channel estimate");
    }
    for (std::size_t c = 0; c < C; ++c) {
      const double rho = scenario.rho(bs, c, groups.user(k, c));
      ChannelVector h = round.unit_channels[c];
      if (aging == AgingMethod::kComposite) {
        h = evolve_channel_steps(h, rho, delays[k], rng);
      } else {
        for (int s = 0; s < delays[k]; ++s) h = evolve_channel(h, rho, rng);
      }
      current.col(static_cast<Eigen::Index>(k * C + c)) = std::sqrt(beta_row[c]) * h;
    }
    combiners.col(static_cast<Eigen::Index>(k)) = matched_filter(round.estimates[bs]);
    observations[k] = std::move(round.observation);
    obs_power[k] = round.observation_power;
  }

  const Eigen::MatrixXcd proj = combiners.adjoint() * current;  // u_g^H g_{kc}(t)
  for (std::size_t g = 0; g < N; ++g) {
    const auto gi = static_cast<Eigen::Index>(g);
    const int d = delays[g];
    const std::complex<double> u_y = combiners.col(gi).dot(observations[g]);  // u^H y
    double useful = 0.0;
    double contamination = 0.0;
    double residual = 0.0;
    for (std::size_t c = 0; c < C; ++c) {
      const std::size_t user = groups.user(g, c);
      const double beta = scenario.beta(bs, c, user);
      const double aged = std::pow(scenario.rho(bs, c, user), d);
      const std::complex<double> u_est = (beta / obs_power[g]) * u_y;  // u^H ghat_gc
      const std::complex<double> u_stale = aged * u_est;               // u^H rho^d ghat_gc
      if (c == bs) {
        useful = std::norm(u_stale);
      } else {
        contamination += std::norm(u_stale);
      }
      residual += std::norm(proj(gi, static_cast<Eigen::Index>(g * C + c)) - u_stale);
    }
    double other = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      if (k == g) continue;
      for (std::size_t c = 0; c < C; ++c) other += std::norm(proj(gi, static_cast<Eigen::Index>(k * C + c)));
    }
    sinr_out[g * C + bs] = useful / (contamination + residual + other + noise);
  }
}

}  // namespace detail

// Monte-Carlo ergodic spectral efficiency of every grouped user. Each drop
// draws fresh channels at the time of each group's last training, ages them
// over d_g slots, and evaluates the matched filter built from the stale
// estimate. Drop i uses the stream derive_seed(seed, {i}) so the result does
// not depend on `options.threads`.
inline SimulationResult simulate_ergodic_rate(const Scenario& scenario, const CopilotGroups& groups,
                                              const std::vector<int>& delays, std::size_t trained_groups,
                                              std::size_t antennas, std::size_t num_drops, std::uint64_t seed,
                                              const SimulationOptions& options = {}) {
  const std::size_t C = scenario.num_cells();
  const std::size_t N = groups.num_groups();
  if (antennas < 2) throw ConfigError("simulate_ergodic_rate: need at least 2 antennas");
  if (num_drops < 1) throw ConfigError("simulate_ergodic_rate: need at least one drop");
  if (delays.size() != N) throw ConfigError("simulate_ergodic_rate: one delay per group required");
  for (int d : delays) {
    if (d < 0) throw ConfigError("simulate_ergodic_rate: delays must be >= 0");
  }
  if (trained_groups > scenario.config().slot_symbols) {
    throw ConfigError("simulate_ergodic_rate: trained groups exceed slot symbols");
  }
  const double prefactor = training_prefactor(trained_groups, scenario.config().slot_symbols);
  const std::size_t users = N * C;

  std::vector<double> rates(num_drops * users);
  std::vector<double> sinrs(options.trace != nullptr ? num_drops * users : 0);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    std::vector<double> sinr(users);
    for (std::size_t drop = begin; drop < end; ++drop) {
      Rng rng(derive_seed(seed, {drop}));
      for (std::size_t bs = 0; bs < C; ++bs) {
        detail::simulate_bs_drop(scenario, groups, delays, bs, antennas, options.aging, rng, sinr);
      }
      for (std::size_t u = 0; u < users; ++u) rates[drop * users + u] = prefactor * std::log2(1.0 + sinr[u]);
      if (!sinrs.empty()) std::copy(sinr.begin(), sinr.end(), sinrs.begin() + static_cast<std::ptrdiff_t>(drop * users));
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, num_drops));
  if (threads == 1) {
    run_range(0, num_drops);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (num_drops + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(num_drops, b + chunk);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
    for (auto& th : pool) th.join();
  }

  // Fixed-order reduction.
  SimulationResult result;
  result.drops = num_drops;
  result.per_user.resize(users);
  std::vector<double> sum(users, 0.0), sum_sq(users, 0.0);
  double tot = 0.0, tot_sq = 0.0;
  const double n = static_cast<double>(num_drops);
  if (options.trace != nullptr) *options.trace << "drop,group,cell,sinr,rate\n";
  for (std::size_t drop = 0; drop < num_drops; ++drop) {
    double drop_total = 0.0;
    for (std::size_t u = 0; u < users; ++u) {
      const double r = rates[drop * users + u];
      sum[u] += r;
      sum_sq[u] += r * r;
      drop_total += r;
      if (options.trace != nullptr) {
        *options.trace << drop << ',' << u / C << ',' << u % C << ',' << sinrs[drop * users + u] << ',' << r << '\n';
      }
    }
    tot += drop_total;
    tot_sq += drop_total * drop_total;
  }
  auto stats = [n](double s, double s2) {
    RateEstimate e;
    e.mean = s / n;
    if (n > 1.0) {
      const double var = std::max(0.0, (s2 - s * s / n) / (n - 1.0));
      e.std_error = std::sqrt(var / n);
    }
    return e;
  };
  for (std::size_t u = 0; u < users; ++u) result.per_user[u] = stats(sum[u], sum_sq[u]);
  result.total = stats(tot, tot_sq);
  return result;
}

}  // namespace ctmimo

#endif  // CTMIMO_CHANNEL_HPP_
