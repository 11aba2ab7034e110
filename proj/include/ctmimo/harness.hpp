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

#ifndef CTMIMO_HARNESS_HPP_
#define CTMIMO_HARNESS_HPP_

// Experiment runners: spectral-efficiency CDFs, rate versus antenna count
// (bound and simulation), weighted objective versus tau. Every random draw
// comes from a stream derived from (seed, redraw, purpose), so a report is a
// pure function of its ExperimentSpec.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ctmimo/channel.hpp"
#include "ctmimo/config.hpp"
#include "ctmimo/error.hpp"
#include "ctmimo/grouping.hpp"
#include "ctmimo/netgen.hpp"
#include "ctmimo/network_rates.hpp"
#include "ctmimo/random.hpp"
#include "ctmimo/scenario_io.hpp"
#include "ctmimo/scheduler.hpp"

namespace ctmimo {

inline constexpr const char* kVersion = "ctmimo 0.1.0";

// Stream identifiers under derive_seed(spec.seed, {redraw, purpose, ...}).
enum StreamPurpose : std::uint64_t {
  kStreamScenario = 0,
  kStreamClustering = 1,
  kStreamDelays = 2,
  kStreamWeights = 3,
  kStreamSimProposed = 4,
  kStreamSimReference = 5,
};

// Empirical q-quantile with lower interpolation: the sample at sorted
// position floor(q (n - 1)).
inline double outage_rate(std::vector<double> samples, double q) {
  if (samples.empty()) throw EmptySamples("outage_rate: no samples");
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("outage_rate: q must be in (0, 1)");
  const auto n = samples.size();
  auto k = static_cast<std::size_t>(std::floor(q * static_cast<double>(n - 1) + 1e-9));
  k = std::min(k, n - 1);
  std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(k), samples.end());
  return samples[k];
}

struct CdfPoint {
  double x = 0.0;
  double probability = 0.0;  // P(sample <= x)
};

inline std::vector<CdfPoint> empirical_cdf(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
    out.push_back({samples[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

// Everything a redraw needs: geometry, groups, delays and weights.
struct RedrawSetup {
  Scenario scenario;
  ClusterModel clusters;
  CopilotGroups groups;
  std::vector<int> delays;
  std::vector<double> weights;  // [g * C + l]
};

inline std::vector<double> load_weights_file(const std::filesystem::path& path, std::size_t num_groups,
                                             std::size_t num_cells) {
  const auto rows = detail::read_csv(path, "group,cell,weight");
  std::vector<double> w(num_groups * num_cells, std::numeric_limits<double>::quiet_NaN());
  for (const auto& r : rows) {
    const auto g = detail::parse_uint(r[0], "weights group");
    const auto l = detail::parse_uint(r[1], "weights cell");
    if (g >= num_groups || l >= num_cells) throw ConfigError("weights file: index out of range");
    w[g * num_cells + l] = detail::parse_double(r[2], "weights weight");
  }
  for (double v : w) {
    if (std::isnan(v)) throw ConfigError("weights file '" + path.string() + "' must cover every group and cell");
  }
  return w;
}

inline RedrawSetup prepare_redraw(const ExperimentSpec& spec, std::size_t redraw) {
  ScenarioConfig sc = spec.scenario;
  sc.rng_seed = derive_seed(spec.seed, {redraw, kStreamScenario});
  Scenario scenario = generate_scenario(sc);

  Rng cluster_rng(derive_seed(spec.seed, {redraw, kStreamClustering}));
  const std::size_t nc = cluster_count(spec.t_max, sc.slot_duration);
  ClusterModel clusters = kmeans_1d(serving_rho_values(scenario), nc, cluster_rng);
  CopilotGroups groups = form_copilot_groups(scenario, clusters);

  const std::size_t N = groups.num_groups();
  const std::size_t C = scenario.num_cells();
  Rng delay_rng(derive_seed(spec.seed, {redraw, kStreamDelays}));
  std::vector<int> delays(N);
  for (auto& d : delays) d = static_cast<int>(delay_rng.uniform_int(0, spec.d_max));
  groups.delays = delays;

  std::vector<double> weights;
  if (spec.weights == "ones") {
    weights.assign(N * C, 1.0);
  } else if (spec.weights == "uniform") {
    Rng wrng(derive_seed(spec.seed, {redraw, kStreamWeights}));
    weights.resize(N * C);
    for (auto& w : weights) w = wrng.uniform(0.0, 1.0);
  } else {
    weights = load_weights_file(spec.weights.substr(5), N, C);
  }
  return {std::move(scenario), std::move(clusters), std::move(groups), std::move(delays), std::move(weights)};
}

// One row per user per (redraw, scheme, M, tau). Missing values are NaN.
struct UserRecord {
  std::size_t redraw = 0;
  std::string scheme;  // proposed | reference
  std::size_t antennas = 0;
  std::size_t tau = 0;
  std::size_t group = 0;
  std::size_t cell = 0;
  int delay = 0;
  double weight = 1.0;
  double bound = std::numeric_limits<double>::quiet_NaN();
  double simulated = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();
};

// One point of a summary curve.
struct SummaryRecord {
  std::string curve;
  std::string scheme;
  std::size_t antennas = 0;
  std::size_t tau = 0;
  double x = 0.0;
  double y = 0.0;
  double std_error = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentReport {
  std::string experiment;
  ExperimentSpec spec;
  std::vector<UserRecord> users;
  std::vector<SummaryRecord> summary;

  std::vector<double> samples(const std::string& scheme, std::size_t antennas, bool simulated) const {
    std::vector<double> out;
    for (const auto& u : users) {
      if (u.scheme == scheme && u.antennas == antennas) out.push_back(simulated ? u.simulated : u.bound);
    }
    return out;
  }

  // Sum spectral efficiency of each cell, one sample per (redraw, cell),
  // ordered by redraw then cell.
  std::vector<double> cell_sums(const std::string& scheme, std::size_t antennas, bool simulated) const {
    std::map<std::pair<std::size_t, std::size_t>, double> acc;
    for (const auto& u : users) {
      if (u.scheme == scheme && u.antennas == antennas) acc[{u.redraw, u.cell}] += simulated ? u.simulated : u.bound;
    }
    std::vector<double> out;
    out.reserve(acc.size());
    for (const auto& [key, v] : acc) out.push_back(v);
    return out;
  }

  const SummaryRecord* find(const std::string& curve, const std::string& scheme, double x) const {
    for (const auto& s : summary) {
      if (s.curve == curve && s.scheme == scheme && s.x == x) return &s;
    }
    return nullptr;
  }
};

namespace detail {

inline void append_users(ExperimentReport& rep, std::size_t redraw, const char* scheme, std::size_t antennas,
                         std::size_t tau, const RedrawSetup& setup, const std::vector<int>& delays,
                         const SumRate* bound, const SimulationResult* sim) {
  const std::size_t C = setup.scenario.num_cells();
  for (std::size_t g = 0; g < setup.groups.num_groups(); ++g) {
    for (std::size_t l = 0; l < C; ++l) {
      UserRecord u;
      u.redraw = redraw;
      u.scheme = scheme;
      u.antennas = antennas;
      u.tau = tau;
      u.group = g;
      u.cell = l;
      u.delay = delays[g];
      u.weight = setup.weights[g * C + l];
      if (bound != nullptr) u.bound = bound->per_user[g * C + l];
      if (sim != nullptr) {
        u.simulated = sim->per_user[g * C + l].mean;
        u.std_error = sim->per_user[g * C + l].std_error;
      }
      rep.users.push_back(std::move(u));
    }
  }
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? std::numeric_limits<double>::quiet_NaN() : s / static_cast<double>(v.size());
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Closed-form and/or simulated rates of both schemes for one (redraw, M).
inline void evaluate_schemes(ExperimentReport& rep, const ExperimentSpec& spec, std::size_t redraw,
                             const RedrawSetup& setup, std::size_t antennas) {
  const std::size_t N = setup.groups.num_groups();
  const std::vector<int> fresh(N, 0);
  SimulationOptions opt;
  opt.threads = spec.threads;
  SumRate bp, br;
  SimulationResult sp, sr;
  if (wants_bound(spec.mode)) {
    bp = sum_rate_lb(setup.scenario, setup.groups, setup.delays, spec.tau, antennas);
    br = reference_sum_rate(setup.scenario, setup.groups, antennas);
  }
  if (wants_simulation(spec.mode)) {
    sp = simulate_ergodic_rate(setup.scenario, setup.groups, setup.delays, spec.tau, antennas, spec.num_drops,
                               derive_seed(spec.seed, {redraw, kStreamSimProposed, antennas}), opt);
    sr = simulate_ergodic_rate(setup.scenario, setup.groups, fresh, N, antennas, spec.num_drops,
                               derive_seed(spec.seed, {redraw, kStreamSimReference, antennas}), opt);
  }
  const bool b = wants_bound(spec.mode), s = wants_simulation(spec.mode);
  append_users(rep, redraw, "proposed", antennas, spec.tau, setup, setup.delays, b ? &bp : nullptr,
               s ? &sp : nullptr);
  append_users(rep, redraw, "reference", antennas, N, setup, fresh, b ? &br : nullptr, s ? &sr : nullptr);
}

}  // namespace detail

// Rate distributions of the proposed scheme (random delays, tau trained
// groups) and the reference scheme (all groups trained, no delay) for every
// M in spec.antennas. cdf_* / outage_* / mean_* pool per-user rates across
// redraws; the *_cellsum_* curves use one per-cell sum per cell and redraw.
inline ExperimentReport run_cdf_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentReport rep;
  rep.experiment = "cdf";
  rep.spec = spec;
  for (std::size_t r = 0; r < spec.num_redraws; ++r) {
    const RedrawSetup setup = prepare_redraw(spec, r);
    for (std::size_t m : spec.antennas) detail::evaluate_schemes(rep, spec, r, setup, m);
  }
  const std::size_t N = spec.num_groups();
  for (std::size_t m : spec.antennas) {
    for (const char* scheme : {"proposed", "reference"}) {
      const std::size_t tau = std::string(scheme) == "proposed" ? spec.tau : N;
      for (bool sim : {false, true}) {
        if (sim ? !wants_simulation(spec.mode) : !wants_bound(spec.mode)) continue;
        const std::string src = sim ? "simulated" : "bound";
        const auto samples = rep.samples(scheme, m, sim);
        const auto cells = rep.cell_sums(scheme, m, sim);
        for (const auto& p : empirical_cdf(samples)) {
          rep.summary.push_back({"cdf_" + src, scheme, m, tau, p.x, p.probability});
        }
        for (const auto& p : empirical_cdf(cells)) {
          rep.summary.push_back({"cdf_cellsum_" + src, scheme, m, tau, p.x, p.probability});
        }
        rep.summary.push_back({"outage_" + src, scheme, m, tau, spec.outage_quantile,
                               outage_rate(samples, spec.outage_quantile)});
        rep.summary.push_back({"outage_cellsum_" + src, scheme, m, tau, spec.outage_quantile,
                               outage_rate(cells, spec.outage_quantile)});
        rep.summary.push_back({"mean_cellsum_" + src, scheme, m, tau, static_cast<double>(m), detail::mean_of(cells)});
        rep.summary.push_back({"mean_" + src, scheme, m, tau, static_cast<double>(m), detail::mean_of(samples)});
      }
    }
  }
  return rep;
}

// Bound and simulated rates versus M. Summary curves per scheme:
//   mean_bound / mean_simulated   mean per-user rate, x = M
//   gap_median                    median over redraws of the relative gap
//                                 (sum simulated - sum bound) / sum simulated
//   bound_violation_fraction      users with bound > simulated + 3 SE
inline ExperimentReport run_rate_vs_M(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentReport rep;
  rep.experiment = "rate-vs-m";
  rep.spec = spec;
  for (std::size_t r = 0; r < spec.num_redraws; ++r) {
    const RedrawSetup setup = prepare_redraw(spec, r);
    for (std::size_t m : spec.antennas) detail::evaluate_schemes(rep, spec, r, setup, m);
  }
  const std::size_t N = spec.num_groups();
  for (const char* scheme : {"proposed", "reference"}) {
    const std::size_t tau = std::string(scheme) == "proposed" ? spec.tau : N;
    for (std::size_t m : spec.antennas) {
      const double x = static_cast<double>(m);
      if (wants_bound(spec.mode)) {
        rep.summary.push_back({"mean_bound", scheme, m, tau, x, detail::mean_of(rep.samples(scheme, m, false))});
      }
      if (!wants_simulation(spec.mode)) continue;
      const auto sim = rep.samples(scheme, m, true);
      double se_sq = 0.0;
      std::size_t n = 0;
      for (const auto& u : rep.users) {
        if (u.scheme == scheme && u.antennas == m) {
          se_sq += u.std_error * u.std_error;
          ++n;
        }
      }
      // Users within one redraw are simulated jointly; the SE of the mean
      // treats them as independent and is indicative only.
      rep.summary.push_back(
          {"mean_simulated", scheme, m, tau, x, detail::mean_of(sim), std::sqrt(se_sq) / static_cast<double>(n)});
      if (!wants_bound(spec.mode)) continue;
      std::vector<double> gaps;
      std::size_t violations = 0;
      for (std::size_t r = 0; r < spec.num_redraws; ++r) {
        double sb = 0.0, ss = 0.0;
        for (const auto& u : rep.users) {
          if (u.scheme != scheme || u.antennas != m || u.redraw != r) continue;
          sb += u.bound;
          ss += u.simulated;
          if (u.bound > u.simulated + 3.0 * u.std_error) ++violations;
        }
        gaps.push_back(ss > 0.0 ? (ss - sb) / ss : 0.0);
      }
      rep.summary.push_back({"gap_median", scheme, m, tau, x, detail::median_of(gaps)});
      rep.summary.push_back(
          {"bound_violation_fraction", scheme, m, tau, x, static_cast<double>(violations) / static_cast<double>(n)});
    }
  }
  return rep;
}

// Achieved weighted objective versus tau, at M = spec.antennas.front().
// Curves: achieved (composed greedy + local search), oracle (exhaustive,
// only when N_g <= oracle_max_groups and the guard allows), worst_ratio
// (smallest achieved / oracle over redraws) and alpha. y is the mean over
// redraws.
inline ExperimentReport run_weighted_vs_tau(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentReport rep;
  rep.experiment = "weighted-vs-tau";
  rep.spec = spec;
  const std::size_t M = spec.antennas.front();
  const auto sweep = spec.effective_tau_sweep();
  const bool with_oracle = spec.num_groups() <= std::min(spec.oracle_max_groups, kBruteForceMaxGroups);
  ApproxConfig cfg;
  cfg.local_search_eps = spec.local_search_eps;
  std::vector<double> achieved(sweep.size(), 0.0), oracle(sweep.size(), 0.0);
  std::vector<double> worst_ratio(sweep.size(), std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < spec.num_redraws; ++r) {
    const RedrawSetup setup = prepare_redraw(spec, r);
    const std::size_t C = setup.scenario.num_cells();
    for (std::size_t t = 0; t < sweep.size(); ++t) {
      const SchedulingInstance inst = make_scheduling_instance(setup.scenario, setup.groups, setup.delays,
                                                               setup.weights, sweep[t], M, spec.training_effect);
      const SubmodResult res = submod_max_cardinality(inst, cfg);
      achieved[t] += res.objective;
      if (with_oracle) {
        const BruteForceResult bf = brute_force_schedule(inst);
        oracle[t] += bf.objective;
        worst_ratio[t] = std::min(worst_ratio[t], bf.objective > 0.0 ? res.objective / bf.objective : 1.0);
      }
      const double pre = training_prefactor(res.schedule.count(), inst.slot_symbols);
      for (std::size_t g = 0; g < inst.num_groups; ++g) {
        for (std::size_t l = 0; l < C; ++l) {
          UserRecord u;
          u.redraw = r;
          u.scheme = "proposed";
          u.antennas = M;
          u.tau = sweep[t];
          u.group = g;
          u.cell = l;
          u.delay = res.schedule.selected(g) ? 0 : setup.delays[g];
          u.weight = inst.weights[g * C + l];
          u.bound = pre * (res.schedule.selected(g) ? scheduled_rate(inst, g, l) : unscheduled_rate(inst, g, l));
          rep.users.push_back(std::move(u));
        }
      }
    }
  }
  const double n = static_cast<double>(spec.num_redraws);
  for (std::size_t t = 0; t < sweep.size(); ++t) {
    const double x = static_cast<double>(sweep[t]);
    rep.summary.push_back({"achieved", "proposed", M, sweep[t], x, achieved[t] / n});
    if (with_oracle) {
      rep.summary.push_back({"oracle", "proposed", M, sweep[t], x, oracle[t] / n});
      rep.summary.push_back({"worst_ratio", "proposed", M, sweep[t], x, worst_ratio[t]});
    }
  }
  rep.summary.push_back({"alpha", "proposed", M, 0, spec.local_search_eps, cfg.alpha()});
  return rep;
}

// ---------------------------------------------------------------------------
// Output.

inline constexpr const char* kUsersHeader =
    "redraw,scheme,antennas,tau,group,cell,delay,weight,bound,simulated,std_error";
inline constexpr const char* kSummaryHeader = "curve,scheme,antennas,tau,x,y,std_error";

namespace detail {

inline std::string fmt_opt(double v) { return std::isnan(v) ? std::string() : fmt_double(v); }

inline double parse_opt(const std::string& s, const std::string& where) {
  return s.empty() ? std::numeric_limits<double>::quiet_NaN() : parse_double(s, where);
}

}  // namespace detail

inline void write_users_csv(std::ostream& os, const std::vector<UserRecord>& users) {
  os << kUsersHeader << '\n';
  for (const auto& u : users) {
    os << u.redraw << ',' << u.scheme << ',' << u.antennas << ',' << u.tau << ',' << u.group << ',' << u.cell << ','
       << u.delay << ',' << detail::fmt_double(u.weight) << ',' << detail::fmt_opt(u.bound) << ','
       << detail::fmt_opt(u.simulated) << ',' << detail::fmt_opt(u.std_error) << '\n';
  }
}

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRecord>& rows) {
  os << kSummaryHeader << '\n';
  for (const auto& s : rows) {
    os << s.curve << ',' << s.scheme << ',' << s.antennas << ',' << s.tau << ',' << detail::fmt_double(s.x) << ','
       << detail::fmt_opt(s.y) << ',' << detail::fmt_opt(s.std_error) << '\n';
  }
}

inline std::vector<UserRecord> read_users_csv(const std::filesystem::path& path) {
  std::vector<UserRecord> out;
  for (const auto& r : detail::read_csv(path, kUsersHeader)) {
    UserRecord u;
    u.redraw = detail::parse_uint(r[0], "redraw");
    u.scheme = r[1];
    u.antennas = detail::parse_uint(r[2], "antennas");
    u.tau = detail::parse_uint(r[3], "tau");
    u.group = detail::parse_uint(r[4], "group");
    u.cell = detail::parse_uint(r[5], "cell");
    u.delay = static_cast<int>(detail::parse_uint(r[6], "delay"));
    u.weight = detail::parse_double(r[7], "weight");
    u.bound = detail::parse_opt(r[8], "bound");
    u.simulated = detail::parse_opt(r[9], "simulated");
    u.std_error = detail::parse_opt(r[10], "std_error");
    out.push_back(std::move(u));
  }
  return out;
}

inline std::string manifest_text(const ExperimentReport& rep) {
  std::string s;
  s += "# " + std::string(kVersion) + "\n";
  s += "# experiment: " + rep.experiment + "\n";
  s += "# users.csv: " + std::string(kUsersHeader) + "\n";
  s += "# summary.csv: " + std::string(kSummaryHeader) + "\n";
  s += "# rates in bits/s/Hz; the lines below are a complete config for a rerun\n";
  s += config_text(rep.spec);
  return s;
}

// Writes users.csv, summary.csv and manifest.txt into `dir`.
inline void emit_report(const ExperimentReport& rep, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  auto write = [&](const char* name, auto&& body) {
    const auto p = dir / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw IoError("cannot write '" + p.string() + "'");
    body(os);
    if (!os) throw IoError("write failed for '" + p.string() + "'");
  };
  write("users.csv", [&](std::ostream& os) { write_users_csv(os, rep.users); });
  write("summary.csv", [&](std::ostream& os) { write_summary_csv(os, rep.summary); });
  write("manifest.txt", [&](std::ostream& os) { os << manifest_text(rep); });
}

// Short human-readable digest: outage and mean rates, objective curves.
inline void print_summary(const ExperimentReport& rep, std::ostream& os) {
  const double mbit = rep.spec.bandwidth_hz / 1e6;
  char line[256];
  for (const auto& s : rep.summary) {
    if (s.curve.rfind("cdf_", 0) == 0) continue;
    if (s.curve.rfind("outage_", 0) == 0 || s.curve.rfind("mean_", 0) == 0) {
      std::snprintf(line, sizeof line, "%-24s %-9s M=%-4zu tau=%-3zu %.6g bits/s/Hz (%.6g Mbit/s)\n",
                    s.curve.c_str(), s.scheme.c_str(), s.antennas, s.tau, s.y, s.y * mbit);
    } else {
      std::snprintf(line, sizeof line, "%-24s %-9s M=%-4zu tau=%-3zu x=%.6g y=%.6g\n", s.curve.c_str(),
                    s.scheme.c_str(), s.antennas, s.tau, s.x, s.y);
    }
    os << line;
  }
}

}  // namespace ctmimo

#endif  // CTMIMO_HARNESS_HPP_
