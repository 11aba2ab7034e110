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

#ifndef CTMIMO_CONFIG_HPP_
#define CTMIMO_CONFIG_HPP_

// Flat `key = value` experiment configuration. One entry per line, `#`
// starts a comment, list values are comma separated. Unknown keys are an
// error so typos do not silently fall back to defaults.
//
//   num_cells          C                                   (1 or 7)
//   users_per_cell     K, also the number of copilot groups N_g
//   cell_radius        m
//   min_distance       m, pathloss reference distance r0
//   pathloss_exponent
//   carrier_freq       Hz
//   slot_duration      s
//   slot_symbols       T_s, symbols per slot
//   speed_min/max      m/s
//   pilot_power        linear, relative to unit noise
//   uplink_power       linear, relative to unit noise
//   shadowing_db       log-normal std-dev in dB, 0 disables
//   t_max              s, longest coherence time; sets the cluster count
//   tau                groups trained per slot (cdf, rate-vs-m, schedule)
//   tau_sweep          list, weighted-vs-tau (empty: 0..N_g)
//   antennas           list of M (weighted-vs-tau and schedule use the first)
//   d_max              delays are drawn uniformly from {0..d_max}
//   num_drops          Monte-Carlo drops per point
//   num_redraws        independent scenario redraws
//   weights            uniform | ones | file:<csv with group,cell,weight>
//   mode               closed_form | monte_carlo | both
//   training_effect    refresh_numerator | fresh_estimate
//   local_search_eps
//   outage_quantile
//   bandwidth_hz       only used to print Mbit/s summaries
//   oracle_max_groups  run the exhaustive scheduler when N_g <= this
//   threads
//   seed

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ctmimo/error.hpp"
#include "ctmimo/netgen.hpp"
#include "ctmimo/scheduler.hpp"

namespace ctmimo {

enum class EvalMode { kClosedForm, kMonteCarlo, kBoth };

inline const char* to_string(EvalMode m) {
  switch (m) {
    case EvalMode::kClosedForm: return "closed_form";
    case EvalMode::kMonteCarlo: return "monte_carlo";
    case EvalMode::kBoth: return "both";
  }
  return "?";
}

inline EvalMode eval_mode_from_string(const std::string& s) {
  if (s == "closed_form") return EvalMode::kClosedForm;
  if (s == "monte_carlo") return EvalMode::kMonteCarlo;
  if (s == "both") return EvalMode::kBoth;
  throw ConfigError("unknown mode '" + s + "' (closed_form, monte_carlo, both)");
}

inline bool wants_bound(EvalMode m) { return m != EvalMode::kMonteCarlo; }
inline bool wants_simulation(EvalMode m) { return m != EvalMode::kClosedForm; }

struct ExperimentSpec {
  ScenarioConfig scenario;
  double t_max = 3.0e-3;
  std::size_t tau = 15;
  std::vector<std::size_t> tau_sweep;
  std::vector<std::size_t> antennas = {50, 120};
  int d_max = 2;
  std::size_t num_drops = 1000;
  std::size_t num_redraws = 20;
  std::string weights = "uniform";
  EvalMode mode = EvalMode::kClosedForm;
  TrainingEffect training_effect = TrainingEffect::kRefreshNumerator;
  double local_search_eps = 0.1;
  double outage_quantile = 0.05;
  double bandwidth_hz = 200.0e6;
  std::size_t oracle_max_groups = 12;
  std::size_t threads = 1;
  std::uint64_t seed = 1;

  std::size_t num_groups() const { return scenario.users_per_cell; }

  void validate() const {
    auto fail = [](const std::string& w) { throw ConfigError("invalid experiment: " + w); };
    scenario.validate();
    if (scenario.users_per_cell < 1) fail("users_per_cell must be >= 1");
    if (!(t_max > 0.0)) fail("t_max must be > 0");
    if (d_max < 0) fail("d_max must be >= 0");
    if (tau > num_groups()) fail("tau must not exceed the number of groups");
    if (tau > scenario.slot_symbols) fail("tau must not exceed slot_symbols");
    for (std::size_t t : tau_sweep) {
      if (t > num_groups()) fail("tau_sweep entries must not exceed the number of groups");
    }
    if (antennas.empty()) fail("antennas must list at least one value");
    for (std::size_t m : antennas) {
      if (m < 2) fail("antennas must be >= 2");
    }
    if (num_drops < 1) fail("num_drops must be >= 1");
    if (num_redraws < 1) fail("num_redraws must be >= 1");
    if (!(local_search_eps > 0.0)) fail("local_search_eps must be > 0");
    if (!(outage_quantile > 0.0 && outage_quantile < 1.0)) fail("outage_quantile must be in (0, 1)");
    if (!(bandwidth_hz > 0.0)) fail("bandwidth_hz must be > 0");
    if (threads < 1) fail("threads must be >= 1");
    if (weights != "uniform" && weights != "ones" && weights.rfind("file:", 0) != 0) {
      fail("weights must be uniform, ones or file:<path>");
    }
  }

  std::vector<std::size_t> effective_tau_sweep() const {
    if (!tau_sweep.empty()) return tau_sweep;
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t <= num_groups(); ++t) out.push_back(t);
    return out;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& v, const std::string& where) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(where + ": expected a number, got '" + v + "'");
  return out;
}

inline std::uint64_t parse_uint(const std::string& v, const std::string& where) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(where + ": expected a non-negative integer, got '" + v + "'");
  }
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw ConfigError(where + ": integer out of range '" + v + "'");
  }
}

inline std::vector<std::size_t> parse_uint_list(const std::string& v, const std::string& where) {
  std::vector<std::size_t> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_uint(trim(item), where));
  return out;
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

using Setter = std::function<void(ExperimentSpec&, const std::string&, const std::string&)>;

inline const std::map<std::string, Setter>& setters() {
  using S = ExperimentSpec;
  using Str = const std::string&;
  static const std::map<std::string, Setter> table = {
      {"num_cells", [](S& s, Str v, Str w) { s.scenario.num_cells = parse_uint(v, w); }},
      {"users_per_cell", [](S& s, Str v, Str w) { s.scenario.users_per_cell = parse_uint(v, w); }},
      {"cell_radius", [](S& s, Str v, Str w) { s.scenario.cell_radius = parse_double(v, w); }},
      {"min_distance", [](S& s, Str v, Str w) { s.scenario.min_distance = parse_double(v, w); }},
      {"pathloss_exponent", [](S& s, Str v, Str w) { s.scenario.pathloss_exponent = parse_double(v, w); }},
      {"carrier_freq", [](S& s, Str v, Str w) { s.scenario.carrier_freq = parse_double(v, w); }},
      {"slot_duration", [](S& s, Str v, Str w) { s.scenario.slot_duration = parse_double(v, w); }},
      {"slot_symbols", [](S& s, Str v, Str w) { s.scenario.slot_symbols = parse_uint(v, w); }},
      {"speed_min", [](S& s, Str v, Str w) { s.scenario.speed_min = parse_double(v, w); }},
      {"speed_max", [](S& s, Str v, Str w) { s.scenario.speed_max = parse_double(v, w); }},
      {"pilot_power", [](S& s, Str v, Str w) { s.scenario.pilot_power = parse_double(v, w); }},
      {"uplink_power", [](S& s, Str v, Str w) { s.scenario.uplink_power = parse_double(v, w); }},
      {"shadowing_db", [](S& s, Str v, Str w) { s.scenario.shadowing_db = parse_double(v, w); }},
      {"t_max", [](S& s, Str v, Str w) { s.t_max = parse_double(v, w); }},
      {"tau", [](S& s, Str v, Str w) { s.tau = parse_uint(v, w); }},
      {"tau_sweep", [](S& s, Str v, Str w) { s.tau_sweep = parse_uint_list(v, w); }},
      {"antennas", [](S& s, Str v, Str w) { s.antennas = parse_uint_list(v, w); }},
      {"d_max", [](S& s, Str v, Str w) { s.d_max = static_cast<int>(parse_uint(v, w)); }},
      {"num_drops", [](S& s, Str v, Str w) { s.num_drops = parse_uint(v, w); }},
      {"num_redraws", [](S& s, Str v, Str w) { s.num_redraws = parse_uint(v, w); }},
      {"weights", [](S& s, Str v, Str) { s.weights = v; }},
      {"mode", [](S& s, Str v, Str) { s.mode = eval_mode_from_string(v); }},
      {"training_effect", [](S& s, Str v, Str) { s.training_effect = training_effect_from_string(v); }},
      {"local_search_eps", [](S& s, Str v, Str w) { s.local_search_eps = parse_double(v, w); }},
      {"outage_quantile", [](S& s, Str v, Str w) { s.outage_quantile = parse_double(v, w); }},
      {"bandwidth_hz", [](S& s, Str v, Str w) { s.bandwidth_hz = parse_double(v, w); }},
      {"oracle_max_groups", [](S& s, Str v, Str w) { s.oracle_max_groups = parse_uint(v, w); }},
      {"threads", [](S& s, Str v, Str w) { s.threads = parse_uint(v, w); }},
      {"seed", [](S& s, Str v, Str w) { s.seed = parse_uint(v, w); }},
  };
  return table;
}

}  // namespace detail

// Applies `key = value` lines from `in` on top of `spec`. `source` names the
// input in error messages.
inline void apply_config(ExperimentSpec& spec, std::istream& in, const std::string& source = "<config>") {
  const auto& table = detail::setters();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    auto it = table.find(key);
    if (it == table.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    it->second(spec, value, where + " (" + key + ")");
  }
}

inline ExperimentSpec load_config(const std::string& path, ExperimentSpec spec = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_config(spec, in, path);
  return spec;
}

// Full echo in the same format apply_config() reads.
inline std::string config_text(const ExperimentSpec& s) {
  using detail::fmt_double;
  std::ostringstream os;
  const auto& c = s.scenario;
  os << "num_cells = " << c.num_cells << "\n"
     << "users_per_cell = " << c.users_per_cell << "\n"
     << "cell_radius = " << fmt_double(c.cell_radius) << "\n"
     << "min_distance = " << fmt_double(c.min_distance) << "\n"
     << "pathloss_exponent = " << fmt_double(c.pathloss_exponent) << "\n"
     << "carrier_freq = " << fmt_double(c.carrier_freq) << "\n"
     << "slot_duration = " << fmt_double(c.slot_duration) << "\n"
     << "slot_symbols = " << c.slot_symbols << "\n"
     << "speed_min = " << fmt_double(c.speed_min) << "\n"
     << "speed_max = " << fmt_double(c.speed_max) << "\n"
     << "pilot_power = " << fmt_double(c.pilot_power) << "\n"
     << "uplink_power = " << fmt_double(c.uplink_power) << "\n"
     << "shadowing_db = " << fmt_double(c.shadowing_db) << "\n"
     << "t_max = " << fmt_double(s.t_max) << "\n"
     << "tau = " << s.tau << "\n"
     << "tau_sweep = " << detail::join(s.tau_sweep) << "\n"
     << "antennas = " << detail::join(s.antennas) << "\n"
     << "d_max = " << s.d_max << "\n"
     << "num_drops = " << s.num_drops << "\n"
     << "num_redraws = " << s.num_redraws << "\n"
     << "weights = " << s.weights << "\n"
     << "mode = " << to_string(s.mode) << "\n"
     << "training_effect = " << to_string(s.training_effect) << "\n"
     << "local_search_eps = " << fmt_double(s.local_search_eps) << "\n"
     << "outage_quantile = " << fmt_double(s.outage_quantile) << "\n"
     << "bandwidth_hz = " << fmt_double(s.bandwidth_hz) << "\n"
     << "oracle_max_groups = " << s.oracle_max_groups << "\n"
     << "threads = " << s.threads << "\n"
     << "seed = " << s.seed << "\n";
  return os.str();
}

}  // namespace ctmimo

#endif  // CTMIMO_CONFIG_HPP_
