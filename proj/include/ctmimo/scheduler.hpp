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

#ifndef CTMIMO_SCHEDULER_HPP_
#define CTMIMO_SCHEDULER_HPP_

// Choosing which copilot groups retrain in a slot: weighted-sum-rate
// objective, greedy, local search, the composed greedy + local-search
// procedure and an exhaustive oracle.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ctmimo/error.hpp"
#include "ctmimo/grouping.hpp"
#include "ctmimo/netgen.hpp"
#include "ctmimo/network_rates.hpp"
#include "ctmimo/ratebound.hpp"

namespace ctmimo {

class ScheduleVector {
 public:
  ScheduleVector() = default;
  explicit ScheduleVector(std::size_t num_groups) : y_(num_groups, 0) {}

  static ScheduleVector from_indices(std::size_t num_groups, const std::vector<std::size_t>& selected) {
    ScheduleVector y(num_groups);
    for (std::size_t g : selected) y.set(g, true);
    return y;
  }

  std::size_t size() const { return y_.size(); }
  bool selected(std::size_t g) const { return y_.at(g) != 0; }
  void set(std::size_t g, bool on) { y_.at(g) = on ? 1 : 0; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto v : y_) n += v;
    return n;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < y_.size(); ++g) {
      if (y_[g]) out.push_back(g);
    }
    return out;
  }

  bool operator==(const ScheduleVector&) const = default;

 private:
  std::vector<std::uint8_t> y_;
};

// How training a group changes its users' rate terms in the objective.
enum class TrainingEffect {
  // The useful-signal aging factor rho^{2d} is removed; interference terms
  // keep the group's current delay. Guarantees diminishing returns.
  kRefreshNumerator,
  // The whole bound is re-evaluated at delay 0. Physically complete, but
  // retraining can re-correlate pilot contamination, so a group's gain can
  // be negative and diminishing returns can fail.
  kFreshEstimate,
};

inline const char* to_string(TrainingEffect e) {
  return e == TrainingEffect::kRefreshNumerator ? "refresh_numerator" : "fresh_estimate";
}

inline TrainingEffect training_effect_from_string(const std::string& s) {
  if (s == "refresh_numerator") return TrainingEffect::kRefreshNumerator;
  if (s == "fresh_estimate") return TrainingEffect::kFreshEstimate;
  throw ConfigError("unknown training effect '" + s + "'");
}

struct SchedulingInstance {
  std::size_t num_groups = 0;
  std::size_t num_cells = 0;
  std::size_t slot_symbols = 200;
  std::size_t max_trained = 0;           // tau
  std::vector<int> delays;               // d_g
  std::vector<double> weights;           // [g * C + l]
  std::vector<RateBoundInputs> inputs;   // [g * C + l]; delay/trained fields are ignored
  TrainingEffect effect = TrainingEffect::kRefreshNumerator;

  void validate() const {
    auto fail = [](const std::string& w) { throw ConfigError("invalid scheduling instance: " + w); };
    const std::size_t users = num_groups * num_cells;
    if (delays.size() != num_groups) fail("one delay per group required");
    if (weights.size() != users || inputs.size() != users) fail("one weight and input set per user required");
    if (max_trained > num_groups) fail("tau must not exceed N_g");
    if (slot_symbols < 1) fail("slot_symbols must be >= 1");
    for (int d : delays) {
      if (d < 0) fail("delays must be >= 0");
    }
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) fail("weights must be finite and >= 0");
    }
    for (const auto& in : inputs) {
      RateBoundInputs probe = in;
      probe.trained_groups = 0;
      probe.delay = 0;
      probe.validate();
    }
  }
};

// Per-user log2(1 + SINR) with unit prefactor, trained or not.
inline double scheduled_rate(const SchedulingInstance& inst, std::size_t g, std::size_t l) {
  RateBoundInputs in = inst.inputs[g * inst.num_cells + l];
  in.delay = inst.delays[g];
  if (inst.effect == TrainingEffect::kRefreshNumerator) return std::log2(1.0 + refreshed_sinr_lower_bound(in));
  in.delay = 0;
  return std::log2(1.0 + sinr_lower_bound(in));
}

inline double unscheduled_rate(const SchedulingInstance& inst, std::size_t g, std::size_t l) {
  RateBoundInputs in = inst.inputs[g * inst.num_cells + l];
  in.delay = inst.delays[g];
  return std::log2(1.0 + sinr_lower_bound(in));
}

// Cached per-group weighted terms; evaluating a schedule is O(N_g).
class ScheduleObjective {
 public:
  explicit ScheduleObjective(const SchedulingInstance& inst)
      : slot_symbols_(inst.slot_symbols), trained_(inst.num_groups, 0.0), stale_(inst.num_groups, 0.0) {
    inst.validate();
    for (std::size_t g = 0; g < inst.num_groups; ++g) {
      for (std::size_t l = 0; l < inst.num_cells; ++l) {
        const double w = inst.weights[g * inst.num_cells + l];
        if (w == 0.0) continue;
        trained_[g] += w * scheduled_rate(inst, g, l);
        stale_[g] += w * unscheduled_rate(inst, g, l);
      }
    }
  }

  double operator()(const ScheduleVector& y) const {
    if (y.size() != trained_.size()) throw ConfigError("schedule length does not match N_g");
    const std::size_t n = y.count();
    if (n > slot_symbols_) throw ConstraintViolation("more groups trained than symbols in a slot");
    double sum = 0.0;
    for (std::size_t g = 0; g < trained_.size(); ++g) sum += y.selected(g) ? trained_[g] : stale_[g];
    return training_prefactor(n, slot_symbols_) * sum;
  }

  double trained_term(std::size_t g) const { return trained_[g]; }
  double stale_term(std::size_t g) const { return stale_[g]; }
  std::size_t num_groups() const { return trained_.size(); }

 private:
  std::size_t slot_symbols_;
  std::vector<double> trained_;
  std::vector<double> stale_;
};

// Weighted objective (1 - sum y / T_s) * sum_l sum_g w_gl R_gl(d, Y).
inline double objective(const SchedulingInstance& inst, const ScheduleVector& y) {
  return ScheduleObjective(inst)(y);
}

inline double marginal_gain(const ScheduleObjective& f, const ScheduleVector& x, std::size_t n) {
  if (x.selected(n)) throw AlreadySelected("group " + std::to_string(n) + " already selected");
  ScheduleVector xn = x;
  xn.set(n, true);
  return f(xn) - f(x);
}

inline double marginal_gain(const SchedulingInstance& inst, const ScheduleVector& x, std::size_t n) {
  return marginal_gain(ScheduleObjective(inst), x, n);
}

struct ApproxConfig {
  double local_search_eps = 0.1;
  // Stop greedy once no candidate has positive gain (objective is
  // non-monotone); false runs greedy to exactly tau elements.
  bool greedy_stop_on_nonpositive = true;

  // A local optimum accepted at relative threshold (1 + eps/n^2) is within a
  // (1 + eps) factor of an exact one; carried through the factor-4 analysis
  // this gives 4(1 + eps) = 4 + alpha.
  double alpha() const { return 4.0 * local_search_eps; }
  double guarantee_factor() const { return 4.0 + alpha(); }
};

namespace detail {

inline std::vector<std::uint8_t> full_ground_set(std::size_t n) { return std::vector<std::uint8_t>(n, 1); }

}  // namespace detail

// Greedy over the groups flagged in `allowed` (all when empty); ties go to
// the lowest group index. Gains within 1e-12 relative of each other count
// as ties, since summation order alone separates otherwise equal groups.
inline ScheduleVector greedy_select(const ScheduleObjective& f, std::size_t max_trained, const ApproxConfig& cfg = {},
                                    std::vector<std::uint8_t> allowed = {}) {
  const std::size_t N = f.num_groups();
  if (allowed.empty()) allowed = detail::full_ground_set(N);
  ScheduleVector s(N);
  double current = f(s);
  while (s.count() < max_trained) {
    std::size_t best = N;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < N; ++n) {
      if (!allowed[n] || s.selected(n)) continue;
      ScheduleVector t = s;
      t.set(n, true);
      const double gain = f(t) - current;
      const double tie = 1e-12 * std::max(std::abs(current), std::abs(gain));
      if (best == N || gain > best_gain + tie) {
        best_gain = gain;
        best = n;
      }
    }
    if (best == N) break;
    if (cfg.greedy_stop_on_nonpositive && !(best_gain > 0.0)) break;
    s.set(best, true);
    current = f(s);
  }
  return s;
}

inline ScheduleVector greedy_select(const SchedulingInstance& inst, const ApproxConfig& cfg = {}) {
  return greedy_select(ScheduleObjective(inst), inst.max_trained, cfg);
}

// Add / delete / swap local search. A move is taken only when it raises the
// objective by more than a factor (1 + eps / n^2), n the ground-set size.
// Moves are scanned add, delete, swap in ascending group order and the
// first admissible one is applied.
inline ScheduleVector local_search(const ScheduleObjective& f, std::size_t max_trained, ScheduleVector start,
                                   const ApproxConfig& cfg = {}, std::vector<std::uint8_t> allowed = {}) {
  const std::size_t N = f.num_groups();
  if (allowed.empty()) allowed = detail::full_ground_set(N);
  if (start.size() != N) throw ConfigError("local_search: start has wrong length");
  if (start.count() > max_trained) throw ConstraintViolation("local_search: start exceeds tau");
  std::size_t ground = 0;
  for (std::size_t n = 0; n < N; ++n) {
    if (allowed[n]) ++ground;
    if (start.selected(n) && !allowed[n]) throw ConstraintViolation("local_search: start outside ground set");
  }
  if (!(cfg.local_search_eps > 0.0)) throw ConfigError("local_search: eps must be > 0");
  if (ground == 0) return start;
  const double factor = 1.0 + cfg.local_search_eps / (static_cast<double>(ground) * static_cast<double>(ground));

  ScheduleVector s = std::move(start);
  double value = f(s);
  auto try_move = [&](const ScheduleVector& t) {
    const double v = f(t);
    if (v > factor * value) {
      s = t;
      value = v;
      return true;
    }
    return false;
  };
  bool improved = true;
  while (improved) {
    improved = false;
    if (s.count() < max_trained) {
      for (std::size_t n = 0; n < N && !improved; ++n) {
        if (!allowed[n] || s.selected(n)) continue;
        ScheduleVector t = s;
        t.set(n, true);
        improved = try_move(t);
      }
    }
    for (std::size_t n = 0; n < N && !improved; ++n) {
      if (!s.selected(n)) continue;
      ScheduleVector t = s;
      t.set(n, false);
      improved = try_move(t);
    }
    for (std::size_t out = 0; out < N && !improved; ++out) {
      if (!s.selected(out)) continue;
      for (std::size_t in = 0; in < N && !improved; ++in) {
        if (!allowed[in] || s.selected(in)) continue;
        ScheduleVector t = s;
        t.set(out, false);
        t.set(in, true);
        improved = try_move(t);
      }
    }
  }
  return s;
}

inline ScheduleVector local_search(const SchedulingInstance& inst, const ScheduleVector& start,
                                   const ApproxConfig& cfg = {}) {
  return local_search(ScheduleObjective(inst), inst.max_trained, start, cfg);
}

struct SubmodResult {
  ScheduleVector schedule;
  double objective = 0.0;
  double alpha = 0.0;
  double guarantee_factor = 0.0;
  std::array<ScheduleVector, 4> candidates;  // greedy, local search, and both again on the complement
  std::array<double, 4> candidate_objectives{};
};

// Greedy on the full ground set (S1), local search from S1 (S2), then the
// same two steps restricted to the groups outside S1 (S3, S4); the best of
// the four is returned, earliest on ties.
inline SubmodResult submod_max_cardinality(const SchedulingInstance& inst, const ApproxConfig& cfg = {}) {
  const ScheduleObjective f(inst);
  const std::size_t N = inst.num_groups;
  SubmodResult r;
  r.alpha = cfg.alpha();
  r.guarantee_factor = cfg.guarantee_factor();
  r.candidates[0] = greedy_select(f, inst.max_trained, cfg);
  r.candidates[1] = local_search(f, inst.max_trained, r.candidates[0], cfg);
  std::vector<std::uint8_t> rest(N, 1);
  for (std::size_t g : r.candidates[0].indices()) rest[g] = 0;
  r.candidates[2] = greedy_select(f, inst.max_trained, cfg, rest);
  r.candidates[3] = local_search(f, inst.max_trained, r.candidates[2], cfg, rest);
  std::size_t best = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    r.candidate_objectives[i] = f(r.candidates[i]);
    if (r.candidate_objectives[i] > r.candidate_objectives[best]) best = i;
  }
  r.schedule = r.candidates[best];
  r.objective = r.candidate_objectives[best];
  return r;
}

inline constexpr std::size_t kBruteForceMaxGroups = 20;

struct BruteForceResult {
  ScheduleVector schedule;
  double objective = 0.0;
  std::size_t evaluated = 0;
};

// Exhaustive maximisation over every Y with sum y <= tau. Subsets are
// visited in increasing bitmask order; the first maximiser wins.
inline BruteForceResult brute_force_schedule(const SchedulingInstance& inst) {
  const std::size_t N = inst.num_groups;
  if (N > kBruteForceMaxGroups) {
    throw TooLarge("brute_force_schedule: N_g = " + std::to_string(N) + " exceeds guard " +
                   std::to_string(kBruteForceMaxGroups));
  }
  const ScheduleObjective f(inst);
  BruteForceResult best;
  best.objective = -std::numeric_limits<double>::infinity();
  const std::uint64_t limit = std::uint64_t{1} << N;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > inst.max_trained) continue;
    ScheduleVector y(N);
    for (std::size_t g = 0; g < N; ++g) {
      if (mask >> g & 1U) y.set(g, true);
    }
    const double v = f(y);
    ++best.evaluated;
    if (v > best.objective) {
      best.objective = v;
      best.schedule = y;
    }
  }
  return best;
}

// Trained groups restart at delay 0; the rest age by one slot.
inline std::vector<int> advance_delays(const std::vector<int>& delays, const ScheduleVector& y) {
  if (delays.size() != y.size()) throw ConfigError("advance_delays: length mismatch");
  std::vector<int> next(delays.size());
  for (std::size_t g = 0; g < delays.size(); ++g) next[g] = y.selected(g) ? 0 : delays[g] + 1;
  return next;
}

// Instance over all grouped users of a scenario.
inline SchedulingInstance make_scheduling_instance(const Scenario& scenario, const CopilotGroups& groups,
                                                   const std::vector<int>& delays, const std::vector<double>& weights,
                                                   std::size_t max_trained, std::size_t antennas,
                                                   TrainingEffect effect = TrainingEffect::kRefreshNumerator) {
  SchedulingInstance inst;
  inst.num_groups = groups.num_groups();
  inst.num_cells = scenario.num_cells();
  inst.slot_symbols = scenario.config().slot_symbols;
  inst.max_trained = max_trained;
  inst.delays = delays;
  inst.weights = weights;
  inst.effect = effect;
  for (std::size_t g = 0; g < inst.num_groups; ++g) {
    for (std::size_t l = 0; l < inst.num_cells; ++l) {
      inst.inputs.push_back(make_rate_inputs(scenario, groups, g, l, 0, 0, antennas));
    }
  }
  inst.validate();
  return inst;
}

}  // namespace ctmimo

#endif  // CTMIMO_SCHEDULER_HPP_
