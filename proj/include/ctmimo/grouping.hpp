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

#ifndef CTMIMO_GROUPING_HPP_
#define CTMIMO_GROUPING_HPP_

// Autocorrelation clustering and copilot-group formation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <utility>
#include <vector>

#include "ctmimo/error.hpp"
#include "ctmimo/netgen.hpp"
#include "ctmimo/random.hpp"

namespace ctmimo {

// Number of autocorrelation clusters: ceil(t_max / slot_duration).
inline std::size_t cluster_count(double t_max, double slot_duration) {
  if (!(t_max > 0.0) || !(slot_duration > 0.0)) {
    throw ConfigError("cluster_count needs positive t_max and slot duration");
  }
  const double ratio = t_max / slot_duration;
  // Absorb representation error so that e.g. 0.003 / 0.001 gives 3, not 4.
  return static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)));
}

struct ClusterModel {
  std::size_t num_clusters = 0;
  std::vector<double> centroids;         // ascending
  std::vector<std::size_t> assignment;   // value index -> cluster
  std::vector<double> objective_history; // within-cluster SS after each update
  std::size_t iterations = 0;
};

struct KMeansOptions {
  std::size_t max_iters = 100;
  double tolerance = 1e-9;  // max centroid movement at convergence
};

namespace detail {

inline std::size_t nearest_centroid(double v, const std::vector<double>& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = std::abs(v - centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

inline double within_cluster_ss(const std::vector<double>& values, const std::vector<std::size_t>& assign,
                                const std::vector<double>& centroids) {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - centroids[assign[i]];
    s += d * d;
  }
  return s;
}

}  // namespace detail

// Lloyd's algorithm on scalars with k-means++ seeding. Requested clusters
// that cannot be seeded (all remaining squared distances zero) or that end up
// empty are dropped, so num_clusters may be smaller than requested.
inline ClusterModel kmeans_1d(const std::vector<double>& values, std::size_t num_clusters, Rng& rng,
                              KMeansOptions options = {}) {
  if (values.empty()) throw EmptyInput("kmeans_1d: no values");
  if (num_clusters < 1) throw ConfigError("kmeans_1d: need at least one cluster");
  if (options.max_iters < 1) throw ConfigError("kmeans_1d: max_iters must be >= 1");
  const std::size_t n = values.size();

  std::vector<double> centroids;
  centroids.push_back(values[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1))]);
  std::vector<double> d2(n);
  while (centroids.size() < num_clusters) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = values[i] - centroids[detail::nearest_centroid(values[i], centroids)];
      d2[i] = d * d;
      total += d2[i];
    }
    if (total <= 0.0) break;
    const double target = rng.uniform(0.0, total);
    double acc = 0.0;
    std::size_t pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      acc += d2[i];
      if (acc > target && d2[i] > 0.0) {
        pick = i;
        break;
      }
    }
    centroids.push_back(values[pick]);
  }

  ClusterModel model;
  std::vector<std::size_t> assign(n, 0);
  for (std::size_t it = 0; it < options.max_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) assign[i] = detail::nearest_centroid(values[i], centroids);
    std::vector<double> sum(centroids.size(), 0.0);
    std::vector<std::size_t> count(centroids.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[assign[i]] += values[i];
      ++count[assign[i]];
    }
    double moved = 0.0;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      if (count[c] == 0) continue;  // empty: keep position, dropped below
      const double next = sum[c] / static_cast<double>(count[c]);
      moved = std::max(moved, std::abs(next - centroids[c]));
      centroids[c] = next;
    }
    model.objective_history.push_back(detail::within_cluster_ss(values, assign, centroids));
    model.iterations = it + 1;
    if (moved <= options.tolerance) break;
  }

  // Keep occupied clusters, merge exact duplicates, sort ascending.
  std::vector<std::size_t> occupancy(centroids.size(), 0);
  for (std::size_t i = 0; i < n; ++i) ++occupancy[assign[i]];
  std::vector<double> kept;
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    if (occupancy[c] > 0) kept.push_back(centroids[c]);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  model.centroids = std::move(kept);
  model.num_clusters = model.centroids.size();
  model.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) model.assignment[i] = detail::nearest_centroid(values[i], model.centroids);
  return model;
}

// Clustering key: each user's autocorrelation towards its serving BS,
// flattened as [cell * K + user].
inline std::vector<double> serving_rho_values(const Scenario& scenario) {
  std::vector<double> v;
  v.reserve(scenario.num_cells() * scenario.users_per_cell());
  for (std::size_t b = 0; b < scenario.num_cells(); ++b) {
    for (std::size_t i = 0; i < scenario.users_per_cell(); ++i) v.push_back(scenario.serving_rho(b, i));
  }
  return v;
}

struct GroupExtrema {
  double rho_min = 1.0;
  double rho_max = 1.0;
};

// Users sharing one pilot sequence, one per cell, with a common CSI delay.
struct CopilotGroups {
  std::vector<std::vector<std::size_t>> members;  // [group][cell] -> user index in that cell
  std::vector<int> delays;                        // d_g, slots
  std::vector<GroupExtrema> extrema;              // serving-BS rho range per group

  std::size_t num_groups() const { return members.size(); }
  std::size_t user(std::size_t group, std::size_t cell) const { return members[group][cell]; }
};

inline GroupExtrema group_extrema(const std::vector<std::size_t>& group, const Scenario& scenario) {
  if (group.empty()) throw EmptyInput("group_extrema: empty group");
  GroupExtrema e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t c = 0; c < group.size(); ++c) {
    const double r = scenario.serving_rho(c, group[c]);
    e.rho_min = std::min(e.rho_min, r);
    e.rho_max = std::max(e.rho_max, r);
  }
  return e;
}

// Builds N_g = K groups of exactly C users. Clusters are visited from the
// highest centroid down; inside a cluster each cell's users are sorted by
// serving rho (descending, ties by user index) and matched by rank. Users
// left over because another cell has fewer members in that cluster spill
// into the next cluster in centroid order.
inline CopilotGroups form_copilot_groups(const Scenario& scenario, const ClusterModel& model) {
  const std::size_t C = scenario.num_cells();
  const std::size_t K = scenario.users_per_cell();
  if (model.assignment.size() != C * K) {
    throw ConfigError("cluster model does not match scenario user count");
  }
  auto by_rho_desc = [&](std::size_t cell) {
    return [&scenario, cell](std::size_t a, std::size_t b) {
      const double ra = scenario.serving_rho(cell, a);
      const double rb = scenario.serving_rho(cell, b);
      if (ra != rb) return ra > rb;
      return a < b;
    };
  };

  CopilotGroups groups;
  std::vector<std::vector<std::size_t>> carry(C);
  for (std::size_t q = model.num_clusters; q-- > 0;) {
    std::vector<std::vector<std::size_t>> pool = carry;
    for (std::size_t b = 0; b < C; ++b) {
      for (std::size_t i = 0; i < K; ++i) {
        if (model.assignment[b * K + i] == q) pool[b].push_back(i);
      }
      std::sort(pool[b].begin(), pool[b].end(), by_rho_desc(b));
    }
    std::size_t full = pool[0].size();
    for (const auto& p : pool) full = std::min(full, p.size());
    for (std::size_t r = 0; r < full; ++r) {
      std::vector<std::size_t> g(C);
      for (std::size_t b = 0; b < C; ++b) g[b] = pool[b][r];
      groups.members.push_back(std::move(g));
    }
    for (std::size_t b = 0; b < C; ++b) carry[b].assign(pool[b].begin() + static_cast<std::ptrdiff_t>(full), pool[b].end());
  }
  groups.delays.assign(groups.members.size(), 0);
  for (const auto& g : groups.members) groups.extrema.push_back(group_extrema(g, scenario));
  return groups;
}

// CSV: group,cell,user,rho,delay
inline void write_groups_csv(std::ostream& os, const CopilotGroups& groups, const Scenario& scenario) {
  os << "group,cell,user,rho,delay\n";
  char buf[64];
  for (std::size_t g = 0; g < groups.num_groups(); ++g) {
    for (std::size_t c = 0; c < groups.members[g].size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", scenario.serving_rho(c, groups.members[g][c]));
      os << g << ',' << c << ',' << groups.members[g][c] << ',' << buf << ',' << groups.delays[g] << '\n';
    }
  }
}

}  // namespace ctmimo

#endif  // CTMIMO_GROUPING_HPP_
