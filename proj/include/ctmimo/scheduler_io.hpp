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

#ifndef CTMIMO_SCHEDULER_IO_HPP_
#define CTMIMO_SCHEDULER_IO_HPP_

// JSON form of a SchedulingInstance and of a scheduling result.
//
// Instance:
//   { "format": "ctmimo-scheduling-instance/1",
//     "num_groups", "num_cells", "slot_symbols", "max_trained",
//     "antennas", "pilot_power", "uplink_power", "training_effect",
//     "delays": [d_g],
//     "users": [ { "group", "cell", "weight", "beta_row": [...],
//                  "rho_row": [...], "beta_others" } ] }
// Users are listed group-major; every (group, cell) pair appears once.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>  // nlohmann::json, vendored single header

#include "ctmimo/error.hpp"
#include "ctmimo/scheduler.hpp"

namespace ctmimo {

inline constexpr const char* kInstanceFormat = "ctmimo-scheduling-instance/1";

inline nlohmann::json instance_to_json(const SchedulingInstance& inst) {
  inst.validate();
  nlohmann::json j;
  j["format"] = kInstanceFormat;
  j["num_groups"] = inst.num_groups;
  j["num_cells"] = inst.num_cells;
  j["slot_symbols"] = inst.slot_symbols;
  j["max_trained"] = inst.max_trained;
  const RateBoundInputs& first = inst.inputs.front();
  j["antennas"] = first.antennas;
  j["pilot_power"] = first.pilot_power;
  j["uplink_power"] = first.uplink_power;
  j["training_effect"] = to_string(inst.effect);
  j["delays"] = inst.delays;
  auto users = nlohmann::json::array();
  for (std::size_t g = 0; g < inst.num_groups; ++g) {
    for (std::size_t l = 0; l < inst.num_cells; ++l) {
      const auto& in = inst.inputs[g * inst.num_cells + l];
      if (in.antennas != first.antennas || in.pilot_power != first.pilot_power ||
          in.uplink_power != first.uplink_power) {
        throw ConfigError("instance_to_json: antennas and powers must be shared by all users");
      }
      users.push_back({{"group", g},
                       {"cell", l},
                       {"weight", inst.weights[g * inst.num_cells + l]},
                       {"beta_row", in.beta_row},
                       {"rho_row", in.rho_row},
                       {"beta_others", in.beta_others}});
    }
  }
  j["users"] = std::move(users);
  return j;
}

inline SchedulingInstance instance_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kInstanceFormat) {
      throw ConfigError("unsupported instance format '" + j.at("format").get<std::string>() + "'");
    }
    SchedulingInstance inst;
    inst.num_groups = j.at("num_groups").get<std::size_t>();
    inst.num_cells = j.at("num_cells").get<std::size_t>();
    inst.slot_symbols = j.at("slot_symbols").get<std::size_t>();
    inst.max_trained = j.at("max_trained").get<std::size_t>();
    inst.effect = training_effect_from_string(j.at("training_effect").get<std::string>());
    inst.delays = j.at("delays").get<std::vector<int>>();
    const auto antennas = j.at("antennas").get<std::size_t>();
    const auto pilot_power = j.at("pilot_power").get<double>();
    const auto uplink_power = j.at("uplink_power").get<double>();
    const std::size_t users = inst.num_groups * inst.num_cells;
    inst.weights.assign(users, 0.0);
    inst.inputs.assign(users, RateBoundInputs{});
    std::vector<char> seen(users, 0);
    const auto& list = j.at("users");
    if (list.size() != users) throw ConfigError("instance: expected " + std::to_string(users) + " users");
    for (const auto& u : list) {
      const auto g = u.at("group").get<std::size_t>();
      const auto l = u.at("cell").get<std::size_t>();
      if (g >= inst.num_groups || l >= inst.num_cells) throw ConfigError("instance: user index out of range");
      const std::size_t idx = g * inst.num_cells + l;
      if (seen[idx]) throw ConfigError("instance: duplicate user entry");
      seen[idx] = 1;
      inst.weights[idx] = u.at("weight").get<double>();
      RateBoundInputs& in = inst.inputs[idx];
      in.antennas = antennas;
      in.slot_symbols = inst.slot_symbols;
      in.serving_cell = l;
      in.pilot_power = pilot_power;
      in.uplink_power = uplink_power;
      in.beta_row = u.at("beta_row").get<std::vector<double>>();
      in.rho_row = u.at("rho_row").get<std::vector<double>>();
      in.beta_others = u.at("beta_others").get<double>();
    }
    inst.validate();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed scheduling instance: ") + e.what());
  }
}

inline void write_instance(const SchedulingInstance& inst, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  os << instance_to_json(inst).dump(2) << '\n';
}

inline SchedulingInstance read_instance(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open instance file '" + path.string() + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return instance_from_json(j);
}

inline nlohmann::json result_to_json(const SubmodResult& r, const SchedulingInstance& inst,
                                     const BruteForceResult* oracle = nullptr) {
  static const char* names[4] = {"greedy", "greedy+local_search", "greedy_complement",
                                 "greedy_complement+local_search"};
  nlohmann::json j;
  j["selected"] = r.schedule.indices();
  j["objective"] = r.objective;
  j["alpha"] = r.alpha;
  j["guarantee_factor"] = r.guarantee_factor;
  auto cands = nlohmann::json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    cands.push_back({{"name", names[i]}, {"selected", r.candidates[i].indices()},
                     {"objective", r.candidate_objectives[i]}});
  }
  j["candidates"] = std::move(cands);
  j["next_delays"] = advance_delays(inst.delays, r.schedule);
  if (oracle != nullptr) {
    j["oracle"] = {{"selected", oracle->schedule.indices()}, {"objective", oracle->objective},
                   {"evaluated", oracle->evaluated}};
  }
  return j;
}

}  // namespace ctmimo

#endif  // CTMIMO_SCHEDULER_IO_HPP_
