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

#ifndef CTMIMO_SCENARIO_IO_HPP_
#define CTMIMO_SCENARIO_IO_HPP_

// Plain-text scenario bundle, one directory:
//   scenario.txt       key = value copy of the ScenarioConfig
//   bs_positions.csv   cell,x,y
//   users.csv          cell,user,x,y,velocity
//   links.csv          bs,cell,user,angle,beta,rho
// Reals are written with 17 significant digits so a bundle reads back to a
// bitwise-identical Scenario.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ctmimo/config.hpp"
#include "ctmimo/error.hpp"
#include "ctmimo/netgen.hpp"

namespace ctmimo {

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw IoError("cannot write '" + p.string() + "'");
  return os;
}

inline std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw IoError("cannot read '" + p.string() + "'");
  return is;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Rows of a headed CSV; checks the header and the column count.
inline std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p, const std::string& header) {
  auto is = open_in(p);
  std::string line;
  if (!std::getline(is, line) || trim(line) != header) {
    throw IoError("'" + p.string() + "': expected header '" + header + "'");
  }
  const std::size_t cols = split_csv(header).size();
  std::vector<std::vector<std::string>> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto row = split_csv(trim(line));
    if (row.size() != cols) {
      throw IoError("'" + p.string() + "':" + std::to_string(lineno) + ": expected " + std::to_string(cols) +
                    " columns");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline void write_scenario_bundle(const Scenario& s, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  using detail::fmt_double;
  const auto& c = s.config();
  {
    auto os = detail::open_out(dir / "scenario.txt");
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
       << "rng_seed = " << c.rng_seed << "\n";
  }
  const std::size_t C = s.num_cells();
  const std::size_t K = s.users_per_cell();
  {
    auto os = detail::open_out(dir / "bs_positions.csv");
    os << "cell,x,y\n";
    for (std::size_t j = 0; j < C; ++j) {
      os << j << ',' << fmt_double(s.bs_positions()[j].x) << ',' << fmt_double(s.bs_positions()[j].y) << '\n';
    }
  }
  {
    auto os = detail::open_out(dir / "users.csv");
    os << "cell,user,x,y,velocity\n";
    for (std::size_t b = 0; b < C; ++b) {
      for (std::size_t i = 0; i < K; ++i) {
        const Point2 p = s.user_position(b, i);
        os << b << ',' << i << ',' << fmt_double(p.x) << ',' << fmt_double(p.y) << ','
           << fmt_double(s.velocity(b, i)) << '\n';
      }
    }
  }
  {
    auto os = detail::open_out(dir / "links.csv");
    os << "bs,cell,user,angle,beta,rho\n";
    for (std::size_t j = 0; j < C; ++j) {
      for (std::size_t b = 0; b < C; ++b) {
        for (std::size_t i = 0; i < K; ++i) {
          os << j << ',' << b << ',' << i << ',' << fmt_double(s.angle(j, b, i)) << ','
             << fmt_double(s.beta(j, b, i)) << ',' << fmt_double(s.rho(j, b, i)) << '\n';
        }
      }
    }
  }
}

inline Scenario read_scenario_bundle(const std::filesystem::path& dir) {
  // scenario.txt shares the experiment key names apart from rng_seed.
  ScenarioConfig config;
  {
    auto is = detail::open_in(dir / "scenario.txt");
    std::stringstream filtered;
    std::string line;
    while (std::getline(is, line)) {
      const std::string t = detail::trim(line);
      if (t.rfind("rng_seed", 0) == 0) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw IoError("scenario.txt: malformed rng_seed line");
        config.rng_seed = detail::parse_uint(detail::trim(t.substr(eq + 1)), "scenario.txt (rng_seed)");
        continue;
      }
      filtered << line << '\n';
    }
    ExperimentSpec holder;
    holder.scenario = config;
    apply_config(holder, filtered, (dir / "scenario.txt").string());
    config = holder.scenario;
  }
  config.validate();
  const std::size_t C = config.num_cells;
  const std::size_t K = config.users_per_cell;
  auto index = [](const std::string& v, std::size_t bound, const char* what) {
    const auto i = detail::parse_uint(v, what);
    if (i >= bound) throw IoError(std::string(what) + " index out of range");
    return static_cast<std::size_t>(i);
  };

  std::vector<Point2> bs(C);
  const auto bs_rows = detail::read_csv(dir / "bs_positions.csv", "cell,x,y");
  if (bs_rows.size() != C) throw IoError("bs_positions.csv: expected " + std::to_string(C) + " rows");
  for (const auto& r : bs_rows) {
    const auto j = index(r[0], C, "bs_positions.csv cell");
    bs[j] = {detail::parse_double(r[1], "bs x"), detail::parse_double(r[2], "bs y")};
  }

  UserDrop drop;
  drop.num_cells = C;
  drop.users_per_cell = K;
  drop.positions.resize(C * K);
  drop.velocity.resize(C * K);
  drop.angle.resize(C * C * K);
  const auto user_rows = detail::read_csv(dir / "users.csv", "cell,user,x,y,velocity");
  if (user_rows.size() != C * K) throw IoError("users.csv: expected " + std::to_string(C * K) + " rows");
  for (const auto& r : user_rows) {
    const auto b = index(r[0], C, "users.csv cell");
    const auto i = index(r[1], K, "users.csv user");
    drop.positions[b * K + i] = {detail::parse_double(r[2], "user x"), detail::parse_double(r[3], "user y")};
    drop.velocity[b * K + i] = detail::parse_double(r[4], "user velocity");
  }

  std::vector<double> beta(C * C * K), rho(C * C * K);
  const auto link_rows = detail::read_csv(dir / "links.csv", "bs,cell,user,angle,beta,rho");
  if (link_rows.size() != C * C * K) throw IoError("links.csv: expected " + std::to_string(C * C * K) + " rows");
  for (const auto& r : link_rows) {
    const auto j = index(r[0], C, "links.csv bs");
    const auto b = index(r[1], C, "links.csv cell");
    const auto i = index(r[2], K, "links.csv user");
    const std::size_t idx = (j * C + b) * K + i;
    drop.angle[idx] = detail::parse_double(r[3], "link angle");
    beta[idx] = detail::parse_double(r[4], "link beta");
    rho[idx] = detail::parse_double(r[5], "link rho");
  }
  return Scenario(config, std::move(bs), std::move(drop), std::move(beta), std::move(rho));
}

}  // namespace ctmimo

#endif  // CTMIMO_SCENARIO_IO_HPP_
