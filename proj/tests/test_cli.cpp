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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

const fs::path kDir = fs::temp_directory_path() / "ctmimo_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(CTMIMO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

fs::path write_config(const std::string& name, const std::string& body) {
  fs::create_directories(kDir);
  const auto p = kDir / name;
  std::ofstream(p) << body;
  return p;
}

const char* kSmall =
    "users_per_cell = 5\n"
    "tau = 2\n"
    "antennas = 16, 32\n"
    "num_redraws = 2\n"
    "num_drops = 20\n";

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("cdf --config " + write_config("bad.cfg", "nonsense_key = 3\n").string()), 1);
  EXPECT_EQ(run("cdf --config /nonexistent.cfg"), 1);
  EXPECT_EQ(run("cdf --mode fastest --out " + (kDir / "x").string()), 1);
  EXPECT_EQ(run("cdf --config " + write_config("cells.cfg", "num_cells = 3\n").string()), 1);
  EXPECT_EQ(run("schedule --instance /nonexistent.json"), 1);
}

TEST(Cli, CdfIsByteReproducible) {
  const auto cfg = write_config("small.cfg", kSmall).string();
  const auto a = kDir / "cdf_a", b = kDir / "cdf_b", c = kDir / "cdf_c";
  ASSERT_EQ(run("cdf --config " + cfg + " --seed 5 --out " + a.string()), 0);
  ASSERT_EQ(run("cdf --config " + cfg + " --seed 5 --out " + b.string()), 0);
  ASSERT_EQ(run("cdf --config " + cfg + " --seed 6 --out " + c.string()), 0);
  EXPECT_EQ(slurp(a / "users.csv"), slurp(b / "users.csv"));
  EXPECT_EQ(slurp(a / "summary.csv"), slurp(b / "summary.csv"));
  EXPECT_NE(slurp(a / "users.csv"), slurp(c / "users.csv"));
  EXPECT_NE(slurp(a / "manifest.txt").find("seed = 5"), std::string::npos);
}

TEST(Cli, MonteCarloThreadsDoNotChangeOutput) {
  const auto cfg = write_config("small.cfg", kSmall).string();
  const auto a = kDir / "mc_a", b = kDir / "mc_b";
  ASSERT_EQ(run("rate-vs-m --config " + cfg + " --mode both --drops 15 --out " + a.string()), 0);
  ASSERT_EQ(run("rate-vs-m --config " + cfg + " --mode both --drops 15 --threads 3 --out " + b.string()), 0);
  EXPECT_EQ(slurp(a / "users.csv"), slurp(b / "users.csv"));
  EXPECT_EQ(slurp(a / "summary.csv"), slurp(b / "summary.csv"));
}

TEST(Cli, ScheduleRoundTripsThroughInstanceFile) {
  const auto cfg = write_config("sched.cfg", "users_per_cell = 8\ntau = 3\nantennas = 64\nd_max = 3\n").string();
  const auto a = kDir / "sched_a", b = kDir / "sched_b";
  ASSERT_EQ(run("schedule --config " + cfg + " --out " + a.string()), 0);
  ASSERT_EQ(run("schedule --instance " + (a / "instance.json").string() + " --out " + b.string()), 0);
  EXPECT_EQ(slurp(a / "result.json"), slurp(b / "result.json"));
  EXPECT_EQ(slurp(a / "schedule.csv"), slurp(b / "schedule.csv"));
  EXPECT_NE(slurp(a / "result.json").find("\"oracle\""), std::string::npos);
}

TEST(Cli, WeightedVsTau) {
  const auto cfg = write_config("wtau.cfg", "users_per_cell = 6\ntau = 3\nnum_redraws = 1\nantennas = 50\n").string();
  const auto a = kDir / "wtau";
  ASSERT_EQ(run("weighted-vs-tau --config " + cfg + " --out " + a.string()), 0);
  EXPECT_NE(slurp(a / "summary.csv").find("oracle,proposed"), std::string::npos);
}

TEST(Cli, Validate) { EXPECT_EQ(run("validate"), 0); }

}  // namespace
