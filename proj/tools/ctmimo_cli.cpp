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

// Command-line front end: experiment runners, one-shot scheduling and the
// quick validation suite. Exit codes: 0 success, 1 configuration error,
// 2 runtime or numerical failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ctmimo/config.hpp"
#include "ctmimo/error.hpp"
#include "ctmimo/harness.hpp"
#include "ctmimo/scheduler.hpp"
#include "ctmimo/scheduler_io.hpp"
#include "ctmimo/validation.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> drops;
  std::optional<std::string> mode;
  std::optional<std::size_t> threads;
  std::string out = "results";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "key = value experiment config file");
  cmd->add_option("--seed", f.seed, "base RNG seed (overrides the config)");
  cmd->add_option("--out", f.out, "output directory")->capture_default_str();
  cmd->add_option("--drops", f.drops, "Monte-Carlo drops per point");
  cmd->add_option("--mode", f.mode, "closed_form | monte_carlo | both");
  cmd->add_option("--threads", f.threads, "worker threads for Monte-Carlo drops");
}

ctmimo::ExperimentSpec build_spec(const CommonFlags& f, const ctmimo::ExperimentSpec& defaults) {
  ctmimo::ExperimentSpec spec = f.config.empty() ? defaults : ctmimo::load_config(f.config, defaults);
  if (f.seed) spec.seed = *f.seed;
  if (f.drops) spec.num_drops = *f.drops;
  if (f.mode) spec.mode = ctmimo::eval_mode_from_string(*f.mode);
  if (f.threads) spec.threads = *f.threads;
  spec.validate();
  return spec;
}

void write_schedule_csv(const std::filesystem::path& p, const ctmimo::SchedulingInstance& inst,
                        const ctmimo::ScheduleVector& y) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ctmimo::IoError("cannot write '" + p.string() + "'");
  const auto next = ctmimo::advance_delays(inst.delays, y);
  os << "group,selected,delay,next_delay\n";
  for (std::size_t g = 0; g < inst.num_groups; ++g) {
    os << g << ',' << (y.selected(g) ? 1 : 0) << ',' << inst.delays[g] << ',' << next[g] << '\n';
  }
}

int run_schedule(const CommonFlags& f, const std::string& instance_path) {
  ctmimo::ExperimentSpec spec = build_spec(f, {});
  ctmimo::SchedulingInstance inst;
  if (!instance_path.empty()) {
    inst = ctmimo::read_instance(instance_path);
  } else {
    const auto setup = ctmimo::prepare_redraw(spec, 0);
    inst = ctmimo::make_scheduling_instance(setup.scenario, setup.groups, setup.delays, setup.weights, spec.tau,
                                            spec.antennas.front(), spec.training_effect);
  }
  ctmimo::ApproxConfig cfg;
  cfg.local_search_eps = spec.local_search_eps;
  const auto res = ctmimo::submod_max_cardinality(inst, cfg);
  std::optional<ctmimo::BruteForceResult> oracle;
  if (inst.num_groups <= std::min(spec.oracle_max_groups, ctmimo::kBruteForceMaxGroups)) {
    oracle = ctmimo::brute_force_schedule(inst);
  }
  const std::filesystem::path out(f.out);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw ctmimo::IoError("cannot create output directory '" + out.string() + "': " + ec.message());
  ctmimo::write_instance(inst, out / "instance.json");
  {
    std::ofstream os(out / "result.json", std::ios::binary);
    if (!os) throw ctmimo::IoError("cannot write '" + (out / "result.json").string() + "'");
    os << ctmimo::result_to_json(res, inst, oracle ? &*oracle : nullptr).dump(2) << '\n';
  }
  write_schedule_csv(out / "schedule.csv", inst, res.schedule);
  std::printf("selected %zu of %zu groups (tau = %zu), objective %.10g, guarantee factor %.3g\n",
              res.schedule.count(), inst.num_groups, inst.max_trained, res.objective, res.guarantee_factor);
  if (oracle) std::printf("exhaustive optimum %.10g (%zu subsets)\n", oracle->objective, oracle->evaluated);
  return 0;
}

int run_validate() {
  bool all = true;
  for (const auto& r : ctmimo::run_validation_suite()) {
    std::printf("%s  %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    all = all && r.passed;
  }
  return all ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-time-aware uplink training: rate bounds, simulation and group scheduling"};
  app.require_subcommand(1);

  CommonFlags cdf_f, rate_f, tau_f, sched_f;
  auto* cdf = app.add_subcommand("cdf", "per-user spectral-efficiency CDFs, proposed vs reference");
  add_common(cdf, cdf_f);
  auto* rate = app.add_subcommand("rate-vs-m", "bound and simulated rates versus antenna count");
  add_common(rate, rate_f);
  auto* wtau = app.add_subcommand("weighted-vs-tau", "scheduled weighted objective versus tau");
  add_common(wtau, tau_f);
  auto* sched = app.add_subcommand("schedule", "schedule one slot for a serialized or generated instance");
  add_common(sched, sched_f);
  std::string instance_path;
  sched->add_option("--instance", instance_path, "scheduling instance JSON (default: generate from config)");
  auto* val = app.add_subcommand("validate", "run the quick property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    auto run_experiment = [](const CommonFlags& f, const ctmimo::ExperimentSpec& defaults, auto runner) {
      const auto spec = build_spec(f, defaults);
      const auto report = runner(spec);
      ctmimo::emit_report(report, f.out);
      ctmimo::print_summary(report, std::cout);
      std::printf("wrote %s/{users.csv,summary.csv,manifest.txt}\n", f.out.c_str());
      return 0;
    };
    if (*cdf) return run_experiment(cdf_f, {}, ctmimo::run_cdf_experiment);
    if (*rate) {
      ctmimo::ExperimentSpec d;
      d.scenario.users_per_cell = 10;
      d.tau = 5;
      d.antennas = {10, 20, 50, 100, 200};
      d.mode = ctmimo::EvalMode::kBoth;
      return run_experiment(rate_f, d, ctmimo::run_rate_vs_M);
    }
    if (*wtau) {
      ctmimo::ExperimentSpec d;
      d.scenario.users_per_cell = 20;
      d.antennas = {100};
      d.d_max = 3;
      return run_experiment(tau_f, d, ctmimo::run_weighted_vs_tau);
    }
    if (*sched) return run_schedule(sched_f, instance_path);
    if (*val) return run_validate();
  } catch (const ctmimo::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}
