// Copyright 2026 The uniterp Authors
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


// Command line front end for the benchmark harness and the acceptance suite.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uniterp/acceptance.hpp"
#include "uniterp/bench.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitThreshold = 3;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config) {
  auto* opt = cmd->add_option("--config", c.config, "run configuration (JSON)");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "override the configuration seed");
  cmd->add_option("--out", c.out, "output path (CSV or JSON)");
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

uniterp::RunConfig load(const Common& c) {
  uniterp::Json j = uniterp::read_json_file(c.config);
  if (!j.is_object()) throw uniterp::ConfigError("config must be a JSON object");
  if (c.seed) j["seed"] = *c.seed;
  if (c.threads) j["threads"] = *c.threads;
  if (!c.out.empty()) j["out"] = c.out;
  return uniterp::RunConfig::from_json(j);
}

std::string out_path(const uniterp::RunConfig& cfg, const std::string& fallback) {
  return cfg.out.empty() ? fallback : cfg.out;
}

void print_slopes(const uniterp::RunConfig& cfg, const uniterp::SweepResult& s, bool timing) {
  if (s.axis == "none") return;
  for (auto m : cfg.methods) {
    const auto y = timing ? s.times(m) : s.means(m);
    if (y.size() < 2) continue;
    std::printf("%-12s log-log slope vs %s: %.3f\n", uniterp::method_name(m).c_str(), s.axis.c_str(),
                uniterp::loglog_slope(s.values(m), y));
  }
}

int run_validate(const Common& c, const std::vector<int>& only) {
  uniterp::AcceptanceOptions opt;
  if (c.seed) opt.seed = *c.seed;
  if (c.threads) opt.threads = *c.threads;
  for (int id : only) {
    if (id < 1 || id > uniterp::kNumCriteria) throw uniterp::ConfigError("no criterion " + std::to_string(id));
    opt.only.insert(id);
  }
  std::FILE* log = c.out.empty() ? nullptr : std::fopen(c.out.c_str(), "w");
  if (!c.out.empty() && !log) throw uniterp::ConfigError("cannot write " + c.out);
  const auto results = uniterp::run_acceptance(opt, [&](const uniterp::CriterionResult& r) {
    const std::string line = uniterp::format_result(r);
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    if (log) std::fprintf(log, "%s\n", line.c_str());
  });
  if (log) std::fclose(log);
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed ? kExitThreshold : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniterp: unitary interpolation benchmarks"};
  app.require_subcommand(1);
  Common common;
  std::vector<int> only;
  auto* converge = app.add_subcommand("converge", "infidelity versus bins, steps or amplitude");
  auto* map = app.add_subcommand("map", "infidelity over a two-parameter grid");
  auto* timing = app.add_subcommand("timing", "wall time per evaluation");
  auto* optbins = app.add_subcommand("optbins", "optimize bins for a target infidelity");
  auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
  for (auto* cmd : {converge, map, timing, optbins}) add_common(cmd, common, true);
  add_common(validate, common, false);
  validate->add_option("--only", only, "criterion ids to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (validate->parsed()) return run_validate(common, only);
    const uniterp::RunConfig cfg = load(common);
    if (converge->parsed()) {
      const auto sweep = uniterp::run_converge(cfg);
      const std::string path = out_path(cfg, "converge.csv");
      uniterp::write_sweep_csv(cfg, sweep, path);
      print_slopes(cfg, sweep, false);
      std::printf("wrote %s\n", path.c_str());
    } else if (map->parsed()) {
      const auto result = uniterp::run_map(cfg);
      const std::string path = out_path(cfg, "map.csv");
      uniterp::write_map_csv(cfg, result, path);
      std::printf("max infidelity %.6e\nwrote %s\n", result.max_infidelity, path.c_str());
    } else if (timing->parsed()) {
      const auto sweep = uniterp::run_timing(cfg);
      const std::string path = out_path(cfg, "timing.csv");
      uniterp::write_sweep_csv(cfg, sweep, path);
      print_slopes(cfg, sweep, true);
      std::printf("wrote %s\n", path.c_str());
    } else if (optbins->parsed()) {
      const auto result = uniterp::run_optbins(cfg);
      const std::string path = out_path(cfg, "optbins.json");
      uniterp::write_json_file(path, uniterp::optbins_report(cfg, result));
      std::printf("mean cache total %.1f, mean bin product %.1f, mean model error %.3e\nwrote %s\n",
                  result.cache_total.mean, result.bin_product.mean, result.rel_accuracy.mean, path.c_str());
    }
  } catch (const uniterp::ConfigError& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return 0;
}
