// Copyright 2026 The aoi-edge Authors
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

#include <iostream>

#include <CLI11.hpp>

#include "aoi/commands.hpp"

namespace {

void add_common(CLI::App* app, aoi::CommandOptions& o) {
  app->add_option("--config", o.config_path, "JSON system configuration");
  app->add_option("--out", o.out, "output CSV (default: stdout)");
  app->add_option("--V", o.V, "override the tradeoff weight V");
  app->add_option("--policy", o.policy, "stochastic | dpp | fixed_window");
}

void add_run(CLI::App* app, aoi::CommandOptions& o) {
  app->add_option("--seed", o.seed, "master seed");
  app->add_option("--frames", o.frames, "horizon in frames");
  app->add_option("--warmup", o.warmup, "frames excluded from averages");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-of-information vs. delay slot scheduling simulator"};
  app.require_subcommand(1);
  aoi::CommandOptions o;

  auto* simulate = app.add_subcommand("simulate", "run one policy");
  add_common(simulate, o);
  add_run(simulate, o);
  simulate->add_option("--trace", o.trace, "per-frame trace CSV");

  auto* sweep = app.add_subcommand("sweep", "sweep load or V");
  add_common(sweep, o);
  add_run(sweep, o);
  sweep->add_option("--variable", o.variable, "sum_arrival_scale | V");
  sweep->add_option("--grid", o.grid, "grid values")->required()->delimiter(',');
  sweep->add_option("--seeds", o.seeds, "seeds per grid point");
  sweep->add_option("--policies", o.policies, "policies to compare")
      ->delimiter(',');
  sweep->add_option("--jobs", o.jobs, "concurrent runs");

  auto* region = app.add_subcommand("region", "region membership of lambda");
  add_common(region, o);

  auto* bounds = app.add_subcommand("bounds", "performance guarantees");
  add_common(bounds, o);
  bounds->add_option("--grid", o.grid, "V values")->delimiter(',');

  auto* validate = app.add_subcommand("validate", "self-validation campaigns");
  validate->add_option("--seed", o.seed, "master seed");
  validate->add_option("--out", o.out, "output CSV (default: stdout)");
  validate->add_flag("--inject-fault", o.inject_fault,
                     "corrupt the knapsack solver (self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : aoi::kExitConfig;
  }

  if (*simulate) return aoi::cmd_simulate(o, std::cout, std::cerr);
  if (*sweep) return aoi::cmd_sweep(o, std::cout, std::cerr);
  if (*region) return aoi::cmd_region(o, std::cout, std::cerr);
  if (*bounds) return aoi::cmd_bounds(o, std::cout, std::cerr);
  return aoi::cmd_validate(o, std::cout, std::cerr);
}
