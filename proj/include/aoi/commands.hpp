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

// Subcommand bodies behind the aoi-edge executable. Each returns the process
// exit code: 0 success, 1 internal error, 2 config error, 3 infeasible policy.

#ifndef AOI_COMMANDS_HPP
#define AOI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace aoi {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitInfeasible = 3,
};

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> policy;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> frames;
  std::optional<std::int64_t> warmup;
  std::optional<double> V;
  int jobs = 1;
  std::string out;    // empty = stdout
  std::string trace;  // simulate only; empty = no trace
  // sweep / bounds
  std::string variable = "sum_arrival_scale";
  std::vector<double> grid;
  int seeds = 1;
  std::vector<std::string> policies;
  // validate
  bool inject_fault = false;
};

int cmd_simulate(const CommandOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_sweep(const CommandOptions& options, std::ostream& out,
              std::ostream& err);
int cmd_region(const CommandOptions& options, std::ostream& out,
               std::ostream& err);
int cmd_bounds(const CommandOptions& options, std::ostream& out,
               std::ostream& err);
int cmd_validate(const CommandOptions& options, std::ostream& out,
                 std::ostream& err);

}  // namespace aoi

#endif  // AOI_COMMANDS_HPP
