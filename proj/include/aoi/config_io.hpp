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

// JSON configuration files.
//
//   {
//     "M": 2, "N": 12, "Kbar": 2, "V": 10, "V0": "auto",
//     "uplink_mode": "direct", "uplink_kappa_pmf": [0.5, 0.5],
//     "lambda": [[0.3, 0.2], [0.4, 0.3]],
//     "policy": "dpp"
//   }
//
// Physical mode replaces uplink_kappa_pmf with lengths, channel_states,
// channel_transition and optional bandwidth, slot_duration, power_sn,
// power_bs, noise_bs, noise_mu. "lambda" may be omitted for sweeps.

#ifndef AOI_CONFIG_IO_HPP
#define AOI_CONFIG_IO_HPP

#include <string>

#include "aoi/model.hpp"
#include "aoi/policies.hpp"

namespace aoi {

struct LoadedConfig {
  SystemConfig system;
  PolicySettings policy;
  bool has_lambda = false;
};

/// Parses and validates JSON text. An absent lambda loads as zeros.
/// Throws ConfigError.
LoadedConfig parse_config(const std::string& text);

/// Reads and parses a file. Throws ConfigError.
LoadedConfig load_config(const std::string& path);

}  // namespace aoi

#endif  // AOI_CONFIG_IO_HPP
