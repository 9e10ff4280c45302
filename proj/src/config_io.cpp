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

#include "aoi/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace aoi {
namespace {

using nlohmann::json;

RateMatrix read_matrix(const json& j, const char* key) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(std::string(key) + " must be a non-empty 2-D array");
  }
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.front().size());
  RateMatrix out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ConfigError(std::string(key) + " rows must have equal length");
    }
    for (Index c = 0; c < cols; ++c) {
      out(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return out;
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

LoadedConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  LoadedConfig out;
  SystemConfig& s = out.system;
  s.M = j.at("M").get<int>();
  s.N = j.at("N").get<int>();
  s.Kbar = j.at("Kbar").get<int>();
  maybe(j, "V", s.V);
  if (j.contains("V0")) {
    const json& v0 = j.at("V0");
    if (v0.is_string()) {
      if (v0.get<std::string>() != "auto") {
        throw ConfigError("V0 must be a number or \"auto\"");
      }
    } else {
      s.V0 = v0.get<double>();
    }
  }
  maybe(j, "lengths", s.lengths);
  maybe(j, "bandwidth", s.phy.bandwidth);
  maybe(j, "slot_duration", s.phy.slot_duration);
  maybe(j, "power_sn", s.phy.power_sn);
  maybe(j, "power_bs", s.phy.power_bs);
  maybe(j, "noise_bs", s.phy.noise_bs);
  maybe(j, "noise_mu", s.phy.noise_mu);

  const std::string mode = j.value("uplink_mode", std::string("direct"));
  if (mode == "direct") {
    s.uplink_mode = UplinkCostMode::kDirect;
  } else if (mode == "physical") {
    s.uplink_mode = UplinkCostMode::kPhysical;
  } else {
    throw ConfigError("uplink_mode must be \"direct\" or \"physical\"");
  }
  maybe(j, "uplink_kappa_pmf", s.uplink_kappa_pmf);
  maybe(j, "channel_states", s.channel.gains);
  if (j.contains("channel_transition")) {
    s.channel.transition =
        read_matrix(j.at("channel_transition"), "channel_transition");
  }

  if (j.contains("lambda")) {
    s.lambda = read_matrix(j.at("lambda"), "lambda");
    out.has_lambda = true;
  } else {
    s.lambda = RateMatrix::Zero(s.M, s.Kbar);
  }

  if (j.contains("policy")) {
    out.policy.kind = parse_policy_kind(j.at("policy").get<std::string>());
  }
  if (j.contains("window_thresholds")) {
    out.policy.window_thresholds =
        j.at("window_thresholds").get<std::vector<Count>>();
  }
  validate(s);
  return out;
}

}  // namespace

LoadedConfig parse_config(const std::string& text) {
  try {
    return from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace aoi
