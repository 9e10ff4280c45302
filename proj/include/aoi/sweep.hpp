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

// Parameter sweeps over the sum arrival rate or the tradeoff weight V.

#ifndef AOI_SWEEP_HPP
#define AOI_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aoi/model.hpp"
#include "aoi/policies.hpp"
#include "aoi/simulator.hpp"

namespace aoi {

enum class SweepVariable { kSumArrivalRate, kV };

/// Accepts "sum_arrival_scale" and "V". Throws ConfigError.
SweepVariable parse_sweep_variable(const std::string& name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kSumArrivalRate;
  std::vector<double> grid;
  int seeds = 1;
  std::vector<PolicySettings> policies;
  Count frames = 10'000;
  Count warmup = 1'000;
  std::uint64_t master_seed = 1;
  int jobs = 1;

  void validate() const;
};

/// Entries iid uniform on [0, 1] from the "lambda" stream of `master_seed`.
RateMatrix sample_base_lambda(Index M, Index Kbar, std::uint64_t master_seed);

/// `base` scaled so that sum_k k lambda(m,k) equals `sum_arrival_rate`.
RateMatrix scale_to_sum_arrival_rate(const RateMatrix& base,
                                     double sum_arrival_rate);

struct SweepRow {
  double grid_value = 0;
  std::uint64_t seed = 0;
  PolicyKind policy = PolicyKind::kDpp;
  double V = 0;
  double sum_arrival_rate = 0;
  std::optional<MetricsReport> report;  // empty when the policy is infeasible
  std::string error;
};

/// Rows in (grid value, seed, policy) order. Run seeds are
/// master_seed, master_seed + 1, .... For V sweeps `base` must carry lambda
/// unless `has_lambda` is false, in which case lambda is sampled once.
std::vector<SweepRow> run_sweep(const SystemConfig& base, bool has_lambda,
                                const SweepSpec& spec);

/// Report CSV header plus one row per SweepRow; infeasible points carry
/// "nan" metrics.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     Count frames);

}  // namespace aoi

#endif  // AOI_SWEEP_HPP
