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

// Self-validation campaigns: the knapsack solver against exhaustive search,
// the per-frame decision against enumeration of every allocation, and the
// state update laws against fuzzed inputs.

#ifndef AOI_VALIDATION_HPP
#define AOI_VALIDATION_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "aoi/knapsack.hpp"
#include "aoi/model.hpp"
#include "aoi/state.hpp"

namespace aoi {

using KnapsackSolver =
    std::function<KnapsackSolution(std::span<const KnapsackItem>, int)>;

struct CampaignResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  double seconds = 0;
  std::string first_failure;

  bool ok() const { return failed == 0; }
};

/// Random per-frame instance: M <= 3, Kbar <= 3, N <= 12, q <= 5.
struct FrameInstance {
  NetworkState state;
  SlotCostVector costs;
  RateMatrix lambda;
  double V = 1;
  double V0 = 1;
  Count N = 1;
};

FrameInstance random_frame_instance(Rng& rng);

/// `solver` against solve_bruteforce on the knapsack built from each
/// instance; values must agree within 1e-9.
CampaignResult knapsack_oracle_campaign(int instances, std::uint64_t seed,
                                        const KnapsackSolver& solver = solve_dp);

/// Best frame objective over every valid allocation, found by enumeration,
/// against the allocation produced through `solver`.
CampaignResult decision_exhaustive_campaign(
    int instances, std::uint64_t seed, const KnapsackSolver& solver = solve_dp);

/// Fuzzed (x, Q, A, c) tuples: queue conservation, x >= 1 after updates, and
/// validate_allocation agreeing with an independent constraint check.
CampaignResult update_law_campaign(int tuples, std::uint64_t seed);

struct ValidationOptions {
  std::uint64_t seed = 1;
  int knapsack_instances = 500;
  int decision_instances = 200;
  int update_tuples = 100'000;
  /// Test hook: replaces the DP with one that drops the last chosen item.
  bool corrupt_dp = false;
};

std::vector<CampaignResult> run_validation(const ValidationOptions& options);

/// One line per campaign: name,passed,failed,seconds,status.
void print_campaigns(std::ostream& out,
                     const std::vector<CampaignResult>& results);

}  // namespace aoi

#endif  // AOI_VALIDATION_HPP
