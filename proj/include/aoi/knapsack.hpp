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

// Exact solver for a single-capacity knapsack mixing bounded items (downlink
// service, up to max_count copies) and 0-1 items (uploads).
//
// Among optimal count vectors the solvers agree on one answer: the largest
// total value, then the smallest total weight, then the lexicographically
// smallest counts in item order. Values are compared with a relative
// tolerance of 1e-12 so that different summation orders still agree.

#ifndef AOI_KNAPSACK_HPP
#define AOI_KNAPSACK_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace aoi {

struct KnapsackItem {
  enum class Kind { kDownlink, kUplink };
  Kind kind = Kind::kDownlink;
  int m = 0;  // 0-based message
  int k = 0;  // 1-based queue index, unused for uploads
  double unit_value = 0;
  int weight = 1;
  int max_count = 0;

  static KnapsackItem downlink(int m, int k, double value, int max_count) {
    return {Kind::kDownlink, m, k, value, k, max_count};
  }
  static KnapsackItem uplink(int m, double value, int weight) {
    return {Kind::kUplink, m, 0, value, weight, 1};
  }
};

struct KnapsackSolution {
  std::vector<int> counts;
  double total_value = 0;
  int total_weight = 0;
};

class SearchSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dynamic program over capacity 0..capacity. Bounded items are split into
/// power-of-two 0-1 pieces; items with unit_value <= 0 are never selected.
KnapsackSolution solve_dp(std::span<const KnapsackItem> items, int capacity);

/// Depth-first enumeration of every feasible count vector. Refuses with
/// SearchSpaceError once more than `max_nodes` vectors have been visited.
KnapsackSolution solve_bruteforce(std::span<const KnapsackItem> items,
                                  int capacity,
                                  std::uint64_t max_nodes = 10'000'000);

/// Throws std::invalid_argument if an item has weight < 1, a negative count
/// bound, or a 0-1 item with max_count > 1.
void check_items(std::span<const KnapsackItem> items);

/// Tie-aware ordering shared by both solvers: true when (va, wa) is a
/// strictly better outcome than (vb, wb).
bool better_outcome(double va, int wa, double vb, int wb);

}  // namespace aoi

#endif  // AOI_KNAPSACK_HPP
