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

#include "aoi/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace aoi {
namespace {

struct Outcome {
  double value = 0;
  int weight = 0;
};

bool better(const Outcome& a, const Outcome& b) {
  return better_outcome(a.value, a.weight, b.value, b.weight);
}

KnapsackSolution finish(std::span<const KnapsackItem> items,
                        std::vector<int> counts) {
  KnapsackSolution sol;
  sol.counts = std::move(counts);
  for (std::size_t i = 0; i < items.size(); ++i) {
    sol.total_value += sol.counts[i] * items[i].unit_value;
    sol.total_weight += sol.counts[i] * items[i].weight;
  }
  return sol;
}

}  // namespace

bool better_outcome(double va, int wa, double vb, int wb) {
  const double tol = 1e-12 * std::max({1.0, std::abs(va), std::abs(vb)});
  if (va > vb + tol) return true;
  if (va < vb - tol) return false;
  return wa < wb;
}

void check_items(std::span<const KnapsackItem> items) {
  for (const auto& it : items) {
    if (it.weight < 1) throw std::invalid_argument("item weight must be >= 1");
    if (it.max_count < 0) {
      throw std::invalid_argument("item count bound must be >= 0");
    }
    if (it.kind == KnapsackItem::Kind::kUplink && it.max_count > 1) {
      throw std::invalid_argument("upload items are 0-1");
    }
  }
}

KnapsackSolution solve_dp(std::span<const KnapsackItem> items, int capacity) {
  check_items(items);
  capacity = std::max(capacity, 0);
  const std::size_t n = items.size();
  const auto width = static_cast<std::size_t>(capacity) + 1;

  std::vector<int> usable(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& it = items[i];
    usable[i] = it.unit_value > 0
                    ? std::min(it.max_count, capacity / it.weight)
                    : 0;
  }

  // best[i][c]: optimum over items i..n-1 within capacity c. Filling from the
  // back lets the forward traceback pick the smallest count for each item.
  std::vector<std::vector<Outcome>> best(n + 1,
                                         std::vector<Outcome>(width));
  for (std::size_t i = n; i-- > 0;) {
    auto& cur = best[i];
    cur = best[i + 1];
    const auto& it = items[i];
    int left = usable[i];
    for (int piece = 1; left > 0; piece *= 2) {
      const int take = std::min(piece, left);
      left -= take;
      const int w = take * it.weight;
      const double v = take * it.unit_value;
      for (int c = capacity; c >= w; --c) {
        const Outcome cand{cur[static_cast<std::size_t>(c - w)].value + v,
                           cur[static_cast<std::size_t>(c - w)].weight + w};
        if (better(cand, cur[static_cast<std::size_t>(c)])) {
          cur[static_cast<std::size_t>(c)] = cand;
        }
      }
    }
  }

  std::vector<int> counts(n, 0);
  int c = capacity;
  for (std::size_t i = 0; i < n; ++i) {
    const Outcome target = best[i][static_cast<std::size_t>(c)];
    const auto& it = items[i];
    for (int cnt = 0; cnt <= usable[i] && cnt * it.weight <= c; ++cnt) {
      const Outcome& rest =
          best[i + 1][static_cast<std::size_t>(c - cnt * it.weight)];
      const Outcome cand{rest.value + cnt * it.unit_value,
                         rest.weight + cnt * it.weight};
      if (!better(target, cand)) {
        counts[i] = cnt;
        c -= cnt * it.weight;
        break;
      }
    }
  }
  return finish(items, std::move(counts));
}

KnapsackSolution solve_bruteforce(std::span<const KnapsackItem> items,
                                  int capacity, std::uint64_t max_nodes) {
  check_items(items);
  capacity = std::max(capacity, 0);
  const std::size_t n = items.size();
  std::vector<int> counts(n, 0);
  std::vector<int> best_counts(n, 0);
  Outcome best_outcome{0, 0};
  std::uint64_t nodes = 0;

  std::function<void(std::size_t, int)> visit = [&](std::size_t i, int left) {
    if (++nodes > max_nodes) {
      throw SearchSpaceError("brute-force knapsack: node budget exceeded");
    }
    if (i == n) {
      Outcome o;
      for (std::size_t j = 0; j < n; ++j) {
        o.value += counts[j] * items[j].unit_value;
        o.weight += counts[j] * items[j].weight;
      }
      if (better(o, best_outcome)) {
        best_outcome = o;
        best_counts = counts;
      }
      return;
    }
    const auto& it = items[i];
    for (int cnt = 0; cnt <= it.max_count && cnt * it.weight <= left; ++cnt) {
      counts[i] = cnt;
      visit(i + 1, left - cnt * it.weight);
    }
    counts[i] = 0;
  };
  visit(0, capacity);
  return finish(items, std::move(best_counts));
}

}  // namespace aoi
