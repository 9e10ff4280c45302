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

// Slot-allocation policies. A policy maps the current ages, queues and
// uplink costs to an allocation for this frame.

#ifndef AOI_POLICIES_HPP
#define AOI_POLICIES_HPP

#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/knapsack.hpp"
#include "aoi/model.hpp"
#include "aoi/rng.hpp"
#include "aoi/state.hpp"

namespace aoi {

enum class PolicyKind { kStochastic, kDpp, kFixedWindow };

std::string_view to_string(PolicyKind kind);
/// Accepts "stochastic", "dpp", "fixed_window". Throws ConfigError.
PolicyKind parse_policy_kind(std::string_view name);

class Policy {
 public:
  virtual ~Policy() = default;

  virtual PolicyKind kind() const = 0;
  /// Human-readable parameter snapshot, e.g. "V=10;V0=5.4".
  virtual std::string parameters() const = 0;

  virtual AllocationDecision decide(const NetworkState& state,
                                    const SlotCostVector& costs, Rng& rng) = 0;

  /// Arrivals c(t), which join the queues at frame t + 1.
  virtual void observe_arrivals(const CountMatrix& /*arrivals*/) {}
};

// ---------------------------------------------------------------------------
// Stochastic reservation policy.

/// Fixed frame plan: slots 1..Khat carry one upload, then for each k the
/// policy lays out ceil(lambda_k) sets of k slots, each serving one request
/// from queue (m, k) with probability lambda(m,k) / ceil(lambda_k).
struct StochasticPolicyLayout {
  Count khat = 1;
  Count reserved_slots = 0;
  std::vector<Count> sets_per_k;  // ceil(lambda_k)
  /// Per k: weights over m = 0..M-1 followed by the idle outcome.
  std::vector<std::vector<double>> set_weights;

  /// Throws InfeasiblePolicyError when the plan does not fit in N slots.
  static StochasticPolicyLayout build(const RateMatrix& lambda, Count N,
                                      Count khat);
};

AllocationDecision stochastic_decide(const StochasticPolicyLayout& layout,
                                     const NetworkState& state,
                                     const SlotCostVector& costs, Rng& rng);

class StochasticPolicy final : public Policy {
 public:
  StochasticPolicy(const RateMatrix& lambda, Count N, Count khat);

  PolicyKind kind() const override { return PolicyKind::kStochastic; }
  std::string parameters() const override;
  AllocationDecision decide(const NetworkState& state,
                            const SlotCostVector& costs, Rng& rng) override;

  const StochasticPolicyLayout& layout() const { return layout_; }

 private:
  StochasticPolicyLayout layout_;
  std::vector<std::discrete_distribution<int>> pickers_;
};

// ---------------------------------------------------------------------------
// Mixed-order drift-plus-penalty policy.

/// Per-frame knapsack: downlink item (m,k) worth lambda(m,k) q(m,k) -
/// V (x_m + 1) per request, weight k, at most min(q, N / k) copies; upload
/// item m worth V V0 x_m, weight kappa_ul(m).
std::vector<KnapsackItem> build_frame_knapsack(const NetworkState& state,
                                               const SlotCostVector& costs,
                                               const RateMatrix& lambda,
                                               double V, double V0, Count N);

/// Maps solved counts back to an allocation matrix.
AllocationDecision allocation_from_counts(std::span<const KnapsackItem> items,
                                          std::span<const int> counts,
                                          Index M, Index Kbar);

/// Value of the per-frame objective that the drift-plus-penalty rule
/// maximises, evaluated at an arbitrary allocation.
double frame_objective(const NetworkState& state, const RateMatrix& lambda,
                       double V, double V0, const AllocationDecision& a);

AllocationDecision dpp_decide(const NetworkState& state,
                              const SlotCostVector& costs,
                              const RateMatrix& lambda, double V, double V0,
                              Count N);

class DriftPlusPenaltyPolicy final : public Policy {
 public:
  DriftPlusPenaltyPolicy(RateMatrix lambda, double V, double V0, Count N);

  PolicyKind kind() const override { return PolicyKind::kDpp; }
  std::string parameters() const override;
  AllocationDecision decide(const NetworkState& state,
                            const SlotCostVector& costs, Rng& rng) override;

 private:
  RateMatrix lambda_;
  double V_;
  double V0_;
  Count N_;
};

// ---------------------------------------------------------------------------
// Fixed-window baseline with strict first-come-first-serve service.

struct FixedWindowParams {
  std::vector<Count> thresholds;  // upload m once x_m >= thresholds[m]
};

/// w_m = ceil(sqrt(2 M / sum_k lambda(m,k))), at least 1. Messages that are
/// never requested get an unreachable threshold.
FixedWindowParams default_window_thresholds(const RateMatrix& lambda);

/// Pending requests as (m, k) pairs, oldest first.
using FcfsLedger = std::deque<std::pair<int, int>>;

/// Greedy fill: due uploads in index order while they fit, then pop the
/// ledger head while it fits; the first head that does not fit blocks the
/// rest of the frame. Pops served entries from `ledger`.
AllocationDecision fixed_window_decide(const FixedWindowParams& params,
                                       const NetworkState& state,
                                       FcfsLedger& ledger,
                                       const SlotCostVector& costs, Count N);

class FixedWindowPolicy final : public Policy {
 public:
  FixedWindowPolicy(FixedWindowParams params, Count N);

  PolicyKind kind() const override { return PolicyKind::kFixedWindow; }
  std::string parameters() const override;
  AllocationDecision decide(const NetworkState& state,
                            const SlotCostVector& costs, Rng& rng) override;
  /// Appends arrivals in (m, k) index order.
  void observe_arrivals(const CountMatrix& arrivals) override;

  const FcfsLedger& ledger() const { return ledger_; }

 private:
  FixedWindowParams params_;
  Count N_;
  FcfsLedger ledger_;
};

// ---------------------------------------------------------------------------

/// V0 from the configuration, or M Kbar max(lambda + eps(lambda)) when left
/// automatic. Outside the subset region eps is taken as 0.
double resolve_v0(const SystemConfig& config);

struct PolicySettings {
  PolicyKind kind = PolicyKind::kDpp;
  std::optional<std::vector<Count>> window_thresholds;
};

std::unique_ptr<Policy> make_policy(const SystemConfig& config,
                                    const PolicySettings& settings);

}  // namespace aoi

#endif  // AOI_POLICIES_HPP
