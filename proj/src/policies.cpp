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

#include "aoi/policies.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "aoi/bounds.hpp"
#include "aoi/region.hpp"

namespace aoi {
namespace {

using Pickers = std::vector<std::discrete_distribution<int>>;

Pickers make_pickers(const StochasticPolicyLayout& layout) {
  Pickers out;
  out.reserve(layout.set_weights.size());
  for (const auto& w : layout.set_weights) out.emplace_back(w.begin(), w.end());
  return out;
}

AllocationDecision stochastic_decide_with(const StochasticPolicyLayout& layout,
                                          Pickers& pickers,
                                          const NetworkState& state,
                                          const SlotCostVector& costs,
                                          Rng& rng) {
  const Index M = state.Q.rows();
  const Index kbar = state.Q.cols();
  AllocationDecision a = zero_allocation(M, kbar);

  std::uniform_int_distribution<Index> upload(0, M - 1);
  const Index chosen = upload(rng);
  if (costs.kappa_ul(chosen) > layout.khat) {
    throw std::logic_error("uplink cost exceeds the reserved Khat slots");
  }
  a(chosen, kbar) = 1;

  for (Index k = 0; k < kbar; ++k) {
    const auto sets = layout.sets_per_k[static_cast<std::size_t>(k)];
    for (Count n = 0; n < sets; ++n) {
      const int m = pickers[static_cast<std::size_t>(k)](rng);
      // An empty queue leaves its set idle.
      if (m < M && a(m, k) < state.Q(m, k)) ++a(m, k);
    }
  }
  return a;
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kStochastic:
      return "stochastic";
    case PolicyKind::kDpp:
      return "dpp";
    case PolicyKind::kFixedWindow:
      return "fixed_window";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "stochastic") return PolicyKind::kStochastic;
  if (name == "dpp") return PolicyKind::kDpp;
  if (name == "fixed_window") return PolicyKind::kFixedWindow;
  throw ConfigError("unknown policy '" + std::string(name) +
                    "' (expected stochastic, dpp or fixed_window)");
}

// --- stochastic -------------------------------------------------------------

StochasticPolicyLayout StochasticPolicyLayout::build(const RateMatrix& lambda,
                                                     Count N, Count khat) {
  if (!in_subset(lambda, N, khat)) {
    std::ostringstream os;
    os << "stochastic policy needs " << aoi::reserved_slots(lambda, khat)
       << " slots per frame but only " << N << " exist";
    throw InfeasiblePolicyError(os.str());
  }
  StochasticPolicyLayout layout;
  layout.khat = khat;
  layout.reserved_slots = aoi::reserved_slots(lambda, khat);
  const Index M = lambda.rows();
  for (Index k = 0; k < lambda.cols(); ++k) {
    const Count sets = guarded_ceil(lambda.col(k).sum());
    layout.sets_per_k.push_back(sets);
    std::vector<double> w(static_cast<std::size_t>(M) + 1, 0.0);
    double used = 0.0;
    if (sets > 0) {
      for (Index m = 0; m < M; ++m) {
        w[static_cast<std::size_t>(m)] = lambda(m, k) / static_cast<double>(sets);
        used += w[static_cast<std::size_t>(m)];
      }
    }
    w.back() = std::max(0.0, 1.0 - used);
    layout.set_weights.push_back(std::move(w));
  }
  return layout;
}

AllocationDecision stochastic_decide(const StochasticPolicyLayout& layout,
                                     const NetworkState& state,
                                     const SlotCostVector& costs, Rng& rng) {
  Pickers pickers = make_pickers(layout);
  return stochastic_decide_with(layout, pickers, state, costs, rng);
}

StochasticPolicy::StochasticPolicy(const RateMatrix& lambda, Count N,
                                   Count khat)
    : layout_(StochasticPolicyLayout::build(lambda, N, khat)),
      pickers_(make_pickers(layout_)) {}

std::string StochasticPolicy::parameters() const {
  std::ostringstream os;
  os << "Khat=" << layout_.khat << ";reserved=" << layout_.reserved_slots;
  return os.str();
}

AllocationDecision StochasticPolicy::decide(const NetworkState& state,
                                            const SlotCostVector& costs,
                                            Rng& rng) {
  return stochastic_decide_with(layout_, pickers_, state, costs, rng);
}

// --- drift-plus-penalty -----------------------------------------------------

std::vector<KnapsackItem> build_frame_knapsack(const NetworkState& state,
                                               const SlotCostVector& costs,
                                               const RateMatrix& lambda,
                                               double V, double V0, Count N) {
  const Index M = state.Q.rows();
  const Index kbar = state.Q.cols();
  std::vector<KnapsackItem> items;
  items.reserve(static_cast<std::size_t>(M * (kbar + 1)));
  for (Index m = 0; m < M; ++m) {
    const double age = static_cast<double>(state.x(m));
    for (Index k = 1; k <= kbar; ++k) {
      const Count q = state.Q(m, k - 1);
      if (q == 0) continue;
      const double value = lambda(m, k - 1) * static_cast<double>(q) -
                           V * (age + 1.0);
      const auto bound = static_cast<int>(std::min<Count>(q, N / k));
      items.push_back(KnapsackItem::downlink(static_cast<int>(m),
                                             static_cast<int>(k), value,
                                             bound));
    }
  }
  for (Index m = 0; m < M; ++m) {
    items.push_back(KnapsackItem::uplink(
        static_cast<int>(m), V * V0 * static_cast<double>(state.x(m)),
        static_cast<int>(costs.kappa_ul(m))));
  }
  return items;
}

AllocationDecision allocation_from_counts(std::span<const KnapsackItem> items,
                                          std::span<const int> counts,
                                          Index M, Index Kbar) {
  AllocationDecision a = zero_allocation(M, Kbar);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    if (it.kind == KnapsackItem::Kind::kUplink) {
      a(it.m, Kbar) += counts[i];
    } else {
      a(it.m, it.k - 1) += counts[i];
    }
  }
  return a;
}

double frame_objective(const NetworkState& state, const RateMatrix& lambda,
                       double V, double V0, const AllocationDecision& a) {
  const Index kbar = state.Q.cols();
  const RateMatrix qd = state.Q.cast<double>();
  const RealVector age = state.x.cast<double>();
  const RateMatrix unit =
      (lambda.cwiseProduct(qd).colwise() - V * (age.array() + 1.0).matrix());
  return unit.cwiseProduct(downlink_part(a).cast<double>()).sum() +
         V * V0 * age.dot(a.col(kbar).cast<double>());
}

AllocationDecision dpp_decide(const NetworkState& state,
                              const SlotCostVector& costs,
                              const RateMatrix& lambda, double V, double V0,
                              Count N) {
  const auto items = build_frame_knapsack(state, costs, lambda, V, V0, N);
  const auto sol = solve_dp(items, static_cast<int>(N));
  return allocation_from_counts(items, sol.counts, state.Q.rows(),
                                state.Q.cols());
}

DriftPlusPenaltyPolicy::DriftPlusPenaltyPolicy(RateMatrix lambda, double V,
                                               double V0, Count N)
    : lambda_(std::move(lambda)), V_(V), V0_(V0), N_(N) {
  if (!(V_ >= 0)) throw ParameterError("V must be >= 0");
  if (!(V0_ > 0)) throw ParameterError("V0 must be > 0");
}

std::string DriftPlusPenaltyPolicy::parameters() const {
  std::ostringstream os;
  os << "V=" << V_ << ";V0=" << V0_;
  return os.str();
}

AllocationDecision DriftPlusPenaltyPolicy::decide(const NetworkState& state,
                                                  const SlotCostVector& costs,
                                                  Rng& /*rng*/) {
  return dpp_decide(state, costs, lambda_, V_, V0_, N_);
}

// --- fixed window -----------------------------------------------------------

FixedWindowParams default_window_thresholds(const RateMatrix& lambda) {
  FixedWindowParams p;
  const double M = static_cast<double>(lambda.rows());
  for (Index m = 0; m < lambda.rows(); ++m) {
    const double demand = lambda.row(m).sum();
    if (demand <= 0) {
      p.thresholds.push_back(std::numeric_limits<Count>::max());
      continue;
    }
    p.thresholds.push_back(
        std::max<Count>(1, guarded_ceil(std::sqrt(2.0 * M / demand))));
  }
  return p;
}

AllocationDecision fixed_window_decide(const FixedWindowParams& params,
                                       const NetworkState& state,
                                       FcfsLedger& ledger,
                                       const SlotCostVector& costs, Count N) {
  const Index M = state.Q.rows();
  const Index kbar = state.Q.cols();
  AllocationDecision a = zero_allocation(M, kbar);
  Count remaining = N;
  for (Index m = 0; m < M; ++m) {
    if (state.x(m) >= params.thresholds[static_cast<std::size_t>(m)] &&
        costs.kappa_ul(m) <= remaining) {
      a(m, kbar) = 1;
      remaining -= costs.kappa_ul(m);
    }
  }
  while (!ledger.empty()) {
    const auto [m, k] = ledger.front();
    if (k > remaining || a(m, k - 1) >= state.Q(m, k - 1)) break;
    ++a(m, k - 1);
    remaining -= k;
    ledger.pop_front();
  }
  return a;
}

FixedWindowPolicy::FixedWindowPolicy(FixedWindowParams params, Count N)
    : params_(std::move(params)), N_(N) {
  for (Count w : params_.thresholds) {
    if (w < 1) throw ParameterError("window thresholds must be >= 1");
  }
}

std::string FixedWindowPolicy::parameters() const {
  std::ostringstream os;
  os << "w=";
  for (std::size_t i = 0; i < params_.thresholds.size(); ++i) {
    if (i) os << '/';
    if (params_.thresholds[i] == std::numeric_limits<Count>::max()) {
      os << "inf";
    } else {
      os << params_.thresholds[i];
    }
  }
  return os.str();
}

AllocationDecision FixedWindowPolicy::decide(const NetworkState& state,
                                             const SlotCostVector& costs,
                                             Rng& /*rng*/) {
  return fixed_window_decide(params_, state, ledger_, costs, N_);
}

void FixedWindowPolicy::observe_arrivals(const CountMatrix& arrivals) {
  for (Index m = 0; m < arrivals.rows(); ++m) {
    for (Index k = 0; k < arrivals.cols(); ++k) {
      for (Count i = 0; i < arrivals(m, k); ++i) {
        ledger_.emplace_back(static_cast<int>(m), static_cast<int>(k + 1));
      }
    }
  }
}

// ----------------------------------------------------------------------------

double resolve_v0(const SystemConfig& config) {
  if (config.V0) return *config.V0;
  const Count khat = current_khat(config);
  const double eps = in_subset(config.lambda, config.N, khat)
                         ? epsilon_of_lambda(config.lambda, config.N, khat)
                         : 0.0;
  const double v0 = default_V0(config.lambda, eps);
  if (!(v0 > 0)) {
    throw ConfigError("automatic V0 is zero; set V0 explicitly");
  }
  return v0;
}

std::unique_ptr<Policy> make_policy(const SystemConfig& config,
                                    const PolicySettings& settings) {
  switch (settings.kind) {
    case PolicyKind::kStochastic:
      return std::make_unique<StochasticPolicy>(config.lambda, config.N,
                                                current_khat(config));
    case PolicyKind::kDpp:
      return std::make_unique<DriftPlusPenaltyPolicy>(
          config.lambda, config.V, resolve_v0(config), config.N);
    case PolicyKind::kFixedWindow: {
      FixedWindowParams params;
      if (settings.window_thresholds) {
        if (static_cast<int>(settings.window_thresholds->size()) != config.M) {
          throw ConfigError("window_thresholds must have M entries");
        }
        params.thresholds = *settings.window_thresholds;
        for (Count w : params.thresholds) {
          if (w < 1) throw ConfigError("window thresholds must be >= 1");
        }
      } else {
        params = default_window_thresholds(config.lambda);
      }
      return std::make_unique<FixedWindowPolicy>(std::move(params), config.N);
    }
  }
  throw ConfigError("unknown policy kind");
}

}  // namespace aoi
