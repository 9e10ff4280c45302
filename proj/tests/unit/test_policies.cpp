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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "aoi/policies.hpp"
#include "aoi/region.hpp"

namespace aoi {
namespace {

SlotCostVector costs_of(std::initializer_list<Count> kappa) {
  SlotCostVector c;
  c.kappa_ul = CountVector(static_cast<Index>(kappa.size()));
  Index i = 0;
  for (Count k : kappa) c.kappa_ul(i++) = k;
  c.khat = c.kappa_ul.maxCoeff();
  return c;
}

TEST(PolicyKind, RoundTrip) {
  for (auto k : {PolicyKind::kStochastic, PolicyKind::kDpp,
                 PolicyKind::kFixedWindow}) {
    EXPECT_EQ(parse_policy_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_policy_kind("drl"), ConfigError);
}

TEST(Stochastic, LayoutAccounting) {
  RateMatrix lam(2, 2);
  lam << 0.3, 0.2, 0.4, 0.3;
  const auto layout = StochasticPolicyLayout::build(lam, 12, 2);
  EXPECT_EQ(layout.reserved_slots, 5);
  EXPECT_EQ(layout.sets_per_k, (std::vector<Count>{1, 1}));
  EXPECT_NEAR(layout.set_weights[0][2], 0.3, 1e-12);
  EXPECT_THROW(StochasticPolicyLayout::build(RateMatrix::Constant(1, 1, 0.5), 1, 1),
               InfeasiblePolicyError);
}

TEST(Stochastic, UniformUploadChoice) {
  const RateMatrix lam = RateMatrix::Constant(4, 1, 0.1);
  StochasticPolicy p(lam, 10, 1);
  NetworkState s = NetworkState::initial(4, 1);
  const SlotCostVector c = costs_of({1, 1, 1, 1});
  Rng rng = derive_stream(31, "test");
  CountVector uploads = CountVector::Zero(4);
  const int n = 40'000;
  for (int i = 0; i < n; ++i) {
    const auto a = p.decide(s, c, rng);
    EXPECT_EQ(uplink_part(a).sum(), 1);
    uploads += uplink_part(a);
  }
  for (Index m = 0; m < 4; ++m) {
    EXPECT_NEAR(uploads(m) / static_cast<double>(n), 0.25, 3 * std::sqrt(0.25 * 0.75 / n));
  }
}

TEST(Stochastic, MeanServiceMatchesLambdaWhenBacklogged) {
  RateMatrix lam(2, 2);
  lam << 0.3, 1.1, 0.4, 0.5;  // lambda_2 = 1.6 -> two sets of two slots
  StochasticPolicy p(lam, 12, 2);
  NetworkState s = NetworkState::initial(2, 2);
  s.Q.setConstant(1000);
  const SlotCostVector c = costs_of({1, 2});
  Rng rng = derive_stream(32, "test");
  CountMatrix served = CountMatrix::Zero(2, 2);
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    const auto a = p.decide(s, c, rng);
    EXPECT_FALSE(validate_allocation(a, s.Q, c.kappa_ul, 12));
    served += downlink_part(a);
  }
  for (Index m = 0; m < 2; ++m) {
    for (Index k = 0; k < 2; ++k) {
      const double sets = std::ceil(lam.col(k).sum());
      const double pr = lam(m, k) / sets;
      const double sigma = std::sqrt(sets * pr * (1 - pr) / n);
      EXPECT_NEAR(served(m, k) / static_cast<double>(n), lam(m, k), 3 * sigma);
    }
  }
}

TEST(Stochastic, EmptyQueuesGiveNoDownlink) {
  RateMatrix lam = RateMatrix::Constant(2, 2, 0.4);
  StochasticPolicy p(lam, 12, 2);
  Rng rng = derive_stream(33, "test");
  const auto a = p.decide(NetworkState::initial(2, 2), costs_of({2, 2}), rng);
  EXPECT_EQ(downlink_part(a).sum(), 0);
}

TEST(Dpp, ZeroVDrainsWithoutUploads) {
  NetworkState s = NetworkState::initial(1, 1);
  s.Q(0, 0) = 4;
  const auto a = dpp_decide(s, costs_of({1}), RateMatrix::Constant(1, 1, 0.5),
                            0.0, 1.0, 3);
  EXPECT_EQ(a(0, 0), 3);
  EXPECT_EQ(a(0, 1), 0);
}

TEST(Dpp, OnlyUplinkWithEmptyQueues) {
  NetworkState s = NetworkState::initial(1, 1);
  s.x(0) = 9;
  const auto items = build_frame_knapsack(s, costs_of({1}),
                                          RateMatrix::Constant(1, 1, 0.3), 1.0,
                                          2.0, 2);
  ASSERT_EQ(items.size(), 1u);
  EXPECT_DOUBLE_EQ(items[0].unit_value, 18.0);
  const auto a = dpp_decide(s, costs_of({1}), RateMatrix::Constant(1, 1, 0.3),
                            1.0, 2.0, 2);
  EXPECT_EQ(a(0, 1), 1);
}

TEST(Dpp, SmallFrameMatchesEnumeration) {
  NetworkState s = NetworkState::initial(1, 2);
  s.x(0) = 4;
  s.Q << 3, 2;
  RateMatrix lam(1, 2);
  lam << 0.5, 1.0;
  const auto items = build_frame_knapsack(s, costs_of({2}), lam, 0.1, 2.0, 5);
  ASSERT_EQ(items.size(), 3u);
  EXPECT_NEAR(items[0].unit_value, 1.0, 1e-12);
  EXPECT_NEAR(items[1].unit_value, 1.5, 1e-12);
  EXPECT_NEAR(items[2].unit_value, 0.8, 1e-12);
  EXPECT_EQ(items[1].max_count, 2);
  const auto a = dpp_decide(s, costs_of({2}), lam, 0.1, 2.0, 5);
  // Enumerated optimum: three k=1 requests and one k=2 request, value 4.5.
  EXPECT_EQ(a(0, 0), 3);
  EXPECT_EQ(a(0, 1), 1);
  EXPECT_EQ(a(0, 2), 0);
  EXPECT_NEAR(frame_objective(s, lam, 0.1, 2.0, a), 4.5, 1e-12);
}

// Best objective over all allocations with a <= q that fit N.
double enumerate_best(const NetworkState& s, const SlotCostVector& c,
                      const RateMatrix& lam, double V, double V0, Count N) {
  const Index M = s.Q.rows(), kbar = s.Q.cols();
  AllocationDecision a = zero_allocation(M, kbar);
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(Index)> walk = [&](Index e) {
    if (e == a.size()) {
      if (!validate_allocation(a, s.Q, c.kappa_ul, N)) {
        best = std::max(best, frame_objective(s, lam, V, V0, a));
      }
      return;
    }
    const Index m = e / (kbar + 1), j = e % (kbar + 1);
    const Count cap = j == kbar ? 1 : s.Q(m, j);
    for (Count v = 0; v <= cap; ++v) {
      a(m, j) = v;
      walk(e + 1);
    }
    a(m, j) = 0;
  };
  walk(0);
  return best;
}

TEST(Dpp, OptimalOnRandomSmallStates) {
  Rng rng = derive_stream(34, "test");
  std::uniform_int_distribution<int> dim(1, 2), n(1, 6), q(0, 4), x(1, 15);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const int M = dim(rng), kbar = dim(rng);
    const Count N = n(rng);
    NetworkState s = NetworkState::initial(M, kbar);
    RateMatrix lam(M, kbar);
    SlotCostVector c;
    c.kappa_ul = CountVector(M);
    for (int m = 0; m < M; ++m) {
      s.x(m) = x(rng);
      c.kappa_ul(m) = std::uniform_int_distribution<int>(1, static_cast<int>(N))(rng);
      for (int k = 0; k < kbar; ++k) {
        s.Q(m, k) = q(rng);
        lam(m, k) = u(rng);
      }
    }
    const double V = u(rng), V0 = 0.5 + u(rng);
    const auto a = dpp_decide(s, c, lam, V, V0, N);
    ASSERT_FALSE(validate_allocation(a, s.Q, c.kappa_ul, N));
    EXPECT_NEAR(frame_objective(s, lam, V, V0, a),
                enumerate_best(s, c, lam, V, V0, N), 1e-9)
        << "state " << i;
  }
}

TEST(FixedWindow, DefaultThresholds) {
  RateMatrix lam(3, 2);
  lam << 0.5, 0.5, 6.0, 0.0, 0.0, 0.0;
  const auto p = default_window_thresholds(lam);
  EXPECT_EQ(p.thresholds[0], 3);  // ceil(sqrt(6))
  EXPECT_EQ(p.thresholds[1], 1);
  EXPECT_EQ(p.thresholds[2], std::numeric_limits<Count>::max());
}

TEST(FixedWindow, IdleWhenNothingDue) {
  FixedWindowParams p{{5}};
  FcfsLedger ledger;
  const auto a = fixed_window_decide(p, NetworkState::initial(1, 2), ledger,
                                     costs_of({1}), 10);
  EXPECT_EQ(a.sum(), 0);
}

TEST(FixedWindow, ServesEverythingWhenRoomy) {
  FixedWindowParams p{{1, 1}};
  NetworkState s = NetworkState::initial(2, 2);
  s.Q << 1, 1, 2, 0;
  FcfsLedger ledger{{1, 1}, {0, 2}, {0, 1}, {1, 1}};
  const auto a = fixed_window_decide(p, s, ledger, costs_of({1, 2}), 100);
  EXPECT_TRUE(ledger.empty());
  EXPECT_EQ(downlink_part(a), s.Q);
  EXPECT_EQ(uplink_part(a).sum(), 2);
}

TEST(FixedWindow, HeadOfLineBlocks) {
  FixedWindowParams p{{1}};
  NetworkState s = NetworkState::initial(1, 2);
  s.Q << 1, 1;
  FcfsLedger ledger{{0, 2}, {0, 1}};
  const auto a = fixed_window_decide(p, s, ledger, costs_of({2}), 3);
  EXPECT_EQ(a(0, 2), 1);
  EXPECT_EQ(downlink_part(a).sum(), 0);
  EXPECT_EQ(ledger.size(), 2u);
}

TEST(FixedWindow, UnitWindowKeepsAgesLow) {
  FixedWindowPolicy p(FixedWindowParams{{1, 1}}, 6);
  NetworkState s = NetworkState::initial(2, 1);
  Rng rng = derive_stream(35, "test");
  for (int t = 0; t < 1000; ++t) {
    const auto a = p.decide(s, costs_of({2, 2}), rng);
    s.x = apply_aoi_update(s.x, a);
    EXPECT_LE(s.x.maxCoeff(), 2);
  }
}

TEST(Policies, EveryDecisionValidates) {
  RateMatrix lam(2, 3);
  lam << 0.3, 0.2, 0.4, 0.5, 0.1, 0.2;
  Rng rng = derive_stream(36, "test");
  StochasticPolicy sto(lam, 16, 2);
  DriftPlusPenaltyPolicy dpp(lam, 5.0, 2.0, 16);
  FixedWindowPolicy fw(default_window_thresholds(lam), 16);
  std::uniform_int_distribution<int> q(0, 8), x(1, 30), kap(1, 2);
  for (int i = 0; i < 100'000; ++i) {
    NetworkState s = NetworkState::initial(2, 3);
    for (Index j = 0; j < s.Q.size(); ++j) s.Q(j) = q(rng);
    for (Index m = 0; m < 2; ++m) s.x(m) = x(rng);
    SlotCostVector c = costs_of({kap(rng), kap(rng)});
    c.khat = 2;
    Policy* policies[] = {&sto, &dpp};
    for (Policy* p : policies) {
      ASSERT_FALSE(validate_allocation(p->decide(s, c, rng), s.Q, c.kappa_ul, 16));
    }
    // The FCFS ledger must mirror Q, so rebuild it per state.
    FcfsLedger ledger;
    for (Index m = 0; m < 2; ++m) {
      for (Index k = 0; k < 3; ++k) {
        for (Count r = 0; r < s.Q(m, k); ++r) {
          ledger.emplace_back(static_cast<int>(m), static_cast<int>(k + 1));
        }
      }
    }
    ASSERT_FALSE(validate_allocation(
        fixed_window_decide(default_window_thresholds(lam), s, ledger, c, 16),
        s.Q, c.kappa_ul, 16));
  }
}

TEST(Factory, AutoV0AndThresholdChecks) {
  SystemConfig cfg;
  cfg.M = 2;
  cfg.N = 12;
  cfg.Kbar = 2;
  cfg.uplink_kappa_pmf = {0.5, 0.5};
  cfg.lambda = RateMatrix(2, 2);
  cfg.lambda << 0.3, 0.2, 0.4, 0.3;
  EXPECT_NEAR(resolve_v0(cfg), 4 * (0.4 + 1.25), 1e-9);
  cfg.V0 = 3.0;
  EXPECT_EQ(resolve_v0(cfg), 3.0);
  PolicySettings bad{PolicyKind::kFixedWindow, std::vector<Count>{1}};
  EXPECT_THROW(make_policy(cfg, bad), ConfigError);
  EXPECT_EQ(make_policy(cfg, {PolicyKind::kStochastic, {}})->kind(),
            PolicyKind::kStochastic);
}

}  // namespace
}  // namespace aoi
