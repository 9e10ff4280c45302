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

#include <gtest/gtest.h>

#include "aoi/model.hpp"

namespace aoi {
namespace {

// Per-slot bits equal to B * log2(1 + snr) * dt with B = rate, dt = 1, and
// snr = 1 so that log2(2) = 1.
Count cost_at_rate(double length, double rate) {
  return uplink_slot_cost(length, rate, 1.0, 1.0, 1.0, 1.0);
}

TEST(SlotCost, CeilingOfRatio) {
  EXPECT_EQ(cost_at_rate(1000, 300), 4);
  EXPECT_EQ(cost_at_rate(1000, 500), 2);
  EXPECT_EQ(downlink_slot_cost(900, 300, 1.0, 1.0, 1.0, 1.0), 3);
  EXPECT_EQ(downlink_slot_cost(901, 300, 1.0, 1.0, 1.0, 1.0), 4);
}

TEST(SlotCost, NonIntegerRatePerSlot) {
  const double snr = std::pow(2.0, 997.3 / 1000.0) - 1.0;
  EXPECT_EQ(uplink_slot_cost(1200, 1e6, 1.0, snr, 1.0, 1e-3), 2);
  EXPECT_EQ(downlink_slot_cost(1200, 1e6, 1.0, snr, 1.0, 1e-3), 2);
}

TEST(SlotCost, RejectsNonPositiveInputs) {
  EXPECT_THROW(cost_at_rate(0, 300), ParameterError);
  EXPECT_THROW(uplink_slot_cost(100, 1, 1, -1, 1, 1), ParameterError);
  EXPECT_THROW(downlink_slot_cost(100, 1, 1, 1, 0, 1), ParameterError);
}

TEST(SlotCost, MonotoneInGainAndLength) {
  Rng rng = derive_stream(3, "test");
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const double L = 100 * u(rng), g = u(rng), dg = u(rng), dl = 50 * u(rng);
    EXPECT_GE(uplink_slot_cost(L, 10, 1, g, 1, 1),
              uplink_slot_cost(L, 10, 1, g + dg, 1, 1));
    EXPECT_LE(uplink_slot_cost(L, 10, 1, g, 1, 1),
              uplink_slot_cost(L + dl, 10, 1, g, 1, 1));
  }
}

TEST(Channel, IdentityKeepsState) {
  ChannelSpec spec{{1.0, 2.0}, Eigen::MatrixXd::Identity(2, 2)};
  ChannelProcess p(spec, {1, 0});
  Rng rng = derive_stream(1, "test");
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(step_channel(p, rng), (std::vector<int>{1, 0}));
  }
}

TEST(Channel, DeterministicAlternation) {
  Eigen::MatrixXd t(2, 2);
  t << 0, 1, 1, 0;
  ChannelProcess p(ChannelSpec{{1.0, 2.0}, t}, {0});
  Rng rng = derive_stream(1, "test");
  for (int i = 1; i <= 10; ++i) {
    EXPECT_EQ(step_channel(p, rng)[0], i % 2);
  }
}

TEST(Channel, SymmetricChainOccupancy) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Constant(2, 2, 0.5);
  ChannelProcess p(ChannelSpec{{1.0, 2.0}, t}, {0});
  Rng rng = derive_stream(2, "test");
  int in_zero = 0;
  const int steps = 100'000;
  for (int i = 0; i < steps; ++i) in_zero += step_channel(p, rng)[0] == 0;
  EXPECT_NEAR(in_zero / static_cast<double>(steps), 0.5, 0.01);
}

TEST(Channel, RowFrequenciesMatchMatrix) {
  Eigen::MatrixXd t(3, 3);
  t << 0.2, 0.5, 0.3, 0.6, 0.1, 0.3, 0.25, 0.25, 0.5;
  ChannelProcess p(ChannelSpec{{1.0, 2.0, 3.0}, t}, {0});
  Rng rng = derive_stream(4, "test");
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(3, 3);
  int prev = 0;
  for (int i = 0; i < 100'000; ++i) {
    const int next = step_channel(p, rng)[0];
    counts(prev, next) += 1;
    prev = next;
  }
  for (int r = 0; r < 3; ++r) {
    const double n = counts.row(r).sum();
    for (int c = 0; c < 3; ++c) {
      const double sigma = std::sqrt(t(r, c) * (1 - t(r, c)) / n);
      EXPECT_NEAR(counts(r, c) / n, t(r, c), 3 * sigma) << r << ',' << c;
    }
  }
}

TEST(Channel, StationaryDistribution) {
  Eigen::MatrixXd t(2, 2);
  t << 0.7, 0.3, 0.4, 0.6;
  ChannelProcess p(ChannelSpec{{1.0, 2.0}, t}, {0});
  const RealVector pi = p.stationary_distribution();
  EXPECT_NEAR(pi(0), 4.0 / 7.0, 1e-12);
  EXPECT_NEAR(pi(1), 3.0 / 7.0, 1e-12);
}

TEST(Arrivals, ZeroMeanGivesZero) {
  Rng rng = derive_stream(1, "test");
  RateMatrix lambda = RateMatrix::Zero(2, 3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_arrivals(lambda, rng).sum(), 0);
  }
}

TEST(Arrivals, PoissonMoments) {
  Rng rng = derive_stream(5, "test");
  ArrivalSampler half(RateMatrix::Constant(1, 1, 0.5));
  double s = 0, s2 = 0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double c = static_cast<double>(half(rng)(0, 0));
    s += c;
    s2 += c * c;
  }
  EXPECT_NEAR(s / n, 0.5, 0.003);
  EXPECT_NEAR(s2 / n, 0.75, 0.01);

  ArrivalSampler two(RateMatrix::Constant(1, 1, 2.0));
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += two(rng)(0, 0) == 0;
  EXPECT_NEAR(zeros / static_cast<double>(n), std::exp(-2.0), 0.002);
}

TEST(Arrivals, ChiSquareGoodnessOfFit) {
  for (double lam : {0.1, 0.5, 1.0, 2.0}) {
    Rng rng = derive_stream(6, "test", static_cast<std::uint64_t>(lam * 10));
    ArrivalSampler draw(RateMatrix::Constant(1, 1, lam));
    const int n = 100'000;
    std::vector<double> observed(32, 0.0);
    for (int i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(draw(rng)(0, 0));
      observed[std::min<std::size_t>(c, 31)] += 1;
    }
    // Bins with expected count >= 5; the remainder is pooled into a tail.
    double stat = 0, pmf = std::exp(-lam), cdf = 0, obs_cdf = 0;
    int bins = 0;
    for (std::size_t c = 0; c < 31; ++c) {
      if (n * pmf < 5 || n * (1 - cdf - pmf) < 5) break;
      stat += std::pow(observed[c] - n * pmf, 2) / (n * pmf);
      cdf += pmf;
      obs_cdf += observed[c];
      ++bins;
      pmf *= lam / static_cast<double>(c + 1);
    }
    const double tail_exp = n * (1 - cdf), tail_obs = n - obs_cdf;
    stat += std::pow(tail_obs - tail_exp, 2) / tail_exp;
    const double df = bins;  // (bins + 1) cells, one constraint
    const double z = 2.3263;  // upper 1% normal quantile
    const double crit =
        df * std::pow(1 - 2 / (9 * df) + z * std::sqrt(2 / (9 * df)), 3);
    EXPECT_LT(stat, crit) << "lambda " << lam;
  }
}

SystemConfig direct_config(std::vector<double> pmf, int N) {
  SystemConfig c;
  c.M = 1;
  c.N = N;
  c.Kbar = 1;
  c.uplink_kappa_pmf = std::move(pmf);
  c.lambda = RateMatrix::Zero(1, 1);
  return c;
}

TEST(Khat, DirectModeSupportMaximum) {
  EXPECT_EQ(current_khat(direct_config({0.5, 0.5}, 4)), 2);
  EXPECT_EQ(current_khat(direct_config({1.0, 0.0, 0.0}, 4)), 1);
}

TEST(Khat, PhysicalModeSupportMaximum) {
  SystemConfig c = direct_config({}, 8);
  c.uplink_mode = UplinkCostMode::kPhysical;
  c.lengths = {3.0};
  c.phy = PhysicalLayer{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  // log2(1 + g) of 1 and 0.65 bits per slot: 3 and ceil(4.6) = 5 slots.
  c.channel.gains = {1.0, std::pow(2.0, 0.65) - 1.0};
  c.channel.transition = Eigen::MatrixXd::Constant(2, 2, 0.5);
  EXPECT_EQ(current_khat(c), 5);
  c.channel.gains = {1.0};
  c.channel.transition = Eigen::MatrixXd::Identity(1, 1);
  EXPECT_EQ(current_khat(c), 3);
}

TEST(Khat, ExceedingNIsAConfigError) {
  EXPECT_THROW(current_khat(direct_config({0.0, 0.0, 1.0}, 2)), ConfigError);
}

TEST(UplinkProcess, DirectModeFrequencies) {
  SystemConfig c = direct_config({0.5, 0.5}, 4);
  c.M = 2;
  c.lambda = RateMatrix::Zero(2, 1);
  Rng rng = derive_stream(7, "test");
  UplinkCostProcess p(c, rng);
  int twos = 0;
  const int n = 20'000;
  for (int i = 0; i < n; ++i) {
    EXPECT_EQ(p.current().khat, 2);
    twos += p.current().kappa_ul(0) == 2;
    p.advance(rng);
  }
  EXPECT_NEAR(twos / static_cast<double>(n), 0.5, 0.015);
}

}  // namespace
}  // namespace aoi
