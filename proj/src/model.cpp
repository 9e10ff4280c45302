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

#include "aoi/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace aoi {
namespace {

Count slot_cost(double length_bits, double bandwidth, double power,
                double gain, double noise, double slot_duration) {
  if (!(length_bits > 0) || !(bandwidth > 0) || !(power > 0) ||
      !(gain > 0) || !(noise > 0) || !(slot_duration > 0)) {
    throw ParameterError("slot cost: every input must be positive");
  }
  const double bits_per_slot =
      bandwidth * std::log2(1.0 + power * gain / noise) * slot_duration;
  return std::max<Count>(1, guarded_ceil(length_bits / bits_per_slot));
}

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

}  // namespace

Count uplink_slot_cost(double length_bits, double bandwidth, double power,
                       double gain, double noise, double slot_duration) {
  return slot_cost(length_bits, bandwidth, power, gain, noise, slot_duration);
}

Count downlink_slot_cost(double length_bits, double bandwidth, double power,
                         double gain, double noise, double slot_duration) {
  return slot_cost(length_bits, bandwidth, power, gain, noise, slot_duration);
}

Count downlink_bucket(const SystemConfig& config, int m, double gain) {
  const auto& phy = config.phy;
  const Count k = downlink_slot_cost(config.lengths.at(m), phy.bandwidth,
                                     phy.power_bs, gain, phy.noise_mu,
                                     phy.slot_duration);
  if (k > config.Kbar) {
    fail("downlink cost " + std::to_string(k) + " exceeds Kbar");
  }
  return k;
}

void validate(const SystemConfig& c) {
  if (c.M < 1) fail("M must be >= 1");
  if (c.N < 1) fail("N must be >= 1");
  if (c.Kbar < 1) fail("Kbar must be >= 1");
  if (!(c.V >= 0)) fail("V must be >= 0");
  if (c.V0 && !(*c.V0 > 0)) fail("V0 must be > 0");
  if (c.lambda.rows() != c.M || c.lambda.cols() != c.Kbar) {
    fail("lambda must be M x Kbar");
  }
  if (!(c.lambda.array() >= 0).all() || !c.lambda.allFinite()) {
    fail("lambda entries must be finite and >= 0");
  }
  const auto& p = c.phy;
  for (double v : {p.bandwidth, p.slot_duration, p.power_sn, p.power_bs,
                   p.noise_bs, p.noise_mu}) {
    if (!(v > 0)) fail("physical-layer parameters must be > 0");
  }
  if (c.uplink_mode == UplinkCostMode::kPhysical) {
    if (static_cast<int>(c.lengths.size()) != c.M) {
      fail("lengths must have M entries");
    }
    for (double l : c.lengths) {
      if (!(l > 0)) fail("message lengths must be > 0");
    }
    const auto& ch = c.channel;
    const auto s = static_cast<Index>(ch.gains.size());
    if (s == 0) fail("physical mode needs channel_states");
    for (double g : ch.gains) {
      if (!(g > 0)) fail("channel gains must be > 0");
    }
    if (ch.transition.rows() != s || ch.transition.cols() != s) {
      fail("channel_transition must be square with one row per state");
    }
    for (Index r = 0; r < s; ++r) {
      if ((ch.transition.row(r).array() < 0).any() ||
          std::abs(ch.transition.row(r).sum() - 1.0) > 1e-12) {
        fail("channel_transition rows must be probability vectors");
      }
    }
  } else {
    if (c.uplink_kappa_pmf.empty()) fail("direct mode needs uplink_kappa_pmf");
    if (static_cast<int>(c.uplink_kappa_pmf.size()) > c.N) {
      fail("uplink_kappa_pmf support must lie in 1..N");
    }
    double total = 0;
    for (double p_k : c.uplink_kappa_pmf) {
      if (!(p_k >= 0)) fail("uplink_kappa_pmf entries must be >= 0");
      total += p_k;
    }
    if (std::abs(total - 1.0) > 1e-9) fail("uplink_kappa_pmf must sum to 1");
  }
  current_khat(c);
}

Count current_khat(const SystemConfig& c) {
  Count khat = 0;
  if (c.uplink_mode == UplinkCostMode::kDirect) {
    for (std::size_t i = 0; i < c.uplink_kappa_pmf.size(); ++i) {
      if (c.uplink_kappa_pmf[i] > 0) khat = static_cast<Count>(i + 1);
    }
  } else {
    const auto& p = c.phy;
    for (int m = 0; m < c.M; ++m) {
      for (double g : c.channel.gains) {
        khat = std::max(khat,
                        uplink_slot_cost(c.lengths.at(m), p.bandwidth,
                                         p.power_sn, g, p.noise_bs,
                                         p.slot_duration));
      }
    }
  }
  if (khat < 1) fail("uplink cost law has empty support");
  if (khat > c.N) {
    fail("Khat = " + std::to_string(khat) + " exceeds N = " +
         std::to_string(c.N) + "; no frame can carry an upload");
  }
  return khat;
}

ChannelProcess::ChannelProcess(ChannelSpec spec, std::vector<int> initial)
    : spec_(std::move(spec)), states_(std::move(initial)) {
  const auto s = static_cast<Index>(spec_.gains.size());
  if (spec_.transition.rows() != s || spec_.transition.cols() != s) {
    throw StructuralError("channel transition matrix shape mismatch");
  }
  rows_.reserve(static_cast<std::size_t>(s));
  for (Index r = 0; r < s; ++r) {
    const RealVector row = spec_.transition.row(r).transpose();
    rows_.emplace_back(row.data(), row.data() + row.size());
  }
  for (int st : states_) {
    if (st < 0 || st >= s) throw StructuralError("channel state out of range");
  }
}

void ChannelProcess::step(Rng& rng) {
  for (int& st : states_) st = rows_[static_cast<std::size_t>(st)](rng);
}

RealVector ChannelProcess::stationary_distribution() const {
  // Solve pi (P - I) = 0 with sum(pi) = 1 as an overdetermined system.
  const Index s = spec_.transition.rows();
  Eigen::MatrixXd system(s + 1, s);
  system.topRows(s) =
      spec_.transition.transpose() - Eigen::MatrixXd::Identity(s, s);
  system.row(s).setOnes();
  RealVector rhs = RealVector::Zero(s + 1);
  rhs(s) = 1.0;
  return system.colPivHouseholderQr().solve(rhs);
}

std::vector<int> step_channel(ChannelProcess& process, Rng& rng) {
  process.step(rng);
  return process.states();
}

CountMatrix sample_arrivals(const RateMatrix& lambda, Rng& rng) {
  ArrivalSampler sampler(lambda);
  return sampler(rng);
}

ArrivalSampler::ArrivalSampler(const RateMatrix& lambda)
    : rows_(lambda.rows()), cols_(lambda.cols()) {
  dists_.reserve(static_cast<std::size_t>(rows_ * cols_));
  // Column-major to match Eigen storage.
  for (Index k = 0; k < cols_; ++k) {
    for (Index m = 0; m < rows_; ++m) {
      if (lambda(m, k) > 0) {
        dists_.emplace_back(std::poisson_distribution<Count>(lambda(m, k)));
      } else {
        dists_.emplace_back(std::nullopt);
      }
    }
  }
}

CountMatrix ArrivalSampler::operator()(Rng& rng) {
  CountMatrix c = CountMatrix::Zero(rows_, cols_);
  std::size_t i = 0;
  for (Index k = 0; k < cols_; ++k) {
    for (Index m = 0; m < rows_; ++m, ++i) {
      if (dists_[i]) c(m, k) = (*dists_[i])(rng);
    }
  }
  return c;
}

UplinkCostProcess::UplinkCostProcess(const SystemConfig& config, Rng& rng)
    : mode_(config.uplink_mode) {
  costs_.khat = current_khat(config);
  costs_.kappa_ul = CountVector::Ones(config.M);
  if (mode_ == UplinkCostMode::kPhysical) {
    const auto& p = config.phy;
    const auto states = static_cast<Index>(config.channel.gains.size());
    kappa_table_.resize(config.M, states);
    for (int m = 0; m < config.M; ++m) {
      for (Index s = 0; s < states; ++s) {
        kappa_table_(m, s) = uplink_slot_cost(
            config.lengths[m], p.bandwidth, p.power_sn,
            config.channel.gains[static_cast<std::size_t>(s)], p.noise_bs,
            p.slot_duration);
      }
    }
    // Start each node in a state drawn from the stationary law.
    ChannelProcess probe(config.channel,
                         std::vector<int>(static_cast<std::size_t>(config.M)));
    const RealVector pi = probe.stationary_distribution().cwiseMax(0.0);
    std::discrete_distribution<int> initial(pi.data(), pi.data() + pi.size());
    std::vector<int> start(static_cast<std::size_t>(config.M));
    for (int& s : start) s = initial(rng);
    channel_.emplace(config.channel, std::move(start));
    refresh_from_channel();
  } else {
    direct_pmf_ = std::discrete_distribution<int>(
        config.uplink_kappa_pmf.begin(), config.uplink_kappa_pmf.end());
    sample_direct(rng);
  }
}

void UplinkCostProcess::advance(Rng& rng) {
  if (mode_ == UplinkCostMode::kPhysical) {
    channel_->step(rng);
    refresh_from_channel();
  } else {
    sample_direct(rng);
  }
}

void UplinkCostProcess::refresh_from_channel() {
  const auto& st = channel_->states();
  for (Index m = 0; m < costs_.kappa_ul.size(); ++m) {
    costs_.kappa_ul(m) = kappa_table_(m, st[static_cast<std::size_t>(m)]);
  }
}

void UplinkCostProcess::sample_direct(Rng& rng) {
  for (Index m = 0; m < costs_.kappa_ul.size(); ++m) {
    costs_.kappa_ul(m) = direct_pmf_(rng) + 1;
  }
}

}  // namespace aoi
