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

// Static system description, channel processes, per-frame slot costs and
// request arrivals.

#ifndef AOI_MODEL_HPP
#define AOI_MODEL_HPP

#include <optional>
#include <random>
#include <vector>

#include "aoi/rng.hpp"
#include "aoi/types.hpp"

namespace aoi {

enum class UplinkCostMode { kPhysical, kDirect };

struct PhysicalLayer {
  double bandwidth = 1e6;       // B, Hz
  double slot_duration = 1e-3;  // dT, s
  double power_sn = 0.1;        // P_SN, W
  double power_bs = 1.0;        // P_BS, W
  double noise_bs = 1e-9;       // N_BS, W
  double noise_mu = 1e-9;       // N_u, W
};

/// Finite-state Markov gain chain shared (in law) by every source node.
struct ChannelSpec {
  std::vector<double> gains;
  Eigen::MatrixXd transition;  // row-stochastic, gains.size() square
};

struct SystemConfig {
  int M = 1;     // source nodes / messages
  int N = 1;     // slots per frame
  int Kbar = 1;  // largest downlink slot cost
  std::vector<double> lengths;  // L_m in bits, size M
  PhysicalLayer phy;
  double V = 1.0;
  std::optional<double> V0;  // empty = derive automatically from lambda
  UplinkCostMode uplink_mode = UplinkCostMode::kDirect;
  std::vector<double> uplink_kappa_pmf;  // entry i is P(kappa = i + 1)
  ChannelSpec channel;
  RateMatrix lambda;  // M x Kbar mean arrivals per frame
};

/// Throws ConfigError describing the first violated invariant.
void validate(const SystemConfig& config);

/// Slots needed to move `length_bits` over a link whose per-slot capacity is
/// B log2(1 + P g / N0) dT bits.
Count uplink_slot_cost(double length_bits, double bandwidth, double power,
                       double gain, double noise, double slot_duration);

/// Same law as uplink_slot_cost, evaluated with the BS power and MU noise.
Count downlink_slot_cost(double length_bits, double bandwidth, double power,
                         double gain, double noise, double slot_duration);

/// Downlink queue index k (1-based) a request for message m lands in when
/// its MU sees `gain`. Throws ConfigError when the cost exceeds Kbar.
Count downlink_bucket(const SystemConfig& config, int m, double gain);

/// Per-frame uplink slot costs plus the configured upper bound K-hat.
struct SlotCostVector {
  CountVector kappa_ul;
  Count khat = 1;
};

/// Maximum uplink slot cost over the support of the uplink-cost law.
/// Throws ConfigError when it exceeds N.
Count current_khat(const SystemConfig& config);

/// Markov chain over channel gain indices, one independent copy per source
/// node.
class ChannelProcess {
 public:
  ChannelProcess(ChannelSpec spec, std::vector<int> initial_states);

  const std::vector<int>& states() const { return states_; }
  double gain(int m) const { return spec_.gains[states_[m]]; }
  const ChannelSpec& spec() const { return spec_; }

  /// Draws every node's next state from its current row.
  void step(Rng& rng);

  /// Left Perron vector of the transition matrix, normalised to sum 1.
  RealVector stationary_distribution() const;

 private:
  ChannelSpec spec_;
  std::vector<int> states_;
  std::vector<std::discrete_distribution<int>> rows_;
};

/// Advances `process` one frame and returns the new per-node states.
std::vector<int> step_channel(ChannelProcess& process, Rng& rng);

/// Independent Poisson(lambda(m,k)) counts. A zero mean yields zero.
CountMatrix sample_arrivals(const RateMatrix& lambda, Rng& rng);

/// Reusable Poisson sampler for a fixed mean matrix.
class ArrivalSampler {
 public:
  explicit ArrivalSampler(const RateMatrix& lambda);
  CountMatrix operator()(Rng& rng);

 private:
  Index rows_;
  Index cols_;
  std::vector<std::optional<std::poisson_distribution<Count>>> dists_;
};

/// Produces kappa_ul(t) frame by frame, in either physical or direct mode.
class UplinkCostProcess {
 public:
  /// Draws the first frame's costs from `rng`.
  UplinkCostProcess(const SystemConfig& config, Rng& rng);

  const SlotCostVector& current() const { return costs_; }
  void advance(Rng& rng);

 private:
  void refresh_from_channel();
  void sample_direct(Rng& rng);

  UplinkCostMode mode_;
  std::optional<ChannelProcess> channel_;
  CountMatrix kappa_table_;  // physical mode: M x states
  std::discrete_distribution<int> direct_pmf_;
  SlotCostVector costs_;
};

}  // namespace aoi

#endif  // AOI_MODEL_HPP
