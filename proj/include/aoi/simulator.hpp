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

// Frame-by-frame simulation of one policy and the run metrics.
//
// Frame t: observe kappa_ul(t), decide A(t), validate, record, draw the
// arrivals c(t), update ages and queues, advance the uplink channel.
// Requests drawn in frame t are first eligible for service in frame t + 1.

#ifndef AOI_SIMULATOR_HPP
#define AOI_SIMULATOR_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "aoi/model.hpp"
#include "aoi/policies.hpp"
#include "aoi/state.hpp"

namespace aoi {

struct RunConfig {
  Count frames = 10'000;  // horizon T0
  Count warmup = 1'000;   // frames 1..warmup are excluded from averages
  std::uint64_t seed = 1;

  /// Warmup of 10% of the horizon.
  static RunConfig with_horizon(Count frames, std::uint64_t seed);
  void validate() const;
};

/// Raised when a policy emits an allocation that breaks a constraint.
class PolicyViolationError : public std::runtime_error {
 public:
  PolicyViolationError(Count frame, AllocationViolation violation);
  Count frame() const { return frame_; }
  const AllocationViolation& violation() const { return violation_; }

 private:
  Count frame_;
  AllocationViolation violation_;
};

/// One request's life. Arrival is the frame in which the request reaches
/// the BS (it is first eligible for service one frame later); departure is
/// the frame that transmits it.
struct RequestLedgerEntry {
  int m = 0;
  int k = 1;
  Count arrival = 0;
  std::optional<Count> departure;
};

/// Frames from eligibility to delivery, counting the transmission frame.
inline Count service_delay(const RequestLedgerEntry& e) {
  return *e.departure - e.arrival + 1;
}

/// Mean service_delay over served entries; empty when none was served.
std::optional<double> avg_delay_direct(std::span<const RequestLedgerEntry> ledger);

/// Post-warmup running sums.
struct Accumulators {
  Count frames = 0;
  double served_aoi = 0;  // sum a(m,k) (x_m + 1)
  Count arrivals = 0;
  Count served = 0;
  double slots = 0;
  RateMatrix queue_sum;   // sum_t q(m,k)(t)
  CountMatrix served_by_queue;
  // Direct delay over requests delivered in counted frames.
  double delay_sum = 0;
  Count delay_count = 0;
};

/// Served AoI over arrivals; empty without arrivals.
std::optional<double> avg_aoi(const Accumulators& acc);
/// (1 / sum lambda) time-average of sum lambda(m,k) q(m,k), plus one frame.
std::optional<double> avg_delay_formula(const Accumulators& acc,
                                        const RateMatrix& lambda);
/// Time average of sum V a(m,k)(x_m + 1) + lambda(m,k) q(m,k).
double objective_value(const Accumulators& acc, double V,
                       const RateMatrix& lambda);
double slot_utility(const Accumulators& acc, Count N);

/// Least-squares slope of the total queue length over the second half of
/// the series (requests per frame).
double stability_diagnostic(std::span<const double> total_queue);

struct MetricsReport {
  std::string policy;
  std::uint64_t seed = 0;
  Count frames = 0;
  double V = 0;
  double sum_arrival_rate = 0;  // sum k lambda(m,k)
  std::optional<double> avg_aoi;
  std::optional<double> avg_aoi_served;  // per served request
  std::optional<double> avg_delay_formula;
  std::optional<double> avg_delay_direct;
  double objective = 0;
  double slot_utility = 0;
  Count total_arrivals = 0;
  Count total_served = 0;
  Count frames_counted = 0;
  double growth_slope = 0;
  RateMatrix service_rate;  // served(m,k) / frames counted
  RateMatrix mean_queue;
};

struct FrameRecord {
  Count t = 0;
  const CountVector* x = nullptr;
  const CountMatrix* Q = nullptr;
  const AllocationDecision* A = nullptr;
  const CountMatrix* c = nullptr;
  Count slots_used = 0;
};

using TraceSink = std::function<void(const FrameRecord&)>;

/// Runs `policy` for run.frames frames. Throws PolicyViolationError if the
/// policy ever breaks a constraint.
MetricsReport run(const SystemConfig& config, const RunConfig& run,
                  Policy& policy, const TraceSink& trace = {});

/// Report CSV: policy,seed,T,V,sum_arrival_rate,avg_aoi,avg_delay_formula,
/// avg_delay_direct,objective,slot_utility,growth_slope
std::string report_csv_header();
std::string report_csv_row(const MetricsReport& report);

/// Trace CSV, one row per (t, m, k):
/// t,m,k,x_m,q_mk,a_mk,c_mk,uplink_m,slots_used
std::string trace_csv_header();
TraceSink csv_trace_sink(std::ostream& out);

}  // namespace aoi

#endif  // AOI_SIMULATOR_HPP
