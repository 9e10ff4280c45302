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

#include "aoi/simulator.hpp"

#include <cstdio>
#include <sstream>
#include <utility>

#include "aoi/region.hpp"

namespace aoi {
namespace {

/// FIFO arrival frames per queue, run-length encoded.
class DelayLedger {
 public:
  DelayLedger(Index M, Index kbar)
      : kbar_(kbar), queues_(static_cast<std::size_t>(M * kbar)) {}

  void arrive(const CountMatrix& c, Count frame) {
    for (Index m = 0; m < c.rows(); ++m) {
      for (Index k = 0; k < c.cols(); ++k) {
        if (c(m, k) > 0) at(m, k).emplace_back(frame, c(m, k));
      }
    }
  }

  /// Pops served requests; adds their delays to `acc` when `counted`.
  void serve(const AllocationDecision& a, Count frame, bool counted,
             Accumulators& acc) {
    for (Index m = 0; m < a.rows(); ++m) {
      for (Index k = 0; k < kbar_; ++k) {
        Count n = a(m, k);
        auto& q = at(m, k);
        while (n > 0 && !q.empty()) {
          auto& [arrival, left] = q.front();
          const Count take = std::min(n, left);
          if (counted) {
            acc.delay_sum += static_cast<double>(take * (frame - arrival + 1));
            acc.delay_count += take;
          }
          left -= take;
          n -= take;
          if (left == 0) q.pop_front();
        }
      }
    }
  }

 private:
  std::deque<std::pair<Count, Count>>& at(Index m, Index k) {
    return queues_[static_cast<std::size_t>(m * kbar_ + k)];
  }

  Index kbar_;
  std::vector<std::deque<std::pair<Count, Count>>> queues_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string("nan");
}

}  // namespace

RunConfig RunConfig::with_horizon(Count frames, std::uint64_t seed) {
  return RunConfig{frames, frames / 10, seed};
}

void RunConfig::validate() const {
  if (frames < 1) throw ConfigError("horizon must be >= 1 frame");
  if (warmup < 0 || warmup >= frames) {
    throw ConfigError("warmup must satisfy 0 <= warmup < frames");
  }
}

PolicyViolationError::PolicyViolationError(Count frame,
                                           AllocationViolation violation)
    : std::runtime_error("frame " + std::to_string(frame) +
                         ": invalid allocation: " + violation.message),
      frame_(frame),
      violation_(std::move(violation)) {}

std::optional<double> avg_delay_direct(
    std::span<const RequestLedgerEntry> ledger) {
  double sum = 0;
  Count n = 0;
  for (const auto& e : ledger) {
    if (!e.departure) continue;
    sum += static_cast<double>(service_delay(e));
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> avg_aoi(const Accumulators& acc) {
  if (acc.arrivals == 0) return std::nullopt;
  return acc.served_aoi / static_cast<double>(acc.arrivals);
}

std::optional<double> avg_delay_formula(const Accumulators& acc,
                                        const RateMatrix& lambda) {
  const double total = lambda.sum();
  if (!(total > 0) || acc.frames == 0) return std::nullopt;
  const double weighted =
      lambda.cwiseProduct(acc.queue_sum).sum() / static_cast<double>(acc.frames);
  return weighted / total + 1.0;
}

double objective_value(const Accumulators& acc, double V,
                       const RateMatrix& lambda) {
  if (acc.frames == 0) return 0.0;
  return (V * acc.served_aoi + lambda.cwiseProduct(acc.queue_sum).sum()) /
         static_cast<double>(acc.frames);
}

double slot_utility(const Accumulators& acc, Count N) {
  if (acc.frames == 0) return 0.0;
  return acc.slots / (static_cast<double>(N) * static_cast<double>(acc.frames));
}

double stability_diagnostic(std::span<const double> total_queue) {
  const std::size_t n = total_queue.size();
  const std::size_t start = n / 2;
  const std::size_t len = n - start;
  if (len < 2) return 0.0;
  double mean_t = 0, mean_q = 0;
  for (std::size_t i = start; i < n; ++i) {
    mean_t += static_cast<double>(i);
    mean_q += total_queue[i];
  }
  mean_t /= static_cast<double>(len);
  mean_q /= static_cast<double>(len);
  double sxy = 0, sxx = 0;
  for (std::size_t i = start; i < n; ++i) {
    const double dt = static_cast<double>(i) - mean_t;
    sxy += dt * (total_queue[i] - mean_q);
    sxx += dt * dt;
  }
  return sxy / sxx;
}

MetricsReport run(const SystemConfig& config, const RunConfig& rc,
                  Policy& policy, const TraceSink& trace) {
  validate(config);
  rc.validate();
  const Index M = config.M;
  const Index kbar = config.Kbar;

  Rng arrivals_rng = derive_stream(rc.seed, "arrivals");
  Rng channel_rng = derive_stream(rc.seed, "channel");
  Rng policy_rng = derive_stream(rc.seed, "policy");

  UplinkCostProcess uplink(config, channel_rng);
  ArrivalSampler sampler(config.lambda);
  DelayLedger ledger(M, kbar);
  NetworkState state = NetworkState::initial(config.M, config.Kbar);

  Accumulators acc;
  acc.queue_sum = RateMatrix::Zero(M, kbar);
  acc.served_by_queue = CountMatrix::Zero(M, kbar);
  std::vector<double> total_queue;
  total_queue.reserve(static_cast<std::size_t>(rc.frames));

  for (Count t = 1; t <= rc.frames; ++t) {
    state.t = t;
    const SlotCostVector& costs = uplink.current();
    AllocationDecision a = policy.decide(state, costs, policy_rng);
    if (auto bad = validate_allocation(a, state.Q, costs.kappa_ul, config.N)) {
      throw PolicyViolationError(t, std::move(*bad));
    }
    const bool counted = t > rc.warmup;
    const Count used = slots_used(a, costs.kappa_ul);
    if (counted) {
      ++acc.frames;
      acc.served_aoi += static_cast<double>(served_aoi_sum(state.x, a));
      acc.queue_sum += state.Q.cast<double>();
      acc.slots += static_cast<double>(used);
      acc.served_by_queue += downlink_part(a);
      acc.served += downlink_part(a).sum();
    }
    ledger.serve(a, t, counted, acc);
    total_queue.push_back(static_cast<double>(state.Q.sum()));

    CountMatrix c = sampler(arrivals_rng);
    if (counted) acc.arrivals += c.sum();
    policy.observe_arrivals(c);
    ledger.arrive(c, t);
    if (trace) trace(FrameRecord{t, &state.x, &state.Q, &a, &c, used});

    state.x = apply_aoi_update(state.x, a);
    state.Q = apply_queue_update(state.Q, a, c);
    uplink.advance(channel_rng);
  }

  MetricsReport r;
  r.policy = std::string(to_string(policy.kind()));
  r.seed = rc.seed;
  r.frames = rc.frames;
  r.V = config.V;
  r.sum_arrival_rate = slot_demand(config.lambda);
  r.avg_aoi = aoi::avg_aoi(acc);
  if (acc.served > 0) {
    r.avg_aoi_served = acc.served_aoi / static_cast<double>(acc.served);
  }
  r.avg_delay_formula = aoi::avg_delay_formula(acc, config.lambda);
  if (acc.delay_count > 0) {
    r.avg_delay_direct = acc.delay_sum / static_cast<double>(acc.delay_count);
  }
  r.objective = objective_value(acc, config.V, config.lambda);
  r.slot_utility = aoi::slot_utility(acc, config.N);
  r.total_arrivals = acc.arrivals;
  r.total_served = acc.served;
  r.frames_counted = acc.frames;
  r.growth_slope = stability_diagnostic(total_queue);
  const double frames = static_cast<double>(std::max<Count>(acc.frames, 1));
  r.service_rate = acc.served_by_queue.cast<double>() / frames;
  r.mean_queue = acc.queue_sum / frames;
  return r;
}

std::string report_csv_header() {
  return "policy,seed,T,V,sum_arrival_rate,avg_aoi,avg_delay_formula,"
         "avg_delay_direct,objective,slot_utility,growth_slope";
}

std::string report_csv_row(const MetricsReport& r) {
  std::ostringstream os;
  os << r.policy << ',' << r.seed << ',' << r.frames << ',' << fmt(r.V) << ','
     << fmt(r.sum_arrival_rate) << ',' << fmt(r.avg_aoi) << ','
     << fmt(r.avg_delay_formula) << ',' << fmt(r.avg_delay_direct) << ','
     << fmt(r.objective) << ',' << fmt(r.slot_utility) << ','
     << fmt(r.growth_slope);
  return os.str();
}

std::string trace_csv_header() {
  return "t,m,k,x_m,q_mk,a_mk,c_mk,uplink_m,slots_used";
}

TraceSink csv_trace_sink(std::ostream& out) {
  return [&out](const FrameRecord& f) {
    const auto& a = *f.A;
    const Index kbar = f.Q->cols();
    for (Index m = 0; m < f.Q->rows(); ++m) {
      for (Index k = 0; k < kbar; ++k) {
        out << f.t << ',' << m + 1 << ',' << k + 1 << ',' << (*f.x)(m) << ','
            << (*f.Q)(m, k) << ',' << a(m, k) << ',' << (*f.c)(m, k) << ','
            << a(m, kbar) << ',' << f.slots_used << '\n';
      }
    }
  };
}

}  // namespace aoi
