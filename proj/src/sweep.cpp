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

#include "aoi/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <random>
#include <thread>

#include "aoi/region.hpp"

namespace aoi {

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "sum_arrival_scale") return SweepVariable::kSumArrivalRate;
  if (name == "V") return SweepVariable::kV;
  throw ConfigError("unknown sweep variable '" + name +
                    "' (expected sum_arrival_scale or V)");
}

void SweepSpec::validate() const {
  if (grid.empty()) throw ConfigError("sweep grid must be non-empty");
  if (seeds < 1) throw ConfigError("sweep needs at least one seed");
  if (policies.empty()) throw ConfigError("sweep needs at least one policy");
  if (jobs < 1) throw ConfigError("--jobs must be >= 1");
  for (double g : grid) {
    if (!(g >= 0) || !std::isfinite(g)) {
      throw ConfigError("sweep grid values must be finite and >= 0");
    }
  }
  RunConfig{frames, warmup, master_seed}.validate();
}

RateMatrix sample_base_lambda(Index M, Index Kbar, std::uint64_t master_seed) {
  Rng rng = derive_stream(master_seed, "lambda");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RateMatrix out(M, Kbar);
  for (Index m = 0; m < M; ++m) {
    for (Index k = 0; k < Kbar; ++k) out(m, k) = u(rng);
  }
  return out;
}

RateMatrix scale_to_sum_arrival_rate(const RateMatrix& base,
                                     double sum_arrival_rate) {
  const double demand = slot_demand(base);
  if (!(demand > 0)) {
    if (sum_arrival_rate == 0) return base;
    throw DomainError("cannot rescale an all-zero arrival matrix");
  }
  return base * (sum_arrival_rate / demand);
}

std::vector<SweepRow> run_sweep(const SystemConfig& base, bool has_lambda,
                                const SweepSpec& spec) {
  spec.validate();
  const RateMatrix lambda0 =
      has_lambda ? base.lambda
                 : sample_base_lambda(base.M, base.Kbar, spec.master_seed);

  struct Point {
    SystemConfig config;
    std::uint64_t seed;
    PolicySettings policy;
    double grid_value;
  };
  std::vector<Point> points;
  for (double g : spec.grid) {
    SystemConfig cfg = base;
    if (spec.variable == SweepVariable::kSumArrivalRate) {
      cfg.lambda = scale_to_sum_arrival_rate(lambda0, g);
    } else {
      cfg.lambda = lambda0;
      cfg.V = g;
    }
    for (int s = 0; s < spec.seeds; ++s) {
      for (const auto& p : spec.policies) {
        points.push_back(Point{cfg, spec.master_seed + static_cast<std::uint64_t>(s),
                               p, g});
      }
    }
  }

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size() && !failed; i = next++) {
      const Point& p = points[i];
      SweepRow& row = rows[i];
      row.grid_value = p.grid_value;
      row.seed = p.seed;
      row.policy = p.policy.kind;
      row.V = p.config.V;
      row.sum_arrival_rate = slot_demand(p.config.lambda);
      try {
        auto policy = make_policy(p.config, p.policy);
        row.report = run(p.config, RunConfig{spec.frames, spec.warmup, p.seed},
                         *policy);
      } catch (const InfeasiblePolicyError& e) {
        row.error = e.what();
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const int n = std::min<int>(spec.jobs, static_cast<int>(points.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     Count frames) {
  out << report_csv_header() << '\n';
  for (const auto& row : rows) {
    if (row.report) {
      out << report_csv_row(*row.report) << '\n';
      continue;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.10g,%.10g", row.V, row.sum_arrival_rate);
    out << to_string(row.policy) << ',' << row.seed << ',' << frames << ','
        << buf << ",nan,nan,nan,nan,nan,nan\n";
  }
}

}  // namespace aoi
