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

#include "aoi/validation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "aoi/policies.hpp"

namespace aoi {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

void record(CampaignResult& r, bool ok, const std::string& what) {
  if (ok) {
    ++r.passed;
  } else {
    if (r.failed == 0) r.first_failure = what;
    ++r.failed;
  }
}

// Depth-first walk over every allocation with a(m,k) <= q(m,k) and upload
// flags in {0,1} that fits the slot budget.
struct Enumerator {
  const FrameInstance& inst;
  AllocationDecision a;
  double best = -std::numeric_limits<double>::infinity();

  explicit Enumerator(const FrameInstance& in)
      : inst(in), a(zero_allocation(in.state.Q.rows(), in.state.Q.cols())) {}

  void walk(Index entry, Count used) {
    const Index M = a.rows();
    const Index cols = a.cols();
    if (entry == M * cols) {
      best = std::max(best, frame_objective(inst.state, inst.lambda, inst.V,
                                            inst.V0, a));
      return;
    }
    const Index m = entry / cols;
    const Index j = entry % cols;
    const bool upload = j == cols - 1;
    const Count cost = upload ? inst.costs.kappa_ul(m) : j + 1;
    const Count cap = upload ? 1 : inst.state.Q(m, j);
    for (Count n = 0; n <= cap && used + n * cost <= inst.N; ++n) {
      a(m, j) = n;
      walk(entry + 1, used + n * cost);
    }
    a(m, j) = 0;
  }
};

}  // namespace

FrameInstance random_frame_instance(Rng& rng) {
  const int M = uniform_int(rng, 1, 3);
  const int kbar = uniform_int(rng, 1, 3);
  FrameInstance inst;
  inst.N = uniform_int(rng, 1, 12);
  inst.state = NetworkState::initial(M, kbar);
  for (int m = 0; m < M; ++m) inst.state.x(m) = uniform_int(rng, 1, 20);
  for (int m = 0; m < M; ++m) {
    for (int k = 0; k < kbar; ++k) inst.state.Q(m, k) = uniform_int(rng, 0, 5);
  }
  inst.costs.kappa_ul = CountVector(M);
  for (int m = 0; m < M; ++m) {
    inst.costs.kappa_ul(m) = uniform_int(rng, 1, static_cast<int>(inst.N));
  }
  inst.costs.khat = inst.costs.kappa_ul.maxCoeff();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  inst.lambda = RateMatrix(M, kbar);
  for (int m = 0; m < M; ++m) {
    for (int k = 0; k < kbar; ++k) inst.lambda(m, k) = 4.0 * u(rng);
  }
  inst.V = std::pow(10.0, 2.0 * u(rng) - 1.0);
  inst.V0 = 0.1 + 2.0 * u(rng);
  return inst;
}

CampaignResult knapsack_oracle_campaign(int instances, std::uint64_t seed,
                                        const KnapsackSolver& solver) {
  CampaignResult r;
  r.name = "knapsack_oracle";
  const auto start = Clock::now();
  Rng rng = derive_stream(seed, "validate-knapsack");
  for (int i = 0; i < instances; ++i) {
    const FrameInstance inst = random_frame_instance(rng);
    const auto items = build_frame_knapsack(inst.state, inst.costs,
                                            inst.lambda, inst.V, inst.V0,
                                            inst.N);
    const auto cap = static_cast<int>(inst.N);
    const KnapsackSolution dp = solver(items, cap);
    const KnapsackSolution bf = solve_bruteforce(items, cap);
    std::ostringstream what;
    what << "instance " << i << ": dp " << dp.total_value << " vs exhaustive "
         << bf.total_value;
    record(r, std::abs(dp.total_value - bf.total_value) <= 1e-9, what.str());
  }
  r.seconds = elapsed(start);
  return r;
}

CampaignResult decision_exhaustive_campaign(int instances, std::uint64_t seed,
                                            const KnapsackSolver& solver) {
  CampaignResult r;
  r.name = "decision_exhaustive";
  const auto start = Clock::now();
  Rng rng = derive_stream(seed, "validate-decision");
  for (int i = 0; i < instances; ++i) {
    const FrameInstance inst = random_frame_instance(rng);
    const auto items = build_frame_knapsack(inst.state, inst.costs,
                                            inst.lambda, inst.V, inst.V0,
                                            inst.N);
    const auto sol = solver(items, static_cast<int>(inst.N));
    const AllocationDecision a = allocation_from_counts(
        items, sol.counts, inst.state.Q.rows(), inst.state.Q.cols());
    const bool valid =
        !validate_allocation(a, inst.state.Q, inst.costs.kappa_ul, inst.N);
    const double got =
        frame_objective(inst.state, inst.lambda, inst.V, inst.V0, a);
    Enumerator e(inst);
    e.walk(0, 0);
    std::ostringstream what;
    what << "instance " << i << ": decision " << got << " vs best " << e.best
         << (valid ? "" : " (decision invalid)");
    record(r, valid && std::abs(got - e.best) <= 1e-9, what.str());
  }
  r.seconds = elapsed(start);
  return r;
}

CampaignResult update_law_campaign(int tuples, std::uint64_t seed) {
  CampaignResult r;
  r.name = "update_laws";
  const auto start = Clock::now();
  Rng rng = derive_stream(seed, "validate-updates");
  for (int i = 0; i < tuples; ++i) {
    const int M = uniform_int(rng, 1, 4);
    const int kbar = uniform_int(rng, 1, 4);
    const Count N = uniform_int(rng, 1, 20);
    CountVector x(M);
    CountVector kappa(M);
    CountMatrix Q(M, kbar), c(M, kbar);
    AllocationDecision a = zero_allocation(M, kbar);
    // Mostly in-range entries with occasional out-of-range ones so that
    // both branches of the validator are exercised.
    const bool wild = uniform_int(rng, 0, 3) == 0;
    for (int m = 0; m < M; ++m) {
      x(m) = uniform_int(rng, 1, 50);
      kappa(m) = uniform_int(rng, 1, static_cast<int>(N));
      for (int k = 0; k < kbar; ++k) {
        Q(m, k) = uniform_int(rng, 0, 6);
        c(m, k) = uniform_int(rng, 0, 4);
        a(m, k) = wild ? uniform_int(rng, -1, 8)
                       : uniform_int(rng, 0, static_cast<int>(Q(m, k)));
      }
      a(m, kbar) = wild ? uniform_int(rng, -1, 2) : uniform_int(rng, 0, 1);
    }

    bool expect_ok = true;
    Count used = 0;
    for (int m = 0; m < M; ++m) {
      for (int k = 0; k < kbar; ++k) {
        if (a(m, k) < 0 || a(m, k) > Q(m, k)) expect_ok = false;
        used += a(m, k) * (k + 1);
      }
      if (a(m, kbar) != 0 && a(m, kbar) != 1) expect_ok = false;
      used += a(m, kbar) * kappa(m);
    }
    if (used > N) expect_ok = false;

    const bool got_ok = !validate_allocation(a, Q, kappa, N);
    std::ostringstream what;
    what << "tuple " << i << ": ";
    if (got_ok != expect_ok) {
      what << "validator says " << got_ok << ", expected " << expect_ok;
      record(r, false, what.str());
      continue;
    }
    if (!got_ok) {
      record(r, true, "");
      continue;
    }
    const CountMatrix Q2 = apply_queue_update(Q, a, c);
    const CountVector x2 = apply_aoi_update(x, a);
    bool ok = true;
    for (int m = 0; m < M; ++m) {
      if (x2(m) < 1) ok = false;
      if (x2(m) != (a(m, kbar) == 1 ? 1 : x(m) + 1)) ok = false;
      for (int k = 0; k < kbar; ++k) {
        if (Q2(m, k) - c(m, k) + std::min(a(m, k), Q(m, k)) != Q(m, k)) {
          ok = false;
        }
      }
    }
    what << "update law broken";
    record(r, ok, what.str());
  }
  r.seconds = elapsed(start);
  return r;
}

std::vector<CampaignResult> run_validation(const ValidationOptions& o) {
  KnapsackSolver solver = solve_dp;
  if (o.corrupt_dp) {
    solver = [](std::span<const KnapsackItem> items, int capacity) {
      KnapsackSolution s = solve_dp(items, capacity);
      for (std::size_t i = s.counts.size(); i-- > 0;) {
        if (s.counts[i] > 0) {
          --s.counts[i];
          s.total_value -= items[i].unit_value;
          s.total_weight -= items[i].weight;
          break;
        }
      }
      return s;
    };
  }
  return {knapsack_oracle_campaign(o.knapsack_instances, o.seed, solver),
          decision_exhaustive_campaign(o.decision_instances, o.seed, solver),
          update_law_campaign(o.update_tuples, o.seed)};
}

void print_campaigns(std::ostream& out,
                     const std::vector<CampaignResult>& results) {
  out << "campaign,passed,failed,seconds,status\n";
  for (const auto& r : results) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
    out << r.name << ',' << r.passed << ',' << r.failed << ',' << secs << ','
        << (r.ok() ? "PASS" : "FAIL") << '\n';
    if (!r.ok()) out << "# " << r.name << ": " << r.first_failure << '\n';
  }
}

}  // namespace aoi
