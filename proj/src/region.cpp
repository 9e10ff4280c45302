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

#include "aoi/region.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace aoi {
namespace {

bool member_after_inflation(const Eigen::RowVectorXd& col_sums, Index M,
                            double eps, Count N, Count khat) {
  Count total = khat;
  for (Index k = 0; k < col_sums.size(); ++k) {
    total += (k + 1) * guarded_ceil(col_sums(k) + static_cast<double>(M) * eps);
    if (total > N) return false;
  }
  return true;
}

double box_volume(int M, int Kbar, double N) {
  double v = 1.0;
  for (int k = 1; k <= Kbar; ++k) v *= std::pow(N / k, M);
  return v;
}

using Membership = std::function<bool(const RateMatrix&)>;

VolumeEstimate box_rejection(int M, int Kbar, double N, std::uint64_t samples,
                             Rng& rng, const Membership& inside) {
  VolumeEstimate out;
  out.samples = samples;
  if (samples == 0) return out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RateMatrix lambda(M, Kbar);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (Index k = 0; k < Kbar; ++k) {
      for (Index m = 0; m < M; ++m) {
        lambda(m, k) = unit(rng) * N / static_cast<double>(k + 1);
      }
    }
    if (inside(lambda)) ++out.hits;
  }
  const double box = box_volume(M, Kbar, N);
  const double p = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.estimate = box * p;
  out.half_width =
      1.96 * box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return out;
}

}  // namespace

double epsilon_of_lambda(const RateMatrix& lambda, Count N, Count khat,
                         double tol) {
  const Eigen::RowVectorXd col = lambda.colwise().sum();
  const Index M = lambda.rows();
  if (!member_after_inflation(col, M, 0.0, N, khat)) {
    throw DomainError("epsilon is defined only inside the subset region");
  }
  double lo = 0.0;
  // lambda_1 + M (N + 1) > N, so membership is certainly lost here.
  double hi = static_cast<double>(N) + 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (member_after_inflation(col, M, mid, N, khat)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Membership only changes where some lambda_k + M eps crosses an integer.
  // Snap onto the largest such crossing inside the final bracket that still
  // belongs to the region.
  double best = lo;
  bool snapped = false;
  const double md = static_cast<double>(M);
  for (Index k = 0; k < col.size(); ++k) {
    const Count n = guarded_ceil(col(k) + md * lo);
    for (Count step : {Count{0}, Count{1}}) {
      const double b = (static_cast<double>(n + step) - col(k)) / md;
      if (b < lo - 2 * tol || b > hi) continue;
      if (!member_after_inflation(col, M, b, N, khat)) continue;
      if (!snapped || b > best) {
        best = b;
        snapped = true;
      }
    }
  }
  return std::max(0.0, snapped ? best : lo);
}

RegionVerdict evaluate_region(const RateMatrix& lambda, Count N, Count khat) {
  RegionVerdict v;
  v.superset_slack = superset_slack(lambda, static_cast<double>(N));
  v.subset_slack = subset_slack(lambda, N, khat);
  v.in_superset = v.superset_slack >= 0;
  v.in_subset = v.subset_slack >= 0;
  if (v.in_subset) v.epsilon = epsilon_of_lambda(lambda, N, khat);
  return v;
}

double superset_volume_analytic(int M, int Kbar, double N) {
  if (M < 1 || Kbar < 1 || !(N >= 1)) {
    throw ParameterError("superset volume needs M, Kbar, N >= 1");
  }
  const double dims = static_cast<double>(M) * Kbar;
  double log_v = dims * std::log(N) - std::lgamma(dims + 1.0);
  for (int k = 1; k <= Kbar; ++k) log_v -= M * std::log(static_cast<double>(k));
  return std::exp(log_v);
}

VolumeEstimate subset_volume_mc(int M, int Kbar, Count N, Count khat,
                                std::uint64_t samples, Rng& rng) {
  if (khat > N) {
    VolumeEstimate empty;
    empty.samples = samples;
    return empty;
  }
  return box_rejection(M, Kbar, static_cast<double>(N), samples, rng,
                       [&](const RateMatrix& l) { return in_subset(l, N, khat); });
}

VolumeEstimate superset_volume_mc(int M, int Kbar, Count N,
                                  std::uint64_t samples, Rng& rng) {
  const double n = static_cast<double>(N);
  return box_rejection(M, Kbar, n, samples, rng,
                       [&](const RateMatrix& l) { return in_superset(l, n); });
}

VolumeEstimate subset_volume_mc_parallel(int M, int Kbar, Count N, Count khat,
                                         std::uint64_t samples,
                                         std::uint64_t seed, int partitions) {
  partitions = std::max(1, partitions);
  std::vector<VolumeEstimate> parts(static_cast<std::size_t>(partitions));
  std::vector<std::thread> workers;
  const std::uint64_t share = samples / static_cast<std::uint64_t>(partitions);
  for (int p = 0; p < partitions; ++p) {
    const std::uint64_t n =
        share + (p == partitions - 1 ? samples % partitions : 0);
    workers.emplace_back([&, p, n] {
      Rng rng = derive_stream(seed, "region-mc", static_cast<std::uint64_t>(p));
      parts[static_cast<std::size_t>(p)] =
          subset_volume_mc(M, Kbar, N, khat, n, rng);
    });
  }
  for (auto& w : workers) w.join();
  VolumeEstimate out;
  out.samples = samples;
  for (const auto& part : parts) out.hits += part.hits;
  if (samples == 0 || khat > N) return out;
  const double box = box_volume(M, Kbar, static_cast<double>(N));
  const double p = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.estimate = box * p;
  out.half_width =
      1.96 * box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return out;
}

double subset_volume_exact(int M, int Kbar, Count N, Count khat,
                           std::uint64_t max_cells) {
  if (khat > N) return 0.0;
  const double m_fact = std::tgamma(M + 1.0);
  std::uint64_t visited = 0;
  // Volume of {v in R^M_{>=0} : n - 1 < sum v <= n}.
  auto slab = [&](Count n) {
    return (std::pow(static_cast<double>(n), M) -
            std::pow(static_cast<double>(n - 1), M)) /
           m_fact;
  };
  std::function<double(int, Count)> walk = [&](int k, Count budget) -> double {
    if (k > Kbar) return 1.0;
    double total = 0.0;
    for (Count n = 1; n * k <= budget; ++n) {
      if (++visited > max_cells) {
        throw DomainError("exact subset volume: cell budget exceeded");
      }
      total += slab(n) * walk(k + 1, budget - n * k);
    }
    return total;
  };
  return walk(1, N - khat);
}

}  // namespace aoi
