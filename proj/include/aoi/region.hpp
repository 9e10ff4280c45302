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

// Achievable-region geometry for an M x Kbar mean-arrival matrix lambda.
//
//   superset:  sum_{m,k} k lambda(m,k) <= N
//   subset:    Khat + sum_k k ceil(lambda_k) <= N,  lambda_k = sum_m lambda(m,k)
//
// Every lambda in the subset is served with finite cost by the stochastic
// reservation policy; every achievable lambda lies in the superset.

#ifndef AOI_REGION_HPP
#define AOI_REGION_HPP

#include <cstdint>
#include <optional>

#include "aoi/rng.hpp"
#include "aoi/types.hpp"

namespace aoi {

/// k = 1..Kbar as a row vector.
inline Eigen::RowVectorXd slot_weights(Index kbar) {
  return Eigen::RowVectorXd::LinSpaced(kbar, 1.0, static_cast<double>(kbar));
}

/// Slot demand sum_{m,k} k lambda(m,k).
template <typename Derived>
double slot_demand(const Eigen::MatrixBase<Derived>& lambda) {
  return (lambda.colwise().sum().cwiseProduct(slot_weights(lambda.cols())))
      .sum();
}

template <typename Derived>
double superset_slack(const Eigen::MatrixBase<Derived>& lambda, double N) {
  return N - slot_demand(lambda);
}

template <typename Derived>
bool in_superset(const Eigen::MatrixBase<Derived>& lambda, double N) {
  return superset_slack(lambda, N) >= 0.0;
}

/// Slots reserved by the stochastic policy: Khat + sum_k k ceil(lambda_k).
template <typename Derived>
Count reserved_slots(const Eigen::MatrixBase<Derived>& lambda, Count khat) {
  const Eigen::RowVectorXd col = lambda.colwise().sum();
  Count total = khat;
  for (Index k = 0; k < col.size(); ++k) total += (k + 1) * guarded_ceil(col(k));
  return total;
}

template <typename Derived>
double subset_slack(const Eigen::MatrixBase<Derived>& lambda, Count N,
                    Count khat) {
  return static_cast<double>(N - reserved_slots(lambda, khat));
}

template <typename Derived>
bool in_subset(const Eigen::MatrixBase<Derived>& lambda, Count N, Count khat) {
  return reserved_slots(lambda, khat) <= N;
}

/// Sufficient (not necessary) condition for a finite-cost schedule.
template <typename Derived>
bool solution_exists(const Eigen::MatrixBase<Derived>& lambda, Count N,
                     Count khat) {
  return in_subset(lambda, N, khat);
}

/// Largest eps >= 0 with lambda + eps * ones still in the subset. Bisection
/// on the membership predicate, then snapped onto the ceiling breakpoint
/// where membership is lost. Throws DomainError when lambda itself is
/// outside the subset.
double epsilon_of_lambda(const RateMatrix& lambda, Count N, Count khat,
                         double tol = 1e-9);

struct RegionVerdict {
  bool in_superset = false;
  bool in_subset = false;
  std::optional<double> epsilon;
  double superset_slack = 0;
  double subset_slack = 0;
};

RegionVerdict evaluate_region(const RateMatrix& lambda, Count N, Count khat);

/// Volume of the superset simplex: (1 / (M Kbar)!) prod_{m,k} N / k.
double superset_volume_analytic(int M, int Kbar, double N);

struct VolumeEstimate {
  double estimate = 0;
  double half_width = 0;  // 95% normal-approximation interval
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

/// Rejection sampling of the subset inside the box prod [0, N/k].
VolumeEstimate subset_volume_mc(int M, int Kbar, Count N, Count khat,
                                std::uint64_t samples, Rng& rng);

/// Same estimator for the superset; the box and sampler are shared.
VolumeEstimate superset_volume_mc(int M, int Kbar, Count N,
                                  std::uint64_t samples, Rng& rng);

/// Subset volume split over `partitions` workers, each on its own stream
/// derived from `seed`. Deterministic for a fixed (seed, partitions).
VolumeEstimate subset_volume_mc_parallel(int M, int Kbar, Count N, Count khat,
                                         std::uint64_t samples,
                                         std::uint64_t seed, int partitions);

/// Exact subset volume by enumerating the ceiling cells n_k = ceil(lambda_k).
/// Each cell with all n_k >= 1 contributes prod_k (n_k^M - (n_k - 1)^M) / M!.
/// Refuses (DomainError) when more than `max_cells` cells would be visited.
double subset_volume_exact(int M, int Kbar, Count N, Count khat,
                           std::uint64_t max_cells = 50'000'000);

}  // namespace aoi

#endif  // AOI_REGION_HPP
