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

// Closed-form performance guarantees of the drift-plus-penalty scheduler.

#ifndef AOI_BOUNDS_HPP
#define AOI_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <limits>

#include "aoi/types.hpp"

namespace aoi {

/// E[c^2] = lambda + lambda^2 for Poisson arrivals.
template <typename Derived>
RateMatrix poisson_second_moments(const Eigen::MatrixBase<Derived>& lambda) {
  return lambda.array() + lambda.array().square();
}

/// Drift constant
///   C = 1/2 sum lambda(m,k) E[c(m,k)^2] + 1/2 max lambda(m,k) ceil(N/k)^2.
template <typename DL, typename DS>
double constant_C(const Eigen::MatrixBase<DL>& lambda,
                  const Eigen::MatrixBase<DS>& second_moments, Count N) {
  if (lambda.rows() != second_moments.rows() ||
      lambda.cols() != second_moments.cols()) {
    throw StructuralError("constant_C: moment matrix shape mismatch");
  }
  double worst = 0.0;
  for (Index k = 0; k < lambda.cols(); ++k) {
    const double cap = static_cast<double>((N + k) / (k + 1));  // ceil(N/k)
    worst = std::max(worst, lambda.col(k).maxCoeff() * cap * cap);
  }
  return 0.5 * lambda.cwiseProduct(second_moments).sum() + 0.5 * worst;
}

/// V0 = M Kbar max(lambda(m,k) + eps).
template <typename Derived>
double default_V0(const Eigen::MatrixBase<Derived>& lambda, double epsilon) {
  return static_cast<double>(lambda.rows() * lambda.cols()) *
         (lambda.maxCoeff() + epsilon);
}

/// Average-AoI guarantee
///   (max(lambda + eps) M^2 Kbar + sum lambda + C / V) / sum lambda.
template <typename Derived>
double aoi_upper_bound(const Eigen::MatrixBase<Derived>& lambda,
                       double epsilon, double C, double V) {
  const double total = lambda.sum();
  if (!(V > 0) || !(total > 0)) {
    throw DomainError("aoi bound needs V > 0 and positive total arrivals");
  }
  const double M = static_cast<double>(lambda.rows());
  const double kbar = static_cast<double>(lambda.cols());
  return ((lambda.maxCoeff() + epsilon) * M * M * kbar + total + C / V) /
         total;
}

/// Average-delay guarantee
///   ((max(lambda + eps) M^2 Kbar + sum(lambda + eps)) V + C)
///     / (eps sum lambda) + 1,
/// or +infinity when eps = 0.
template <typename Derived>
double delay_upper_bound(const Eigen::MatrixBase<Derived>& lambda,
                         double epsilon, double C, double V) {
  const double total = lambda.sum();
  if (!(total > 0)) {
    throw DomainError("delay bound needs positive total arrivals");
  }
  if (epsilon <= 0) return std::numeric_limits<double>::infinity();
  const double M = static_cast<double>(lambda.rows());
  const double kbar = static_cast<double>(lambda.cols());
  const double inflated = total + epsilon * M * kbar;
  return (((lambda.maxCoeff() + epsilon) * M * M * kbar + inflated) * V + C) /
             (epsilon * total) +
         1.0;
}

struct BoundReport {
  double V = 0;
  double C = 0;
  double V0 = 0;
  double epsilon = 0;
  double aoi_bound = 0;
  double delay_bound = 0;
};

/// All guarantees for Poisson arrivals at tradeoff weight V. Requires lambda
/// inside the subset region (DomainError otherwise).
BoundReport evaluate_bounds(const RateMatrix& lambda, Count N, Count khat,
                            double V);

}  // namespace aoi

#endif  // AOI_BOUNDS_HPP
