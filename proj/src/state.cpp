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

#include "aoi/state.hpp"

#include <sstream>

namespace aoi {

NetworkState NetworkState::initial(int M, int Kbar) {
  return NetworkState{CountVector::Ones(M), CountMatrix::Zero(M, Kbar), 1};
}

std::optional<AllocationViolation> validate_allocation(
    const AllocationDecision& a, const CountMatrix& Q,
    const CountVector& kappa_ul, Count N) {
  const Index M = Q.rows();
  const Index kbar = Q.cols();
  if (a.rows() != M || a.cols() != kbar + 1 || kappa_ul.size() != M) {
    throw StructuralError("allocation shape does not match M x (Kbar + 1)");
  }
  using Kind = AllocationViolation::Kind;
  for (Index m = 0; m < M; ++m) {
    for (Index j = 0; j <= kbar; ++j) {
      if (a(m, j) < 0) {
        return AllocationViolation{Kind::kNegativeEntry, m, j + 1,
                                   "negative allocation entry"};
      }
    }
    if (a(m, kbar) > 1) {
      return AllocationViolation{Kind::kUplinkNotBinary, m, kbar + 1,
                                 "upload flag must be 0 or 1"};
    }
  }
  for (Index m = 0; m < M; ++m) {
    for (Index k = 0; k < kbar; ++k) {
      if (a(m, k) > Q(m, k)) {
        std::ostringstream os;
        os << "serves " << a(m, k) << " requests from queue (" << m + 1
           << "," << k + 1 << ") holding " << Q(m, k);
        return AllocationViolation{Kind::kServiceExceedsQueue, m, k + 1,
                                   os.str()};
      }
    }
  }
  const Count used = slots_used(a, kappa_ul);
  if (used > N) {
    std::ostringstream os;
    os << "uses " << used << " slots of " << N;
    return AllocationViolation{Kind::kSlotBudgetExceeded, -1, -1, os.str()};
  }
  return std::nullopt;
}

CountVector apply_aoi_update(const CountVector& x,
                             const AllocationDecision& a) {
  const auto up = uplink_part(a);
  CountVector next(x.size());
  for (Index m = 0; m < x.size(); ++m) next(m) = up(m) == 1 ? 1 : x(m) + 1;
  return next;
}

CountMatrix apply_queue_update(const CountMatrix& Q,
                               const AllocationDecision& a,
                               const CountMatrix& c) {
  return (Q - downlink_part(a)).cwiseMax(Count{0}) + c;
}

Count served_aoi_sum(const CountVector& x, const AllocationDecision& a) {
  return (downlink_part(a).rowwise().sum().array() * (x.array() + 1)).sum();
}

Count slots_used(const AllocationDecision& a, const CountVector& kappa_ul) {
  const auto down = downlink_part(a);
  const CountVector k = CountVector::LinSpaced(down.cols(), 1, down.cols());
  return uplink_part(a).dot(kappa_ul) + (down * k).sum();
}

}  // namespace aoi
