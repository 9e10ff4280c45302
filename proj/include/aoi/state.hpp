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

// Scheduler-visible state and its per-frame update laws.
//
// Allocation matrices are M x (Kbar + 1): column k-1 holds the number of
// requests served from queue (m, k), the last column is the 0/1 upload flag.

#ifndef AOI_STATE_HPP
#define AOI_STATE_HPP

#include <optional>
#include <string>

#include "aoi/types.hpp"

namespace aoi {

struct NetworkState {
  CountVector x;  // AoI per message, frames
  CountMatrix Q;  // M x Kbar queue lengths
  Count t = 1;    // frame index, 1-based

  /// x = 1, Q = 0 at frame 1.
  static NetworkState initial(int M, int Kbar);
};

using AllocationDecision = CountMatrix;

inline AllocationDecision zero_allocation(Index M, Index Kbar) {
  return AllocationDecision::Zero(M, Kbar + 1);
}

inline auto downlink_part(const AllocationDecision& a) {
  return a.leftCols(a.cols() - 1);
}
inline auto uplink_part(const AllocationDecision& a) {
  return a.col(a.cols() - 1);
}

struct AllocationViolation {
  enum class Kind {
    kNegativeEntry,
    kUplinkNotBinary,
    kServiceExceedsQueue,  // a(m,k) > q(m,k)
    kSlotBudgetExceeded,   // slots used > N
  };
  Kind kind;
  Index m = -1;  // 0-based, -1 when not tied to an entry
  Index k = -1;  // 1-based queue index or Kbar + 1 for the upload column
  std::string message;
};

/// Checks the service-vs-backlog and slot-budget constraints, returning the
/// first violation in row-major entry order, budget last. Throws
/// StructuralError on shape mismatch.
std::optional<AllocationViolation> validate_allocation(
    const AllocationDecision& a, const CountMatrix& Q,
    const CountVector& kappa_ul, Count N);

/// Upload resets age to 1; everything else ages by one frame.
CountVector apply_aoi_update(const CountVector& x, const AllocationDecision& a);

/// q' = max(q - a, 0) + c, entrywise.
CountMatrix apply_queue_update(const CountMatrix& Q,
                               const AllocationDecision& a,
                               const CountMatrix& c);

/// Sum over served requests of (x_m + 1).
Count served_aoi_sum(const CountVector& x, const AllocationDecision& a);

/// Uplink slots plus k slots per request served from queue (., k).
Count slots_used(const AllocationDecision& a, const CountVector& kappa_ul);

}  // namespace aoi

#endif  // AOI_STATE_HPP
