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

#include <gtest/gtest.h>

#include "aoi/state.hpp"

namespace aoi {
namespace {

CountVector vec(std::initializer_list<Count> v) {
  CountVector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (Count x : v) out(i++) = x;
  return out;
}

TEST(State, InitialAgesAreOne) {
  const NetworkState s = NetworkState::initial(3, 2);
  EXPECT_TRUE((s.x.array() == 1).all());
  EXPECT_EQ(s.Q.rows(), 3);
  EXPECT_EQ(s.Q.cols(), 2);
  EXPECT_EQ(s.Q.sum(), 0);
  EXPECT_EQ(s.t, 1);
}

TEST(Validate, ZeroAllocationIsFeasible) {
  EXPECT_FALSE(validate_allocation(zero_allocation(2, 3),
                                   CountMatrix::Zero(2, 3), vec({1, 2}), 1));
}

TEST(Validate, SlotBudget) {
  AllocationDecision a = zero_allocation(1, 3);
  a(0, 2) = 1;  // k = 3
  a(0, 3) = 1;  // upload, kappa 2
  CountMatrix Q = CountMatrix::Constant(1, 3, 1);
  const auto v = validate_allocation(a, Q, vec({2}), 4);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, AllocationViolation::Kind::kSlotBudgetExceeded);
  EXPECT_FALSE(validate_allocation(a, Q, vec({2}), 5));
}

TEST(Validate, ServiceExceedsQueue) {
  AllocationDecision a = zero_allocation(1, 1);
  a(0, 0) = 3;
  const auto v =
      validate_allocation(a, CountMatrix::Constant(1, 1, 2), vec({1}), 10);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, AllocationViolation::Kind::kServiceExceedsQueue);
  EXPECT_EQ(v->m, 0);
  EXPECT_EQ(v->k, 1);
}

TEST(Validate, UplinkMustBeBinaryAndEntriesNonNegative) {
  AllocationDecision a = zero_allocation(1, 1);
  a(0, 1) = 2;
  EXPECT_EQ(validate_allocation(a, CountMatrix::Zero(1, 1), vec({1}), 10)->kind,
            AllocationViolation::Kind::kUplinkNotBinary);
  a(0, 1) = 0;
  a(0, 0) = -1;
  EXPECT_EQ(validate_allocation(a, CountMatrix::Zero(1, 1), vec({1}), 10)->kind,
            AllocationViolation::Kind::kNegativeEntry);
}

TEST(Validate, ShapeMismatchThrows) {
  EXPECT_THROW(validate_allocation(zero_allocation(2, 2),
                                   CountMatrix::Zero(2, 3), vec({1, 1}), 5),
               StructuralError);
}

TEST(AoiUpdate, Law) {
  AllocationDecision a = zero_allocation(2, 1);
  a(0, 1) = 1;
  EXPECT_EQ(apply_aoi_update(vec({5, 2}), a), vec({1, 3}));
  EXPECT_EQ(apply_aoi_update(vec({5, 2}), zero_allocation(2, 1)), vec({6, 3}));
  AllocationDecision b = zero_allocation(1, 1);
  b(0, 1) = 1;
  EXPECT_EQ(apply_aoi_update(vec({1}), b), vec({1}));
}

TEST(QueueUpdate, Law) {
  auto one = [](Count v) { return CountMatrix::Constant(1, 1, v); };
  auto alloc = [](Count v) {
    AllocationDecision a = zero_allocation(1, 1);
    a(0, 0) = v;
    return a;
  };
  EXPECT_EQ(apply_queue_update(one(3), alloc(5), one(2))(0, 0), 2);
  EXPECT_EQ(apply_queue_update(one(3), alloc(0), one(0))(0, 0), 3);
  EXPECT_EQ(apply_queue_update(one(0), alloc(0), one(7))(0, 0), 7);
}

TEST(ServedAoi, Sum) {
  AllocationDecision a = zero_allocation(2, 2);
  EXPECT_EQ(served_aoi_sum(vec({2, 3}), a), 0);
  a(0, 0) = 2;
  a(1, 1) = 1;
  EXPECT_EQ(served_aoi_sum(vec({2, 3}), a), 10);
  AllocationDecision b = zero_allocation(1, 1);
  b(0, 0) = 1;
  EXPECT_EQ(served_aoi_sum(vec({4}), b), 5);
}

TEST(SlotsUsed, Sum) {
  AllocationDecision a = zero_allocation(1, 3);
  EXPECT_EQ(slots_used(a, vec({2})), 0);
  a(0, 2) = 1;
  a(0, 3) = 1;
  EXPECT_EQ(slots_used(a, vec({2})), 5);
  // Saturating the budget exactly.
  a(0, 0) = 3;
  CountMatrix Q = CountMatrix::Constant(1, 3, 3);
  EXPECT_EQ(slots_used(a, vec({2})), 8);
  EXPECT_FALSE(validate_allocation(a, Q, vec({2}), 8));
}

}  // namespace
}  // namespace aoi
