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

#include "aoi/bounds.hpp"

#include "aoi/region.hpp"

namespace aoi {

BoundReport evaluate_bounds(const RateMatrix& lambda, Count N, Count khat,
                            double V) {
  BoundReport r;
  r.V = V;
  r.epsilon = epsilon_of_lambda(lambda, N, khat);
  r.C = constant_C(lambda, poisson_second_moments(lambda), N);
  r.V0 = default_V0(lambda, r.epsilon);
  r.aoi_bound = aoi_upper_bound(lambda, r.epsilon, r.C, V);
  r.delay_bound = delay_upper_bound(lambda, r.epsilon, r.C, V);
  return r;
}

}  // namespace aoi
