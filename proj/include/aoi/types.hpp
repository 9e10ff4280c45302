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

#ifndef AOI_TYPES_HPP
#define AOI_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace aoi {

using Index = Eigen::Index;
using Count = std::int64_t;

/// Integer-valued dense types. AoI vectors, queue matrices, allocations.
using CountVector = Eigen::Matrix<Count, Eigen::Dynamic, 1>;
using CountMatrix = Eigen::Matrix<Count, Eigen::Dynamic, Eigen::Dynamic>;

/// Real-valued dense types. Arrival-rate matrices, time averages.
using RateMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// A parameter outside its mathematical domain (nonpositive power, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration that parses but cannot describe a valid system.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched matrix shapes handed to a routine.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Argument outside the domain of a partial function (e.g. epsilon outside
/// the subset region).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A policy that cannot be constructed for the given arrival rates.
class InfeasiblePolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ceiling that absorbs floating-point noise: values within `snap` of an
/// integer are treated as that integer.
inline Count guarded_ceil(double value, double snap = 1e-9) {
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= snap) return static_cast<Count>(nearest);
  return static_cast<Count>(std::ceil(value));
}

}  // namespace aoi

#endif  // AOI_TYPES_HPP
