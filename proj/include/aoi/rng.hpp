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

#ifndef AOI_RNG_HPP
#define AOI_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace aoi {

using Rng = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Independent generator for one purpose ("arrivals", "channel", "policy",
/// ...). Streams with different labels never share state, so adding
/// randomness to one consumer leaves the others' sample paths untouched.
inline Rng derive_stream(std::uint64_t master_seed, std::string_view label,
                         std::uint64_t index = 0) {
  const std::uint64_t mixed = detail::splitmix64(
      detail::splitmix64(master_seed ^ detail::fnv1a(label)) + index);
  std::seed_seq seq{static_cast<std::uint32_t>(mixed),
                    static_cast<std::uint32_t>(mixed >> 32)};
  return Rng(seq);
}

}  // namespace aoi

#endif  // AOI_RNG_HPP
