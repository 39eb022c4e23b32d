// Copyright 2026 The hn-lindblad Authors
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

#pragma once

// Counter-based uniform draws. Each value is a pure function of
// (seed, realization, site), so ensembles can be split across workers in any
// order without changing a single bit of the output.

#include <cstdint>

namespace hnl {

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

[[nodiscard]] constexpr std::uint64_t counter_key(std::uint64_t seed, std::uint64_t realization,
                                                  std::uint64_t site) noexcept {
  return mix64(mix64(mix64(seed) ^ realization) ^ site);
}

/// Uniform double in [0, 1) with 53 random bits.
[[nodiscard]] constexpr double counter_uniform(std::uint64_t seed, std::uint64_t realization,
                                               std::uint64_t site) noexcept {
  return static_cast<double>(counter_key(seed, realization, site) >> 11U) * 0x1.0p-53;
}

}  // namespace hnl
