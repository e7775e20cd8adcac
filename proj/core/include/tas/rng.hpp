// Copyright 2026 The tas-workbench Authors
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

#ifndef TAS_RNG_HPP
#define TAS_RNG_HPP

#include <cstdint>
#include <random>

namespace tas {

// splitmix64; used only to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministically derives a substream seed from a base seed and a tag.
/// Each simulation purpose (arrivals, outcomes, drift, ...) owns its own
/// stream so results do not depend on interleaving.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  return splitmix64(splitmix64(base) ^ splitmix64(tag * 0x9e3779b97f4a7c15ULL + 1));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag1,
                                 std::uint64_t tag2) {
  return derive_seed(derive_seed(base, tag1), tag2);
}

using RngStream = std::mt19937_64;

inline double uniform01(RngStream& gen) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
}

// FNV-1a, for stable seed tags built from strings.
inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace tas

#endif  // TAS_RNG_HPP
