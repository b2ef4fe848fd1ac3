// Copyright 2026 The sparselimit Authors
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

#ifndef SPARSELIMIT_RNG_HPP_
#define SPARSELIMIT_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sparselimit {

// One step of the splitmix64 sequence; used to derive independent stream
// seeds from a master seed and a list of keys.
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t DeriveSeed(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = SplitMix64(seed);
  for (std::uint64_t k : keys) h = SplitMix64(h ^ SplitMix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

using Engine = std::mt19937_64;

inline Engine MakeEngine(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> keys = {}) {
  std::uint64_t s = DeriveSeed(seed, keys);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return Engine(seq);
}

// Uniform double in the open interval (0, 1).
inline double UniformOpen(Engine& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace sparselimit

#endif  // SPARSELIMIT_RNG_HPP_
