/*
 * Copyright 2026 The pgmfix Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>

namespace pgm {

// Counter-based draws: every (seed, index, slot) triple maps to a fixed
// value, so sampling loops give the same stream no matter how the samples
// are partitioned across threads.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_bits(std::uint64_t seed, std::uint64_t index,
                              std::uint32_t slot) {
  std::uint64_t h = splitmix64(seed ^ 0xd1b54a32d192ed03ULL);
  h = splitmix64(h ^ (index * 0x9e3779b97f4a7c15ULL));
  return splitmix64(h ^ (static_cast<std::uint64_t>(slot) + 1));
}

/// Uniform draw in [0, 1).
inline double draw_unit(std::uint64_t seed, std::uint64_t index,
                        std::uint32_t slot) {
  return static_cast<double>(mix_bits(seed, index, slot) >> 11) * 0x1.0p-53;
}

inline double draw_range(std::uint64_t seed, std::uint64_t index,
                         std::uint32_t slot, double lo, double hi) {
  return lo + (hi - lo) * draw_unit(seed, index, slot);
}

/// Log-uniform draw 2^u with u uniform in [lo_exp, hi_exp]; spans the same
/// scales as the default evaluation grid.
inline double draw_log2(std::uint64_t seed, std::uint64_t index,
                        std::uint32_t slot, double lo_exp, double hi_exp) {
  return std::exp2(draw_range(seed, index, slot, lo_exp, hi_exp));
}

} // namespace pgm
