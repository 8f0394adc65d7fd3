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

#include <cstdint>
#include <vector>

#include "pgm/ddf.hpp"
#include "pgm/rng.hpp"

namespace pgmtest {

// Hand-rolled generators for property-style tests; all derive from a seed
// and an index so failures replay exactly.

inline double unit(std::uint64_t seed, std::uint64_t i, std::uint32_t slot) {
  return pgm::draw_unit(seed, i, slot);
}

inline pgm::Ddf random_ddf(std::uint64_t seed, std::uint64_t i) {
  switch (pgm::mix_bits(seed, i, 50) % 3) {
    case 0:
      return pgm::Ddf::step(4.0 * unit(seed, i, 51));
    case 1:
      return pgm::Ddf::ratio(4.0 * unit(seed, i, 52));
    default: {
      std::vector<pgm::Ddf::Breakpoint> bps;
      const std::size_t count = 1 + pgm::mix_bits(seed, i, 53) % 5;
      double t = 0.0;
      double v = 0.0;
      for (std::size_t j = 0; j < count; ++j) {
        t += 0.01 + unit(seed, i, 60 + 2 * static_cast<std::uint32_t>(j));
        v = std::min(1.0, v + unit(seed, i, 61 + 2 * static_cast<std::uint32_t>(j)) *
                              (1.0 - v));
        bps.push_back({t, v});
      }
      return pgm::Ddf::table(std::move(bps));
    }
  }
}

inline std::vector<double> random_grid(std::uint64_t seed, std::uint64_t i,
                                       std::size_t count) {
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    grid.push_back(
        pgm::draw_log2(seed, i, 80 + static_cast<std::uint32_t>(j), -10, 10));
  }
  return grid;
}

} // namespace pgmtest
