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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pgm {

/// Point universe: either a closed real interval with a deterministic
/// low-discrepancy sampler, or an explicit finite point list.
class Universe {
public:
  static Universe interval(double lo, double hi);
  static Universe finite(std::vector<double> points);

  bool is_finite() const noexcept { return finite_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  bool contains(double x) const noexcept;

  /// Finite universes: position of the point matching x within 1e-12.
  std::optional<std::size_t> index_of(double x) const noexcept;

  /// Deterministic i-th sample. Intervals use a seeded Weyl sequence (low
  /// discrepancy); finite universes pick a point by hash. Components of a
  /// sampled tuple must pass distinct dims: each dim advances with its own
  /// rationally independent multiplier, so tuples equidistribute jointly
  /// instead of marching in lockstep.
  double sample(std::uint64_t seed, std::uint64_t index,
                std::uint32_t dim = 0) const noexcept;

  /// Representative point used by degenerate preimage selections:
  /// interval midpoint, or the first listed point.
  double canonical_point() const noexcept;

  friend bool operator==(const Universe&, const Universe&) = default;

private:
  Universe() = default;
  bool finite_ = false;
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<double> points_;
};

} // namespace pgm
