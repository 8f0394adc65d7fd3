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

#include "pgm/universe.hpp"

#include <cmath>
#include <stdexcept>

#include "pgm/rng.hpp"

namespace pgm {

Universe Universe::interval(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || std::isinf(lo) || std::isinf(hi) ||
      !(lo < hi)) {
    throw std::invalid_argument("Universe::interval: need finite lo < hi");
  }
  Universe u;
  u.finite_ = false;
  u.lo_ = lo;
  u.hi_ = hi;
  return u;
}

Universe Universe::finite(std::vector<double> points) {
  if (points.empty()) {
    throw std::invalid_argument("Universe::finite: need at least one point");
  }
  for (double p : points) {
    if (std::isnan(p) || std::isinf(p)) {
      throw std::invalid_argument("Universe::finite: points must be finite");
    }
  }
  Universe u;
  u.finite_ = true;
  u.points_ = std::move(points);
  return u;
}

bool Universe::contains(double x) const noexcept {
  if (finite_) return index_of(x).has_value();
  return x >= lo_ && x <= hi_;
}

std::optional<std::size_t> Universe::index_of(double x) const noexcept {
  if (!finite_) return std::nullopt;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (std::abs(points_[i] - x) <= 1e-12) return i;
  }
  return std::nullopt;
}

double Universe::sample(std::uint64_t seed, std::uint64_t index,
                        std::uint32_t dim) const noexcept {
  if (finite_) {
    return points_[mix_bits(seed, index, 11 + dim) % points_.size()];
  }
  // Additive Weyl sequence with a seeded phase per dimension. The
  // multipliers (fractional parts of sqrt(5), sqrt(2), sqrt(3), sqrt(7)
  // combinations) are rationally independent, so joint tuples
  // equidistribute rather than keeping fixed pairwise gaps.
  constexpr double kMultipliers[4] = {
      0.61803398874989485,  // (sqrt(5) - 1) / 2
      0.41421356237309515,  // sqrt(2) - 1
      0.73205080756887729,  // sqrt(3) - 1
      0.64575131106459059,  // sqrt(7) - 2
  };
  const double alpha = kMultipliers[dim % 4];
  const double phase = draw_unit(seed, 0, 13 + dim);
  const double u = std::fmod(phase + alpha * static_cast<double>(index + 1), 1.0);
  return lo_ + (hi_ - lo_) * u;
}

double Universe::canonical_point() const noexcept {
  if (finite_) return points_.front();
  return lo_ + 0.5 * (hi_ - lo_);
}

} // namespace pgm
