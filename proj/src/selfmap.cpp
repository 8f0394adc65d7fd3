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

#include "pgm/selfmap.hpp"

#include <cmath>
#include <string>

namespace pgm {

SelfMap SelfMap::affine(double slope, double intercept) {
  if (std::isnan(slope) || std::isnan(intercept) || std::isinf(slope) ||
      std::isinf(intercept)) {
    throw std::invalid_argument("SelfMap::affine: parameters must be finite");
  }
  SelfMap f;
  f.kind_ = Kind::affine;
  f.slope_ = slope;
  f.intercept_ = intercept;
  return f;
}

SelfMap SelfMap::poly(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw std::invalid_argument("SelfMap::poly: need at least one coefficient");
  }
  for (double c : coefficients) {
    if (std::isnan(c) || std::isinf(c)) {
      throw std::invalid_argument("SelfMap::poly: coefficients must be finite");
    }
  }
  SelfMap f;
  f.kind_ = Kind::poly;
  f.coeffs_ = std::move(coefficients);
  return f;
}

SelfMap SelfMap::table(std::vector<std::size_t> images) {
  if (images.empty()) {
    throw std::invalid_argument("SelfMap::table: need at least one image");
  }
  for (std::size_t img : images) {
    if (img >= images.size()) {
      throw std::invalid_argument("SelfMap::table: image index out of range");
    }
  }
  SelfMap f;
  f.kind_ = Kind::table;
  f.images_ = std::move(images);
  return f;
}

SelfMap SelfMap::composite(std::vector<SelfMap> stages) {
  if (stages.empty()) {
    throw std::invalid_argument("SelfMap::composite: need at least one stage");
  }
  SelfMap f;
  f.kind_ = Kind::composite;
  f.stages_ = std::move(stages);
  return f;
}

double SelfMap::apply_raw(double x, const Universe& u) const {
  switch (kind_) {
    case Kind::affine:
      return slope_ * x + intercept_;
    case Kind::poly: {
      double acc = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
      }
      return acc;
    }
    case Kind::table: {
      if (!u.is_finite() || u.size() != images_.size()) {
        throw std::invalid_argument(
            "SelfMap::apply_raw: table map requires a matching finite universe");
      }
      auto idx = u.index_of(x);
      if (!idx) {
        throw std::invalid_argument("SelfMap::apply_raw: point " +
                                    std::to_string(x) + " not in finite universe");
      }
      return u.points()[images_[*idx]];
    }
    case Kind::composite: {
      double v = x;
      for (const auto& stage : stages_) v = stage.apply_raw(v, u);
      return v;
    }
  }
  return x;
}

MapImageError::MapImageError(double point_, double image_)
    : std::runtime_error("map image " + std::to_string(image_) + " of point " +
                         std::to_string(point_) + " escapes the universe"),
      point(point_),
      image(image_) {}

double apply_map(const SelfMap& f, double x, const Universe& u) {
  if (!u.contains(x)) {
    throw std::invalid_argument("apply_map: point " + std::to_string(x) +
                                " not in universe");
  }
  const double image = f.apply_raw(x, u);
  if (!u.contains(image)) throw MapImageError(x, image);
  return image;
}

namespace {

std::optional<double> preimage_by_scan(const SelfMap& f, double target,
                                       const Universe& u, double tol) {
  // Finite universes: smallest index wins.
  if (u.is_finite()) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double p = u.points()[i];
      if (std::abs(f.apply_raw(p, u) - target) <= tol) return p;
    }
    return std::nullopt;
  }
  // Interval: deterministic grid scan, then bisection on the first cell
  // whose endpoints bracket the target.
  constexpr int kCells = 2048;
  const double width = (u.hi() - u.lo()) / kCells;
  double prev_x = u.lo();
  double prev_r = f.apply_raw(prev_x, u) - target;
  if (std::abs(prev_r) <= tol) return prev_x;
  for (int c = 1; c <= kCells; ++c) {
    const double x = (c == kCells) ? u.hi() : u.lo() + width * c;
    const double r = f.apply_raw(x, u) - target;
    if (std::abs(r) <= tol) return x;
    if ((prev_r < 0.0) != (r < 0.0)) {
      double a = prev_x, b = x, ra = prev_r;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double rm = f.apply_raw(mid, u) - target;
        if (std::abs(rm) <= tol) return mid;
        if ((ra < 0.0) != (rm < 0.0)) {
          b = mid;
        } else {
          a = mid;
          ra = rm;
        }
      }
      const double mid = 0.5 * (a + b);
      if (std::abs(f.apply_raw(mid, u) - target) <= tol) return mid;
    }
    prev_x = x;
    prev_r = r;
  }
  return std::nullopt;
}

} // namespace

std::optional<double> solve_preimage(const SelfMap& f, double target,
                                     const Universe& u, double tol) {
  if (!u.contains(target)) {
    throw std::invalid_argument("solve_preimage: target " +
                                std::to_string(target) + " not in universe");
  }
  switch (f.kind()) {
    case SelfMap::Kind::affine: {
      if (u.is_finite()) return preimage_by_scan(f, target, u, tol);
      if (f.slope() == 0.0) {
        // Constant map: any point works iff the constant hits the target.
        if (std::abs(f.intercept() - target) <= tol) return u.canonical_point();
        return std::nullopt;
      }
      const double x = (target - f.intercept()) / f.slope();
      if (!u.contains(x)) return std::nullopt;
      if (std::abs(f.apply_raw(x, u) - target) > tol) return std::nullopt;
      return x;
    }
    case SelfMap::Kind::poly:
    case SelfMap::Kind::table:
      return preimage_by_scan(f, target, u, tol);
    case SelfMap::Kind::composite: {
      // Chain right to left: each stage must recover the value feeding the
      // next one. Intermediate values outside the universe defeat the
      // chain and report as no preimage.
      double want = target;
      const auto& stages = f.stages();
      for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        if (!u.contains(want)) return std::nullopt;
        auto got = solve_preimage(*it, want, u, tol);
        if (!got) return std::nullopt;
        want = *got;
      }
      return want;
    }
  }
  return std::nullopt;
}

} // namespace pgm
