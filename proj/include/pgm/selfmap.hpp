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
#include <optional>
#include <stdexcept>
#include <vector>

#include "pgm/universe.hpp"

namespace pgm {

/// Default acceptance tolerance for preimage solving; affine inverses are
/// exact, the tolerance only absorbs floating-point residue.
inline constexpr double kPreimageTol = 1e-12;

/// A self-map on the universe. Kinds:
///  - affine(slope, intercept) on real universes
///  - poly(coefficients, ascending powers) on real universes
///  - table(image indices) on finite universes
///  - composite(stages), applied left to right
/// Affine and poly stages apply as bare formulas, so a composite may pass
/// through values outside the universe as long as the final image lands
/// back inside; table stages require their input to be a universe point.
class SelfMap {
public:
  enum class Kind { affine, poly, table, composite };

  static SelfMap affine(double slope, double intercept);
  static SelfMap poly(std::vector<double> coefficients);
  static SelfMap table(std::vector<std::size_t> images);
  static SelfMap composite(std::vector<SelfMap> stages);
  static SelfMap identity() { return affine(1.0, 0.0); }

  Kind kind() const noexcept { return kind_; }
  double slope() const noexcept { return slope_; }
  double intercept() const noexcept { return intercept_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  const std::vector<std::size_t>& images() const noexcept { return images_; }
  const std::vector<SelfMap>& stages() const noexcept { return stages_; }

  /// Raw application without a containment check on the result.
  double apply_raw(double x, const Universe& u) const;

  friend bool operator==(const SelfMap&, const SelfMap&) = default;

private:
  SelfMap() = default;
  Kind kind_ = Kind::affine;
  double slope_ = 1.0;
  double intercept_ = 0.0;
  std::vector<double> coeffs_;
  std::vector<std::size_t> images_;
  std::vector<SelfMap> stages_;
};

/// Image left the universe; carries the offending point and its image.
struct MapImageError : std::runtime_error {
  MapImageError(double point_, double image_);
  double point;
  double image;
};

/// Applies f and verifies the image stays in the universe; throws
/// MapImageError with the witness otherwise.
double apply_map(const SelfMap& f, double x, const Universe& u);

/// A point p in the universe with |f(p) - target| <= tol, or empty when
/// none exists. Selection is deterministic: exact formula for invertible
/// affine maps, universe midpoint for constant affine maps, smallest index
/// on finite universes, first bracketed root in scan order for poly maps,
/// right-to-left chaining for composites.
std::optional<double> solve_preimage(const SelfMap& f, double target,
                                     const Universe& u,
                                     double tol = kPreimageTol);

} // namespace pgm
