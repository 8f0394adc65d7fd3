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
#include <vector>

#include "pgm/universe.hpp"

namespace pgm {

/// Crisp generalized distance g(x, y, z) from which probabilistic kernels
/// are induced. Intended invariants (symmetry in all three arguments,
/// g = 0 iff x = y = z, g(x,x,y) <= g(x,y,z) for z != y, and the
/// tetrahedral bound g(x,y,z) <= g(x,a,a) + g(a,y,z)) are not enforced at
/// construction; the space-level axiom checkers exist to find violations.
class GKernel {
public:
  enum class Kind { perimeter, table };

  struct Entry {
    std::size_t i, j, k;
    double value;
  };

  /// g(x, y, z) = |x-y| + |y-z| + |z-x| on point values.
  static GKernel perimeter();

  /// Explicit values for every ordered index triple of an n-point
  /// universe, laid out as values[(i*n + j)*n + k]. No symmetrization, so
  /// deliberately broken kernels are expressible.
  static GKernel table_raw(std::size_t n, std::vector<double> values);

  /// Values given per index multiset and mirrored onto all permutations;
  /// every multiset {i, j, k} must be covered exactly once.
  static GKernel table_from_entries(std::size_t n, const std::vector<Entry>& entries);

  /// Perimeter of the listed point values materialized into a table.
  static GKernel table_from_values(std::span<const double> points);

  Kind kind() const noexcept { return kind_; }
  std::size_t table_size() const noexcept { return n_; }
  const std::vector<double>& table_values() const noexcept { return values_; }

  /// Throws std::invalid_argument when a point is outside the universe or
  /// the table size does not match a finite universe.
  double eval(double x, double y, double z, const Universe& u) const;

  friend bool operator==(const GKernel&, const GKernel&) = default;

private:
  GKernel() = default;
  Kind kind_ = Kind::perimeter;
  std::size_t n_ = 0;
  std::vector<double> values_;
};

} // namespace pgm
