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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pgm/ddf.hpp"
#include "pgm/exec.hpp"
#include "pgm/kernel.hpp"
#include "pgm/tnorm.hpp"
#include "pgm/universe.hpp"

namespace pgm {

/// How a crisp kernel value g is turned into a distribution function.
///  - ratio: t -> t/(t + g), the smooth regime
///  - dirac: the step function jumping just after g, the discrete regime
enum class Family { ratio, dirac };

/// A probabilistic generalized metric space: a point universe plus a map
/// from point triples to distance distribution functions, aggregated by a
/// t-norm. Immutable; all checks below are read-only.
class PgmSpace {
public:
  PgmSpace(Universe universe, GKernel kernel, Family family, Tnorm tnorm);

  const Universe& universe() const noexcept { return universe_; }
  const GKernel& kernel() const noexcept { return kernel_; }
  Family family() const noexcept { return family_; }
  const Tnorm& tnorm() const noexcept { return tnorm_; }

  /// Crisp kernel value; throws when a point is outside the universe.
  double g_crisp(double x, double y, double z) const;

  /// The distribution function attached to (x, y, z).
  Ddf g_eval(double x, double y, double z) const;

  /// g_eval(x, y, z).eval(t) without materializing the Ddf (hot path).
  double g_value(double x, double y, double z, double t) const;

private:
  Universe universe_;
  GKernel kernel_;
  Family family_;
  Tnorm tnorm_;
};

struct Neighborhood {
  double center;
  double eps;    // > 0
  double delta;  // in (0, 1)
};

/// Two-sided membership test: both G_{c,y,y}(eps) and G_{y,c,c}(eps) must
/// exceed 1 - delta. Throws on invalid eps/delta.
bool in_neighborhood(const PgmSpace& space, const Neighborhood& nbhd, double y);

struct SpaceAxiomViolation {
  int axiom;           // 1..4
  bool crisp;          // true: kernel-level check, false: sampled DDF check
  std::size_t sample;
  double x, y, z, a;   // a participates in axiom 4 only
  double t, s;         // s participates in axiom 4 only
  double lhs, rhs;     // slack = lhs - rhs (violations have negative slack)
};

struct SpaceAxiomReport {
  std::size_t tuples = 0;
  std::size_t checks = 0;
  std::array<std::size_t, 4> violations_per_axiom{};
  std::vector<SpaceAxiomViolation> witnesses;  // ordered by sample index

  std::size_t total_violations() const noexcept {
    std::size_t n = 0;
    for (auto v : violations_per_axiom) n += v;
    return n;
  }
  bool pass() const noexcept { return total_violations() == 0; }
};

/// Samples (x, y, z, a) tuples (every eighth tuple degenerates to a
/// diagonal or pair pattern so the identity axiom is exercised) and checks
/// the four space axioms:
///   1. G_{x,y,z} = 1 on (0, inf) iff x = y = z
///   2. G_{x,x,y}(t) >= G_{x,y,z}(t) for z != y
///   3. symmetry under all argument permutations
///   4. G_{x,y,z}(t+s) >= G_{x,a,a}(t) * G_{a,y,z}(s), s, t >= 0
/// Each axiom is checked both on the crisp kernel (decisive for the two
/// induced families, where the distribution value is monotone in g) and on
/// sampled distribution values over the grid / (s, t) draws, which is what
/// the axioms literally state. st_pairs draws per tuple include the s = 0,
/// t = 0 and s = t = 0 edges.
SpaceAxiomReport check_axioms(const PgmSpace& space, std::size_t point_samples,
                              std::size_t st_pairs, std::uint64_t seed,
                              std::span<const double> grid,
                              Exec exec = Exec::parallel);

/// Same checks over every ordered point triple of a finite universe.
SpaceAxiomReport check_axioms_exhaustive(const PgmSpace& space,
                                         std::size_t st_pairs,
                                         std::uint64_t seed,
                                         std::span<const double> grid,
                                         Exec exec = Exec::parallel);

/// Smallest M such that every entry with index > M lies in the
/// (eps, delta)-neighborhood of x; empty when the final entry fails.
std::optional<std::size_t> converged(const PgmSpace& space,
                                     std::span<const double> seq, double x,
                                     double eps, double delta);

/// Smallest M such that G_{x_n,x_m,x_l}(eps) > 1 - delta for all index
/// triples beyond M (exhaustive over the given prefix). Empty when no such
/// M leaves at least three certified tail entries.
std::optional<std::size_t> cauchy_window(const PgmSpace& space,
                                         std::span<const double> seq,
                                         double eps, double delta,
                                         Exec exec = Exec::parallel);

/// True iff, for each grid t, the values G_{triple_n}(t) at the tail (last
/// quarter) stay within tol of G_{limit}(t).
bool joint_continuity_check(const PgmSpace& space,
                            std::span<const std::array<double, 3>> triples,
                            const std::array<double, 3>& limit,
                            std::span<const double> grid, double tol);

} // namespace pgm
