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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgm/selfmap.hpp"
#include "pgm/space.hpp"

namespace pgm {

/// Composite labels used by the compatibility checker: AB means "apply B,
/// then A" evaluated along the supplied sequence.
enum class CompositeLabel : int { AB = 0, BC = 1, CA = 2 };
std::string to_string(CompositeLabel label);

struct CompatPair {
  CompositeLabel alpha;
  CompositeLabel beta;
  /// Max over the tail window and full grid of 1 - G_{alpha_n, beta_n, beta_n}(t).
  double residual;
  /// G_{alpha_N, beta_N, beta_N}(t) per grid entry at the last index N.
  std::vector<double> final_values;
};

struct CompatReport {
  /// Whether the A/B/C image sequences plausibly share a limit. Checked on
  /// the coarse part of the grid (t >= 1): the premise is about point
  /// convergence, and sub-unit t probes finer resolution than a finite
  /// prefix can certify. When false the verdict is vacuously true.
  bool premise_holds = false;
  bool verdict = false;
  double worst_residual = 0.0;
  std::size_t tail_start = 0;
  std::vector<CompatPair> pairs;  // all 9 ordered label pairs, label order
};

/// Evaluates G_{alpha, beta, beta} along the sequence tail for all ordered
/// pairs of composites {AB, BC, CA}; verdict true iff every family stays
/// within delta of 1 on the grid over the tail window (last quarter).
CompatReport check_compatible_triple(const PgmSpace& space, const SelfMap& A,
                                     const SelfMap& B, const SelfMap& C,
                                     std::span<const double> seq,
                                     std::span<const double> grid, double delta);

/// Pair form: the triple with the second map repeated.
CompatReport check_compatible_pair(const PgmSpace& space, const SelfMap& A,
                                   const SelfMap& B, std::span<const double> seq,
                                   std::span<const double> grid, double delta);

/// Neighborhood-ladder continuity probe at z. For each target
/// (eps2, delta2) in {1e-1..1e-4} x {0.5, 0.1, 0.01} a source pair
/// (eps1, delta1) is searched over the same ladder such that every probed
/// point of N_z(eps1, delta1) maps into N_{fz}(eps2, delta2). Finite
/// universes are probed exhaustively; intervals use probe_count seeded
/// points plus points placed near z at each candidate radius. A bounded
/// search can certify continuity only down to ladder resolution: maps with
/// Lipschitz constant above 1 near z may fail the finest targets.
bool check_continuity(const SelfMap& f, const PgmSpace& space, double z,
                      std::size_t probe_count, std::uint64_t seed);

/// Do the images fx_n settle at fz when x_n settles at z? Empty when the
/// inputs do not certify the premise x_n -> z.
std::optional<bool> check_limit_propagation(const SelfMap& f,
                                            const PgmSpace& space,
                                            std::span<const double> seq,
                                            double z,
                                            std::span<const double> grid,
                                            double delta);

struct CompatPropagation {
  bool premise_limits = false;       // A/B/C images settle jointly at z
  bool premise_continuity = false;   // B and C pass the continuity probe at z
  bool premise_compatible = false;   // [A, B, C] passes the compatibility check
  std::optional<bool> verdict;       // ABx_n -> Bz and ACx_n -> Cz; empty when
                                     // a premise failed
};

CompatPropagation check_compat_propagation(const PgmSpace& space,
                                           const SelfMap& A, const SelfMap& B,
                                           const SelfMap& C,
                                           std::span<const double> seq, double z,
                                           std::span<const double> grid,
                                           double delta);

} // namespace pgm
