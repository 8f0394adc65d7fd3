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
#include <string>
#include <vector>

#include "pgm/exec.hpp"
#include "pgm/selfmap.hpp"
#include "pgm/space.hpp"

namespace pgm {

/// The six maps of the common-fixed-point iteration.
struct Sextuple {
  SelfMap A, B, C, D, S, T;
};

/// Names in residual/report order.
inline constexpr std::array<const char*, 6> kMapNames = {"A", "B", "C",
                                                         "D", "S", "T"};

struct BuildOutcome {
  enum class Kind { completed, collision, preimage_failure };
  Kind kind = Kind::completed;
  std::size_t step = 0;      // y-index where construction stopped
  double target = 0.0;       // unsolved preimage target (preimage_failure)
  std::string which_map;     // map whose preimage failed (T, D or S)
};

/// Trace of the driving sequences. Invariants when construction succeeds:
/// y_{3n} = T x_{3n+1} = A x_{3n}, y_{3n+1} = D x_{3n+2} = B x_{3n+1},
/// y_{3n+2} = S x_{3n+3} = C x_{3n+2}, each preimage within tolerance.
struct IterationState {
  std::vector<double> x_seq;
  std::vector<double> y_seq;
  double k = 0.5;
  BuildOutcome outcome;
  bool consecutive_x_distinct = true;
};

/// Greedy construction: y_m from the current x, then the next x by solving
/// the preimage under T, D, S cyclically. Stops early when two consecutive
/// y values collide (equal within collision_tol; the default demands exact
/// equality, which is what an arrived fixed point produces) or a preimage
/// does not exist.
IterationState build_sequences(const Sextuple& sx, const Universe& universe,
                               double x0, std::size_t n_max,
                               double preimage_tol = kPreimageTol,
                               double collision_tol = 0.0);

struct ContractionWitness {
  double x, y, z, t;
  double lhs, rhs;
};

struct ContractionReport {
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;  // max of rhs - lhs over violations
  std::optional<ContractionWitness> worst;
};

/// Samples (x, y, z, t) and tests the five-term bound
///   G_{Ax,By,Cz}(kt) >= G_{Sx,Ty,Dz}(t) * G_{Sx,Ax,Dz}(t) * G_{Ax,By,Cz}(t)
///                       * G_{Ty,By,Cz}(t) * G_{Sx,Cz,Dz}(2t)
/// folded through the space's t-norm. weakened_fifth_term evaluates the
/// last factor at t instead of 2t (a relaxation, since distribution values
/// are nondecreasing in t). Requires k in (0, 1/2].
ContractionReport check_contraction(const PgmSpace& space, const Sextuple& sx,
                                    double k, std::size_t triple_samples,
                                    std::size_t t_samples, std::uint64_t seed,
                                    bool weakened_fifth_term = false,
                                    Exec exec = Exec::parallel);

struct ProofChainFailure {
  char inequality;  // 'a', 'b' or 'g'
  std::size_t n;
  double t;
  std::size_t p, q;  // used by 'g' only
  double lhs, rhs;
};

struct ProofChainReport {
  std::size_t checks = 0;
  std::size_t alpha_failures = 0;
  std::size_t beta_failures = 0;
  std::size_t gamma_failures = 0;
  std::vector<ProofChainFailure> witnesses;
  bool pass() const noexcept {
    return alpha_failures + beta_failures + gamma_failures == 0;
  }
};

/// Checks three consequences of the contraction bound along a built trace,
/// for every n and grid t:
///  (a) G_{y_{n+1},y_{n+2},y_{n+3}}(t) >= G_{y_n,y_{n+1},y_{n+2}}(t/k)
///  (b) G_{y_{n+1},y_{n+2},y_{n+3}}(t) >= G_{y_0,y_1,y_2}(k^-(n+1) t)
///  (g) G_{y_n,y_{n+p},y_{n+q}}(t)    >= G_{y_0,y_1,y_2}(2^(n-1) t)
/// with (g) over a deterministic set of offset pairs p <= q. The n = 0
/// case of (g) uses the halved argument t/2. Requires >= 4 y-terms.
ProofChainReport proof_chain_monitor(const PgmSpace& space,
                                     const IterationState& state, double k,
                                     std::span<const double> grid,
                                     Exec exec = Exec::parallel);

enum class Termination { converged, collision, preimage_failure, max_iter };
std::string to_string(Termination t);

struct RunConfig {
  double k = 0.5;           // in (0, 1/2]
  double eps = 1e-6;
  double delta = 1e-3;
  std::size_t n_max = 200;
  double preimage_tol = kPreimageTol;
  double collision_tol = 0.0;
  std::size_t contraction_triples = 2000;
  std::size_t contraction_ts = 2;
  std::uint64_t seed = 0;
  bool weakened_fifth = false;  // paired contraction scan variant
};

struct FixpointReport {
  double candidate = 0.0;
  std::size_t iterations = 0;                 // y-terms built
  std::optional<std::size_t> cauchy_index;
  std::array<double, 6> residuals{};          // per map, kMapNames order
  std::size_t contraction_violations = 0;
  std::optional<bool> unique;                 // filled by uniqueness_probe users
  Termination termination = Termination::max_iter;
  IterationState state;

  double worst_residual() const noexcept {
    double w = 0.0;
    for (double r : residuals) w = std::max(w, r);
    return w;
  }
};

/// Full engine pass: build the sequences, locate the Cauchy window, take
/// the settled tail value as candidate, verify all six residuals
/// 1 - G_{fz,z,z}(t) on the grid, and pair with a contraction scan.
/// Preconditions enforced here: idempotent t-norm and k in (0, 1/2]; the
/// space is assumed to have passed its axiom check.
FixpointReport run(const PgmSpace& space, const Sextuple& sx, double x0,
                   const RunConfig& config, std::span<const double> grid);

struct UniquenessProbe {
  enum class Outcome { confirmed, refuted, inconclusive };
  Outcome outcome = Outcome::inconclusive;
  double spread = 0.0;  // max pairwise distance between verified candidates
  std::vector<FixpointReport> runs;
  std::vector<std::string> errors;  // per-start engine errors, if any
};

/// Runs the engine from every start point. Confirmed iff every run yields a
/// verified candidate (converged, or collided with all residuals within
/// delta) and the candidates agree within eps; any unverified run makes the
/// probe inconclusive rather than refuted. Requires >= 2 start points.
UniquenessProbe uniqueness_probe(const PgmSpace& space, const Sextuple& sx,
                                 std::span<const double> starts,
                                 const RunConfig& config,
                                 std::span<const double> grid);

} // namespace pgm
