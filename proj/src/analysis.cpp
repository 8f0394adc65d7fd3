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

#include "pgm/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace pgm {

namespace {

std::vector<double> unit_and_up(std::span<const double> grid) {
  std::vector<double> coarse;
  for (double t : grid) {
    if (t >= 1.0) coarse.push_back(t);
  }
  if (coarse.empty() && !grid.empty()) coarse.push_back(grid.back());
  return coarse;
}

std::vector<double> map_sequence(const SelfMap& f, std::span<const double> seq,
                                 const Universe& u) {
  std::vector<double> out;
  out.reserve(seq.size());
  for (double x : seq) out.push_back(apply_map(f, x, u));
  return out;
}

// Tail check that values[n] and target are indistinguishable at level
// delta on the given grid: G_{target, v_n, v_n} and G_{v_n, target, target}
// both stay above 1 - delta.
bool settles_at(const PgmSpace& space, std::span<const double> values,
                double target, std::span<const double> grid, double delta,
                std::size_t tail_start) {
  for (std::size_t n = tail_start + 1; n < values.size(); ++n) {
    for (double t : grid) {
      if (!(space.g_value(target, values[n], values[n], t) > 1.0 - delta)) {
        return false;
      }
      if (!(space.g_value(values[n], target, target, t) > 1.0 - delta)) {
        return false;
      }
    }
  }
  return true;
}

// Consecutive-triple settling of one sequence: G_{v_n, v_{n+1}, v_{n+2}}
// close to 1 along the tail.
bool tail_settles(const PgmSpace& space, std::span<const double> values,
                  std::span<const double> grid, double delta,
                  std::size_t tail_start) {
  if (values.size() < 3) return true;
  for (std::size_t n = tail_start + 1; n + 2 < values.size(); ++n) {
    for (double t : grid) {
      if (!(space.g_value(values[n], values[n + 1], values[n + 2], t) >
            1.0 - delta)) {
        return false;
      }
    }
  }
  return true;
}

} // namespace

std::string to_string(CompositeLabel label) {
  switch (label) {
    case CompositeLabel::AB: return "AB";
    case CompositeLabel::BC: return "BC";
    case CompositeLabel::CA: return "CA";
  }
  return "?";
}

CompatReport check_compatible_triple(const PgmSpace& space, const SelfMap& A,
                                     const SelfMap& B, const SelfMap& C,
                                     std::span<const double> seq,
                                     std::span<const double> grid,
                                     double delta) {
  if (seq.size() < 4) {
    throw std::invalid_argument("check_compatible_triple: sequence too short");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("check_compatible_triple: delta must lie in (0, 1)");
  }
  const Universe& u = space.universe();

  const auto a_img = map_sequence(A, seq, u);
  const auto b_img = map_sequence(B, seq, u);
  const auto c_img = map_sequence(C, seq, u);

  CompatReport report;
  report.tail_start = tail_start_index(seq.size());

  // Premise: the three image sequences approach a common value. Mutual
  // closeness of the triple plus settling of each sequence, both assessed
  // on the coarse grid.
  const auto coarse = unit_and_up(grid);
  bool premise = tail_settles(space, a_img, coarse, delta, report.tail_start) &&
                 tail_settles(space, b_img, coarse, delta, report.tail_start) &&
                 tail_settles(space, c_img, coarse, delta, report.tail_start);
  if (premise) {
    for (std::size_t n = report.tail_start + 1; n < seq.size() && premise; ++n) {
      for (double t : coarse) {
        if (!(space.g_value(a_img[n], b_img[n], c_img[n], t) > 1.0 - delta)) {
          premise = false;
          break;
        }
      }
    }
  }
  report.premise_holds = premise;

  // Composites along the sequence: AB = A after B, BC = B after C,
  // CA = C after A.
  std::array<std::vector<double>, 3> comps;
  comps[0].reserve(seq.size());
  comps[1].reserve(seq.size());
  comps[2].reserve(seq.size());
  for (std::size_t n = 0; n < seq.size(); ++n) {
    comps[0].push_back(apply_map(A, b_img[n], u));
    comps[1].push_back(apply_map(B, c_img[n], u));
    comps[2].push_back(apply_map(C, a_img[n], u));
  }

  bool all_h0 = true;
  double worst = 0.0;
  for (int ai = 0; ai < 3; ++ai) {
    for (int bi = 0; bi < 3; ++bi) {
      CompatPair pair;
      pair.alpha = static_cast<CompositeLabel>(ai);
      pair.beta = static_cast<CompositeLabel>(bi);
      pair.residual = 0.0;
      const auto& alpha = comps[static_cast<std::size_t>(ai)];
      const auto& beta = comps[static_cast<std::size_t>(bi)];
      for (std::size_t n = report.tail_start + 1; n < seq.size(); ++n) {
        for (double t : grid) {
          const double v = space.g_value(alpha[n], beta[n], beta[n], t);
          pair.residual = std::max(pair.residual, 1.0 - v);
        }
      }
      pair.final_values.reserve(grid.size());
      for (double t : grid) {
        pair.final_values.push_back(
            space.g_value(alpha.back(), beta.back(), beta.back(), t));
      }
      worst = std::max(worst, pair.residual);
      if (pair.residual > delta) all_h0 = false;
      report.pairs.push_back(std::move(pair));
    }
  }
  report.worst_residual = worst;
  report.verdict = premise ? all_h0 : true;  // vacuous when the premise fails
  return report;
}

CompatReport check_compatible_pair(const PgmSpace& space, const SelfMap& A,
                                   const SelfMap& B, std::span<const double> seq,
                                   std::span<const double> grid, double delta) {
  return check_compatible_triple(space, A, B, B, seq, grid, delta);
}

bool check_continuity(const SelfMap& f, const PgmSpace& space, double z,
                      std::size_t probe_count, std::uint64_t seed) {
  const Universe& u = space.universe();
  if (!u.contains(z)) {
    throw std::invalid_argument("check_continuity: z not in universe");
  }
  constexpr std::array<double, 4> eps_ladder = {1e-1, 1e-2, 1e-3, 1e-4};
  constexpr std::array<double, 3> delta_ladder = {0.5, 0.1, 0.01};

  const double fz = apply_map(f, z, u);

  std::vector<double> global_probes;
  if (u.is_finite()) {
    global_probes.assign(u.points().begin(), u.points().end());
  } else {
    global_probes.reserve(probe_count + 1);
    global_probes.push_back(z);
    for (std::size_t i = 0; i < probe_count; ++i) {
      global_probes.push_back(u.sample(seed, i));
    }
  }

  auto candidate_passes = [&](double eps1, double delta1, double eps2,
                              double delta2) {
    const Neighborhood source{z, eps1, delta1};
    const Neighborhood target{fz, eps2, delta2};
    auto probe = [&](double x) {
      if (!u.contains(x)) return true;
      if (!in_neighborhood(space, source, x)) return true;
      return in_neighborhood(space, target, apply_map(f, x, u));
    };
    for (double x : global_probes) {
      if (!probe(x)) return false;
    }
    if (!u.is_finite()) {
      // Points seeded at fractions of the candidate radius keep the source
      // neighborhood populated even when it is much smaller than the
      // universe. For the ratio family N_z has crisp radius
      // eps1*delta1/(2(1-delta1)); for the dirac family eps1/2 works.
      const double radius = space.family() == Family::ratio
                                ? eps1 * delta1 / (2.0 * (1.0 - delta1))
                                : eps1 / 2.0;
      for (double frac : {0.999, 0.75, 0.5, 0.25, 0.05}) {
        for (double side : {1.0, -1.0}) {
          if (!probe(z + side * radius * frac)) return false;
        }
      }
    }
    return true;
  };

  for (double eps2 : eps_ladder) {
    for (double delta2 : delta_ladder) {
      bool satisfied = false;
      for (double eps1 : eps_ladder) {
        for (double delta1 : delta_ladder) {
          if (candidate_passes(eps1, delta1, eps2, delta2)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) break;
      }
      if (!satisfied) return false;
    }
  }
  return true;
}

std::optional<bool> check_limit_propagation(const SelfMap& f,
                                            const PgmSpace& space,
                                            std::span<const double> seq,
                                            double z,
                                            std::span<const double> grid,
                                            double delta) {
  if (seq.size() < 2) {
    throw std::invalid_argument("check_limit_propagation: sequence too short");
  }
  const Universe& u = space.universe();
  const std::size_t tail = tail_start_index(seq.size());
  const auto coarse = unit_and_up(grid);
  if (!settles_at(space, seq, z, coarse, delta, tail)) {
    return std::nullopt;  // premise x_n -> z not certified
  }
  const auto images = map_sequence(f, seq, u);
  const double fz = apply_map(f, z, u);
  return settles_at(space, images, fz, grid, delta, tail);
}

CompatPropagation check_compat_propagation(const PgmSpace& space,
                                           const SelfMap& A, const SelfMap& B,
                                           const SelfMap& C,
                                           std::span<const double> seq, double z,
                                           std::span<const double> grid,
                                           double delta) {
  CompatPropagation result;
  const Universe& u = space.universe();
  const std::size_t tail = tail_start_index(seq.size());
  const auto coarse = unit_and_up(grid);

  const auto a_img = map_sequence(A, seq, u);
  const auto b_img = map_sequence(B, seq, u);
  const auto c_img = map_sequence(C, seq, u);
  result.premise_limits = settles_at(space, a_img, z, coarse, delta, tail) &&
                          settles_at(space, b_img, z, coarse, delta, tail) &&
                          settles_at(space, c_img, z, coarse, delta, tail);

  result.premise_continuity =
      check_continuity(B, space, z, 256, 17) && check_continuity(C, space, z, 256, 17);

  const auto compat = check_compatible_triple(space, A, B, C, seq, grid, delta);
  result.premise_compatible = compat.premise_holds && compat.verdict;

  if (!result.premise_limits || !result.premise_continuity ||
      !result.premise_compatible) {
    return result;
  }

  std::vector<double> ab, ac;
  ab.reserve(seq.size());
  ac.reserve(seq.size());
  for (std::size_t n = 0; n < seq.size(); ++n) {
    ab.push_back(apply_map(A, b_img[n], u));
    ac.push_back(apply_map(A, c_img[n], u));
  }
  const double bz = apply_map(B, z, u);
  const double cz = apply_map(C, z, u);
  result.verdict = settles_at(space, ab, bz, grid, delta, tail) &&
                   settles_at(space, ac, cz, grid, delta, tail);
  return result;
}

} // namespace pgm
