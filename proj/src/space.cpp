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

#include "pgm/space.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pgm/rng.hpp"

namespace pgm {

namespace {

constexpr double kCrispZeroTol = 1e-15;

// One tuple's worth of axiom checks, appended to `out` in a fixed order so
// that per-sample results are schedule-independent.
struct TupleChecker {
  const PgmSpace& space;
  std::span<const double> grid;
  std::size_t st_pairs;
  std::uint64_t seed;

  std::size_t run(std::size_t sample, double x, double y, double z, double a,
                  std::vector<SpaceAxiomViolation>& out) const {
    std::size_t checks = 0;
    const bool diagonal = (x == y && y == z);
    const double g_xyz = space.g_crisp(x, y, z);

    // Axiom 1. The crisp side is decisive: for both induced families the
    // distribution degenerates to the unit step at 0 exactly when g = 0,
    // so "identically 1 on (0, inf)" is equivalent to g = 0. The sampled
    // side re-checks the forward direction on the grid.
    ++checks;
    if (diagonal) {
      if (g_xyz > kCrispZeroTol) {
        out.push_back({1, true, sample, x, y, z, 0, 0, 0, 0.0, g_xyz});
      }
      for (double t : grid) {
        ++checks;
        const double v = space.g_value(x, y, z, t);
        if (v < 1.0 - kValueTol) {
          out.push_back({1, false, sample, x, y, z, 0, t, 0, v, 1.0});
        }
      }
    } else if (g_xyz <= kCrispZeroTol) {
      out.push_back({1, true, sample, x, y, z, 0, 0, 0, g_xyz, kCrispZeroTol});
    }

    // Axiom 2 (z != y): crisp comparison plus grid comparison.
    if (z != y) {
      const double g_xxy = space.g_crisp(x, x, y);
      ++checks;
      if (g_xxy > g_xyz + kValueTol) {
        out.push_back({2, true, sample, x, y, z, 0, 0, 0, g_xyz, g_xxy});
      }
      for (double t : grid) {
        ++checks;
        const double lhs = space.g_value(x, x, y, t);
        const double rhs = space.g_value(x, y, z, t);
        if (lhs < rhs - kValueTol) {
          out.push_back({2, false, sample, x, y, z, 0, t, 0, lhs, rhs});
        }
      }
    }

    // Axiom 3: all six argument orders agree.
    {
      const double perms[5] = {
          space.g_crisp(x, z, y), space.g_crisp(y, x, z),
          space.g_crisp(y, z, x), space.g_crisp(z, x, y),
          space.g_crisp(z, y, x)};
      for (double gp : perms) {
        ++checks;
        if (std::abs(gp - g_xyz) > kValueTol) {
          out.push_back({3, true, sample, x, y, z, 0, 0, 0, g_xyz, gp});
          break;
        }
      }
      const double t_probe = grid.empty() ? 1.0 : grid[grid.size() / 2];
      const double v_ref = space.g_value(x, y, z, t_probe);
      const double v_perm[5] = {
          space.g_value(x, z, y, t_probe), space.g_value(y, x, z, t_probe),
          space.g_value(y, z, x, t_probe), space.g_value(z, x, y, t_probe),
          space.g_value(z, y, x, t_probe)};
      for (double vp : v_perm) {
        ++checks;
        if (std::abs(vp - v_ref) > kValueTol) {
          out.push_back({3, false, sample, x, y, z, 0, t_probe, 0, v_ref, vp});
          break;
        }
      }
    }

    // Axiom 4: crisp tetrahedral bound (equivalent to the distribution
    // inequality for both induced families) plus sampled (s, t) pairs
    // through the space's own t-norm.
    {
      const double g_xaa = space.g_crisp(x, a, a);
      const double g_ayz = space.g_crisp(a, y, z);
      ++checks;
      if (g_xyz > g_xaa + g_ayz + kValueTol) {
        out.push_back({4, true, sample, x, y, z, a, 0, 0, g_xaa + g_ayz, g_xyz});
      }
      for (std::size_t j = 0; j < st_pairs; ++j) {
        double t, s;
        switch (j % 7) {
          case 0: t = 0.0; s = draw_log2(seed, sample, 100 + 2 * static_cast<std::uint32_t>(j), -10, 10); break;
          case 1: t = draw_log2(seed, sample, 100 + 2 * static_cast<std::uint32_t>(j), -10, 10); s = 0.0; break;
          case 2: t = 0.0; s = 0.0; break;
          default:
            t = draw_log2(seed, sample, 100 + 2 * static_cast<std::uint32_t>(j), -10, 10);
            s = draw_log2(seed, sample, 101 + 2 * static_cast<std::uint32_t>(j), -10, 10);
        }
        ++checks;
        const double lhs = space.g_value(x, y, z, t + s);
        const double rhs = space.tnorm().apply(space.g_value(x, a, a, t),
                                               space.g_value(a, y, z, s));
        if (lhs < rhs - kValueTol) {
          out.push_back({4, false, sample, x, y, z, a, t, s, lhs, rhs});
        }
      }
    }
    return checks;
  }
};

struct Tuple4 {
  double x, y, z, a;
};

// Every eighth sample degenerates so that diagonal and pair cases appear
// regardless of the seed.
Tuple4 sampled_tuple(const Universe& u, std::uint64_t seed, std::size_t i) {
  const double p = u.sample(seed, i, 0);
  const double q = u.sample(seed, i, 1);
  const double r = u.sample(seed, i, 2);
  const double a = u.sample(seed, i, 3);
  switch (i % 8) {
    case 0: return {p, p, p, a};
    case 1: return {p, p, q, a};
    case 2: return {p, q, q, a};
    case 3: return {p, q, p, a};
    case 4: return {p, q, r, p};  // a coincides with a triple member
    default: return {p, q, r, a};
  }
}

SpaceAxiomReport run_axiom_scan(const PgmSpace& space, std::size_t tuples,
                                std::size_t st_pairs, std::uint64_t seed,
                                std::span<const double> grid, Exec exec,
                                const std::function<Tuple4(std::size_t)>& tuple_at) {
  SpaceAxiomReport report;
  report.tuples = tuples;
  const TupleChecker checker{space, grid, st_pairs, seed};

  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < tuples; ++i) {
      const Tuple4 q = tuple_at(i);
      report.checks += checker.run(i, q.x, q.y, q.z, q.a, report.witnesses);
    }
  } else {
    const int max_threads = omp_get_max_threads();
    std::vector<std::vector<SpaceAxiomViolation>> buckets(
        static_cast<std::size_t>(max_threads));
    std::size_t checks = 0;
#pragma omp parallel for schedule(static) reduction(+ : checks)
    for (std::size_t i = 0; i < tuples; ++i) {
      const Tuple4 q = tuple_at(i);
      auto& bucket = buckets[static_cast<std::size_t>(omp_get_thread_num())];
      checks += checker.run(i, q.x, q.y, q.z, q.a, bucket);
    }
    report.checks = checks;
    for (auto& bucket : buckets) {
      report.witnesses.insert(report.witnesses.end(), bucket.begin(), bucket.end());
    }
    // Within a sample the order is fixed by TupleChecker; across samples a
    // stable sort restores the serial enumeration order.
    std::stable_sort(report.witnesses.begin(), report.witnesses.end(),
                     [](const SpaceAxiomViolation& l, const SpaceAxiomViolation& r) {
                       return l.sample < r.sample;
                     });
  }
  for (const auto& w : report.witnesses) {
    ++report.violations_per_axiom[static_cast<std::size_t>(w.axiom - 1)];
  }
  return report;
}

} // namespace

PgmSpace::PgmSpace(Universe universe, GKernel kernel, Family family, Tnorm tnorm)
    : universe_(std::move(universe)),
      kernel_(std::move(kernel)),
      family_(family),
      tnorm_(tnorm) {
  if (kernel_.kind() == GKernel::Kind::table) {
    if (!universe_.is_finite() || universe_.size() != kernel_.table_size()) {
      throw std::invalid_argument(
          "PgmSpace: table kernel size must match a finite universe");
    }
  }
}

double PgmSpace::g_crisp(double x, double y, double z) const {
  return kernel_.eval(x, y, z, universe_);
}

Ddf PgmSpace::g_eval(double x, double y, double z) const {
  const double g = g_crisp(x, y, z);
  return family_ == Family::ratio ? Ddf::ratio(g) : Ddf::step(g);
}

double PgmSpace::g_value(double x, double y, double z, double t) const {
  const double g = g_crisp(x, y, z);
  if (family_ == Family::dirac) {
    return t > g ? 1.0 : 0.0;
  }
  if (t <= 0.0) return 0.0;
  if (std::isinf(t)) return 1.0;
  return t / (t + g);
}

bool in_neighborhood(const PgmSpace& space, const Neighborhood& nbhd, double y) {
  if (!(nbhd.eps > 0.0)) {
    throw std::invalid_argument("in_neighborhood: eps must be positive");
  }
  if (!(nbhd.delta > 0.0 && nbhd.delta < 1.0)) {
    throw std::invalid_argument("in_neighborhood: delta must lie in (0, 1)");
  }
  const double bar = 1.0 - nbhd.delta;
  return space.g_value(nbhd.center, y, y, nbhd.eps) > bar &&
         space.g_value(y, nbhd.center, nbhd.center, nbhd.eps) > bar;
}

SpaceAxiomReport check_axioms(const PgmSpace& space, std::size_t point_samples,
                              std::size_t st_pairs, std::uint64_t seed,
                              std::span<const double> grid, Exec exec) {
  if (point_samples < 1 || st_pairs < 1) {
    throw std::invalid_argument("check_axioms: counts must be >= 1");
  }
  const Universe& u = space.universe();
  return run_axiom_scan(space, point_samples, st_pairs, seed, grid, exec,
                        [&u, seed](std::size_t i) { return sampled_tuple(u, seed, i); });
}

SpaceAxiomReport check_axioms_exhaustive(const PgmSpace& space,
                                         std::size_t st_pairs,
                                         std::uint64_t seed,
                                         std::span<const double> grid,
                                         Exec exec) {
  if (!space.universe().is_finite()) {
    throw std::invalid_argument("check_axioms_exhaustive: finite universe required");
  }
  if (st_pairs < 1) {
    throw std::invalid_argument("check_axioms_exhaustive: st_pairs must be >= 1");
  }
  const auto pts = space.universe().points();
  const std::size_t n = pts.size();
  // Flattened enumeration of every (x, y, z, a) index combination.
  const std::size_t tuples = n * n * n * n;
  return run_axiom_scan(space, tuples, st_pairs, seed, grid, exec,
                        [pts, n](std::size_t i) {
                          const std::size_t ia = i % n;
                          const std::size_t rest = i / n;
                          const std::size_t iz = rest % n;
                          const std::size_t iy = (rest / n) % n;
                          const std::size_t ix = rest / (n * n);
                          return Tuple4{pts[ix], pts[iy], pts[iz], pts[ia]};
                        });
}

std::optional<std::size_t> converged(const PgmSpace& space,
                                     std::span<const double> seq, double x,
                                     double eps, double delta) {
  if (seq.empty()) {
    throw std::invalid_argument("converged: sequence must be nonempty");
  }
  const Neighborhood nbhd{x, eps, delta};
  std::optional<std::size_t> last_fail;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    if (!in_neighborhood(space, nbhd, seq[n])) last_fail = n;
  }
  if (!last_fail) return 0;
  if (*last_fail + 1 == seq.size()) return std::nullopt;
  return *last_fail;
}

std::optional<std::size_t> cauchy_window(const PgmSpace& space,
                                         std::span<const double> seq,
                                         double eps, double delta, Exec exec) {
  if (seq.empty()) {
    throw std::invalid_argument("cauchy_window: sequence must be nonempty");
  }
  if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("cauchy_window: need eps > 0 and delta in (0, 1)");
  }
  const double bar = 1.0 - delta;
  const std::size_t len = seq.size();
  // M must exceed the smallest index of every failing triple; scanning
  // unordered triples n <= m <= l suffices by symmetry.
  long long worst = -1;
  if (exec == Exec::serial) {
    for (std::size_t n = 0; n < len; ++n) {
      bool fail_here = false;
      for (std::size_t m = n; m < len && !fail_here; ++m) {
        for (std::size_t l = m; l < len; ++l) {
          if (!(space.g_value(seq[n], seq[m], seq[l], eps) > bar)) {
            fail_here = true;
            break;
          }
        }
      }
      if (fail_here) worst = static_cast<long long>(n);
    }
  } else {
    long long worst_par = -1;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : worst_par)
    for (std::size_t n = 0; n < len; ++n) {
      bool fail_here = false;
      for (std::size_t m = n; m < len && !fail_here; ++m) {
        for (std::size_t l = m; l < len; ++l) {
          if (!(space.g_value(seq[n], seq[m], seq[l], eps) > bar)) {
            fail_here = true;
            break;
          }
        }
      }
      if (fail_here) {
        worst_par = std::max(worst_par, static_cast<long long>(n));
      }
    }
    worst = worst_par;
  }
  if (worst < 0) return 0;
  const auto m = static_cast<std::size_t>(worst);
  // Demand at least one nondegenerate triple beyond M.
  if (m + 4 > len) return std::nullopt;
  return m;
}

bool joint_continuity_check(const PgmSpace& space,
                            std::span<const std::array<double, 3>> triples,
                            const std::array<double, 3>& limit,
                            std::span<const double> grid, double tol) {
  if (triples.empty()) {
    throw std::invalid_argument("joint_continuity_check: need at least one triple");
  }
  const std::size_t start = tail_start_index(triples.size());
  for (double t : grid) {
    const double target = space.g_value(limit[0], limit[1], limit[2], t);
    for (std::size_t n = start + 1; n < triples.size(); ++n) {
      const double v =
          space.g_value(triples[n][0], triples[n][1], triples[n][2], t);
      if (std::abs(v - target) > tol) return false;
    }
  }
  return true;
}

} // namespace pgm
