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

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "pgm/space.hpp"
#include "test_util.hpp"

using pgm::Ddf;
using pgm::Family;
using pgm::GKernel;
using pgm::PgmSpace;
using pgm::Tnorm;
using pgm::TnormKind;
using pgm::Universe;

namespace {

PgmSpace ratio_perimeter_unit() {
  return PgmSpace(Universe::interval(0.0, 1.0), GKernel::perimeter(),
                  Family::ratio, Tnorm(TnormKind::min));
}

const std::vector<double> kSixPoints = {0.0, 1.0, 3.0, 4.0, 7.0, 9.0};

PgmSpace dirac_six_point_table() {
  return PgmSpace(Universe::finite(kSixPoints),
                  GKernel::table_from_values(kSixPoints), Family::dirac,
                  Tnorm(TnormKind::min));
}

// Test-side reimplementation of the two membership conditions, used as the
// oracle for converged / cauchy_window.
bool naive_in_neighborhood(const PgmSpace& space, double center, double eps,
                           double delta, double y) {
  return space.g_eval(center, y, y).eval(eps) > 1.0 - delta &&
         space.g_eval(y, center, center).eval(eps) > 1.0 - delta;
}

std::optional<std::size_t> naive_converged(const PgmSpace& space,
                                           const std::vector<double>& seq,
                                           double x, double eps, double delta) {
  for (std::size_t m = 0; m < seq.size(); ++m) {
    bool ok = true;
    for (std::size_t n = m + 1; n < seq.size(); ++n) {
      if (!naive_in_neighborhood(space, x, eps, delta, seq[n])) ok = false;
    }
    if (ok) {
      // minimality: either m = 0 or entry m itself fails
      if (m == 0 || !naive_in_neighborhood(space, x, eps, delta, seq[m])) {
        if (m + 1 == seq.size() &&
            !naive_in_neighborhood(space, x, eps, delta, seq[m])) {
          return std::nullopt;
        }
        return m;
      }
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> naive_cauchy(const PgmSpace& space,
                                        const std::vector<double>& seq,
                                        double eps, double delta) {
  const double bar = 1.0 - delta;
  for (std::size_t m = 0; m + 4 <= seq.size(); ++m) {
    bool ok = true;
    for (std::size_t n = m + 1; n < seq.size() && ok; ++n) {
      for (std::size_t p = m + 1; p < seq.size() && ok; ++p) {
        for (std::size_t l = m + 1; l < seq.size() && ok; ++l) {
          if (!(space.g_eval(seq[n], seq[p], seq[l]).eval(eps) > bar)) ok = false;
        }
      }
    }
    if (!ok) continue;
    // minimality against the full-triple definition
    bool minimal = m == 0;
    if (!minimal) {
      bool prev_ok = true;
      for (std::size_t n = m; n < seq.size() && prev_ok; ++n) {
        for (std::size_t p = m; p < seq.size() && prev_ok; ++p) {
          for (std::size_t l = m; l < seq.size() && prev_ok; ++l) {
            if (!(space.g_eval(seq[n], seq[p], seq[l]).eval(eps) > bar)) {
              prev_ok = false;
            }
          }
        }
      }
      minimal = !prev_ok;
    }
    if (minimal) return m;
  }
  return std::nullopt;
}

} // namespace

TEST_CASE("kernel evaluation through the space") {
  const PgmSpace space = ratio_perimeter_unit();

  SUBCASE("coincident points give the unit step at zero") {
    const Ddf f = space.g_eval(0.25, 0.25, 0.25);
    CHECK(f.eval(1e-9) == 1.0);
    CHECK(f.eval(100.0) == 1.0);
    CHECK(f.eval(0.0) == 0.0);
  }

  SUBCASE("perimeter of (0, 1, 1) is 2") {
    CHECK(space.g_crisp(0.0, 1.0, 1.0) == 2.0);
    CHECK(space.g_eval(0.0, 1.0, 1.0).eval(2.0) == 0.5);
  }

  SUBCASE("points outside the universe are rejected") {
    CHECK_THROWS_AS(space.g_eval(0.0, 1.0, 1.5), std::invalid_argument);
  }

  SUBCASE("value shortcut agrees with the materialized function") {
    for (std::uint64_t i = 0; i < 200; ++i) {
      const double x = pgmtest::unit(31, i, 0);
      const double y = pgmtest::unit(31, i, 1);
      const double z = pgmtest::unit(31, i, 2);
      const double t = pgm::draw_log2(31, i, 3, -10, 10);
      CHECK(space.g_value(x, y, z, t) == space.g_eval(x, y, z).eval(t));
    }
  }
}

TEST_CASE("discrete family puts a crisp step at the kernel value") {
  const PgmSpace space = dirac_six_point_table();
  // g(0, 1, 1) = 2: the step opens just past 2
  CHECK(space.g_value(0.0, 1.0, 1.0, 2.0) == 0.0);
  CHECK(space.g_value(0.0, 1.0, 1.0, 2.5) == 1.0);
  CHECK(space.g_value(3.0, 3.0, 3.0, 1e-9) == 1.0);
}

TEST_CASE("axiom scan on the smooth space finds nothing") {
  const PgmSpace space = ratio_perimeter_unit();
  const auto grid = pgm::pow2_grid(-10, 10);
  const auto report = pgm::check_axioms(space, 500, 20, 42, grid);
  CHECK(report.pass());
  CHECK(report.tuples == 500);
}

TEST_CASE("exhaustive scan on the discrete table agrees with a crisp oracle") {
  const PgmSpace space = dirac_six_point_table();
  const auto grid = pgm::pow2_grid(-10, 10);

  // Independent oracle: the discrete family satisfies the axioms exactly
  // when the kernel satisfies their crisp counterparts; enumerate all of
  // them directly on the kernel values.
  const std::size_t n = kSixPoints.size();
  auto g = [&](std::size_t i, std::size_t j, std::size_t k) {
    return space.g_crisp(kSixPoints[i], kSixPoints[j], kSixPoints[k]);
  };
  bool oracle_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double v = g(i, j, k);
        if ((v == 0.0) != (i == j && j == k)) oracle_ok = false;
        if (v != g(i, k, j) || v != g(j, i, k) || v != g(j, k, i) ||
            v != g(k, i, j) || v != g(k, j, i)) {
          oracle_ok = false;
        }
        if (k != j && g(i, i, j) > v) oracle_ok = false;
        for (std::size_t a = 0; a < n; ++a) {
          if (v > g(i, a, a) + g(a, j, k) + 1e-12) oracle_ok = false;
        }
      }
    }
  }
  REQUIRE(oracle_ok);

  const auto report = pgm::check_axioms_exhaustive(space, 20, 42, grid);
  CHECK(report.pass());
  CHECK(report.tuples == n * n * n * n);
}

TEST_CASE("axiom scan names the broken axiom") {
  const auto grid = pgm::pow2_grid(-4, 4);

  SUBCASE("symmetry violation") {
    // 2-point kernel whose (0,1,1) arrangement disagrees with (1,1,0)
    std::vector<double> values = {0.0, 1.0, 1.0, 5.0, 1.0, 1.0, 1.0, 0.0};
    const PgmSpace space(Universe::finite({0.0, 1.0}),
                         GKernel::table_raw(2, std::move(values)),
                         Family::dirac, Tnorm(TnormKind::min));
    const auto report = pgm::check_axioms_exhaustive(space, 8, 1, grid);
    CHECK_FALSE(report.pass());
    CHECK(report.violations_per_axiom[2] > 0);
  }

  SUBCASE("identity violation: zero distance between distinct points") {
    const auto entries = std::vector<GKernel::Entry>{
        {0, 0, 0, 0.0}, {1, 1, 1, 0.0}, {0, 0, 1, 0.0}, {0, 1, 1, 1.0}};
    const PgmSpace space(Universe::finite({0.0, 1.0}),
                         GKernel::table_from_entries(2, entries), Family::dirac,
                         Tnorm(TnormKind::min));
    const auto report = pgm::check_axioms_exhaustive(space, 8, 1, grid);
    CHECK_FALSE(report.pass());
    CHECK(report.violations_per_axiom[0] > 0);
  }

  SUBCASE("two-point dominance violation") {
    const auto entries = std::vector<GKernel::Entry>{
        {0, 0, 0, 0.0}, {1, 1, 1, 0.0}, {2, 2, 2, 0.0},
        {0, 0, 1, 5.0}, {0, 1, 1, 5.0}, {0, 0, 2, 1.0},
        {0, 2, 2, 1.0}, {1, 1, 2, 1.0}, {1, 2, 2, 1.0},
        {0, 1, 2, 1.0}};
    const PgmSpace space(Universe::finite({0.0, 1.0, 2.0}),
                         GKernel::table_from_entries(3, entries), Family::dirac,
                         Tnorm(TnormKind::min));
    const auto report = pgm::check_axioms_exhaustive(space, 8, 1, grid);
    CHECK_FALSE(report.pass());
    CHECK(report.violations_per_axiom[1] > 0);
  }
}

TEST_CASE("neighborhood membership") {
  const PgmSpace space = ratio_perimeter_unit();

  SUBCASE("the center always belongs") {
    CHECK(pgm::in_neighborhood(space, {0.3, 1e-9, 1e-9 * 2}, 0.3));
  }

  SUBCASE("worked example at eps = 1") {
    // g(0, 1, 1) = 2, so the membership value is 1/(1+2) = 1/3
    CHECK_FALSE(pgm::in_neighborhood(space, {0.0, 1.0, 0.5}, 1.0));
    CHECK(pgm::in_neighborhood(space, {0.0, 1.0, 0.7}, 1.0));
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(pgm::in_neighborhood(space, {0.0, -1.0, 0.5}, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(pgm::in_neighborhood(space, {0.0, 1.0, 1.5}, 0.5),
                    std::invalid_argument);
  }
}

TEST_CASE("sequence convergence detection") {
  const PgmSpace space = ratio_perimeter_unit();

  SUBCASE("constant sequence settles immediately") {
    const std::vector<double> seq(10, 0.25);
    CHECK(pgm::converged(space, seq, 0.25, 1e-3, 0.5) == 0);
  }

  SUBCASE("halving sequence enters the eps = 1 window after index 1") {
    // membership value 1/(1 + 2^(1-n)) crosses 1/2 at n = 2
    std::vector<double> seq;
    for (int n = 0; n < 20; ++n) seq.push_back(std::ldexp(1.0, -n));
    CHECK(pgm::converged(space, seq, 0.0, 1.0, 0.5) == 1);
  }

  SUBCASE("alternating sequence never settles") {
    std::vector<double> seq;
    for (int n = 0; n < 20; ++n) seq.push_back(n % 2 == 0 ? 0.0 : 1.0);
    CHECK_FALSE(pgm::converged(space, seq, 0.0, 1.0, 0.5).has_value());
  }

  SUBCASE("agrees with direct membership evaluation on random sequences") {
    for (std::uint64_t i = 0; i < 60; ++i) {
      std::vector<double> seq;
      const std::size_t len = 2 + pgm::mix_bits(91, i, 0) % 9;
      for (std::size_t j = 0; j < len; ++j) {
        seq.push_back(pgmtest::unit(91, i, 10 + static_cast<std::uint32_t>(j)));
      }
      const double x = pgmtest::unit(91, i, 1);
      const double eps = 0.1 + pgmtest::unit(91, i, 2);
      const double delta = 0.1 + 0.8 * pgmtest::unit(91, i, 3);
      CHECK(pgm::converged(space, seq, x, eps, delta) ==
            naive_converged(space, seq, x, eps, delta));
    }
  }
}

TEST_CASE("probabilistic cauchy window") {
  const PgmSpace space = ratio_perimeter_unit();

  SUBCASE("constant sequence") {
    const std::vector<double> seq(8, 0.5);
    CHECK(pgm::cauchy_window(space, seq, 1e-6, 0.5) == 0);
  }

  SUBCASE("geometric sequence settles for every threshold pair") {
    std::vector<double> seq;
    for (int n = 0; n < 50; ++n) seq.push_back(std::ldexp(1.0, -n));
    for (double eps : {1.0, 1e-2, 1e-4}) {
      for (double delta : {0.5, 0.1, 0.01}) {
        CHECK(pgm::cauchy_window(space, seq, eps, delta).has_value());
      }
    }
  }

  SUBCASE("alternating sequence splits at delta = 2/(eps+2)") {
    std::vector<double> seq;
    for (int n = 0; n < 16; ++n) seq.push_back(n % 2 == 0 ? 0.0 : 1.0);
    // eps = 1: mixed triples evaluate to 1/3, so the window exists exactly
    // when 1 - delta < 1/3
    CHECK_FALSE(pgm::cauchy_window(space, seq, 1.0, 0.6).has_value());
    CHECK(pgm::cauchy_window(space, seq, 1.0, 0.7) == 0);
  }

  SUBCASE("agrees with the exhaustive oracle on random sequences") {
    for (std::uint64_t i = 0; i < 40; ++i) {
      std::vector<double> seq;
      const std::size_t len = 4 + pgm::mix_bits(92, i, 0) % 7;
      for (std::size_t j = 0; j < len; ++j) {
        seq.push_back(pgmtest::unit(92, i, 10 + static_cast<std::uint32_t>(j)));
      }
      const double eps = 0.1 + pgmtest::unit(92, i, 1);
      const double delta = 0.1 + 0.8 * pgmtest::unit(92, i, 2);
      CHECK(pgm::cauchy_window(space, seq, eps, delta) ==
            naive_cauchy(space, seq, eps, delta));
    }
  }
}

TEST_CASE("joint continuity of the kernel map") {
  const PgmSpace space = ratio_perimeter_unit();
  const auto grid = pgm::pow2_grid(-10, 10);

  SUBCASE("constant triples") {
    const std::vector<std::array<double, 3>> triples(10, {0.2, 0.4, 0.9});
    CHECK(pgm::joint_continuity_check(space, triples, {0.2, 0.4, 0.9}, grid, 1e-9));
  }

  SUBCASE("halving triples approach the diagonal value") {
    std::vector<std::array<double, 3>> triples;
    for (int n = 0; n < 64; ++n) {
      triples.push_back({std::ldexp(1.0, -n), 0.0, 0.0});
    }
    CHECK(pgm::joint_continuity_check(space, triples, {0.0, 0.0, 0.0}, grid, 1e-3));
  }

  SUBCASE("harmonic triples on a coarse grid") {
    const PgmSpace wide(Universe::interval(0.0, 2.0), GKernel::perimeter(),
                        Family::ratio, Tnorm(TnormKind::min));
    std::vector<std::array<double, 3>> triples;
    for (int n = 1; n <= 4000; ++n) {
      triples.push_back({1.0 / n, 0.0, 0.0});
    }
    const std::vector<double> coarse = {1.0, 2.0, 4.0};
    CHECK(pgm::joint_continuity_check(wide, triples, {0.0, 0.0, 0.0}, coarse, 1e-3));
  }

  SUBCASE("non-converging triples fail") {
    std::vector<std::array<double, 3>> triples;
    for (int n = 0; n < 32; ++n) {
      triples.push_back({n % 2 == 0 ? 0.0 : 1.0, 0.0, 0.0});
    }
    CHECK_FALSE(
        pgm::joint_continuity_check(space, triples, {0.0, 0.0, 0.0}, grid, 1e-3));
  }
}
