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

#include <cmath>

#include "pgm/selfmap.hpp"
#include "test_util.hpp"

using pgm::SelfMap;
using pgm::Universe;

TEST_CASE("map application") {
  const Universe unit = Universe::interval(0.0, 1.0);
  const Universe wide = Universe::interval(0.0, 5.0);

  CHECK(pgm::apply_map(SelfMap::affine(0.25, 0.0), 1.0, unit) == 0.25);

  SUBCASE("composite applies left to right and may transit outside") {
    const SelfMap doubler_then_halver =
        SelfMap::composite({SelfMap::affine(2.0, 0.0), SelfMap::affine(0.5, 0.0)});
    CHECK(pgm::apply_map(doubler_then_halver, 3.0, wide) == 3.0);
  }

  SUBCASE("table swap") {
    const Universe two = Universe::finite({0.0, 1.0});
    const SelfMap swap = SelfMap::table({1, 0});
    CHECK(pgm::apply_map(swap, 1.0, two) == 0.0);
    CHECK(pgm::apply_map(swap, 0.0, two) == 1.0);
  }

  SUBCASE("escaping image reports the witness") {
    try {
      pgm::apply_map(SelfMap::affine(2.0, 0.0), 0.7, unit);
      FAIL("expected MapImageError");
    } catch (const pgm::MapImageError& e) {
      CHECK(e.point == 0.7);
      CHECK(e.image == doctest::Approx(1.4));
    }
  }

  SUBCASE("polynomial evaluation") {
    const SelfMap square = SelfMap::poly({0.0, 0.0, 1.0});
    CHECK(pgm::apply_map(square, 2.0, wide) == 4.0);
    const SelfMap quad = SelfMap::poly({1.0, -2.0, 1.0});  // (x-1)^2
    CHECK(pgm::apply_map(quad, 3.0, wide) == 4.0);
  }
}

TEST_CASE("preimage solving") {
  const Universe unit = Universe::interval(0.0, 1.0);
  const Universe six = Universe::interval(0.0, 6.0);

  SUBCASE("invertible affine uses the exact formula") {
    const auto p = pgm::solve_preimage(SelfMap::affine(0.5, 0.0), 0.25, unit);
    REQUIRE(p.has_value());
    CHECK(*p == 0.5);
  }

  SUBCASE("constant map hits the target: canonical midpoint") {
    const auto p = pgm::solve_preimage(SelfMap::affine(0.0, 3.0), 3.0, six);
    REQUIRE(p.has_value());
    CHECK(*p == 3.0);  // midpoint of [0, 6]
  }

  SUBCASE("constant map off target: no preimage") {
    CHECK_FALSE(pgm::solve_preimage(SelfMap::affine(0.0, 3.0), 2.0, six).has_value());
  }

  SUBCASE("formula preimage outside the universe: no preimage") {
    CHECK_FALSE(pgm::solve_preimage(SelfMap::affine(0.5, 0.0), 0.6, unit).has_value());
  }

  SUBCASE("finite universes pick the smallest index") {
    const Universe three = Universe::finite({0.0, 1.0, 2.0});
    const SelfMap f = SelfMap::table({2, 2, 0});
    const auto p = pgm::solve_preimage(f, 2.0, three);
    REQUIRE(p.has_value());
    CHECK(*p == 0.0);
  }

  SUBCASE("composite chains right to left") {
    const Universe wide = Universe::interval(0.0, 5.0);
    const SelfMap f =
        SelfMap::composite({SelfMap::affine(2.0, 0.0), SelfMap::affine(0.5, 0.0)});
    const auto p = pgm::solve_preimage(f, 1.0, wide);
    REQUIRE(p.has_value());
    CHECK(*p == 1.0);
  }

  SUBCASE("polynomial preimage by bracketing") {
    const Universe wide = Universe::interval(0.0, 40.0);
    const SelfMap square = SelfMap::poly({0.0, 0.0, 1.0});
    const auto p = pgm::solve_preimage(square, 9.0, wide, 1e-9);
    REQUIRE(p.has_value());
    CHECK(*p == doctest::Approx(3.0).epsilon(1e-9));
  }

  SUBCASE("target outside the universe is rejected") {
    CHECK_THROWS_AS(pgm::solve_preimage(SelfMap::affine(1.0, 0.0), 2.0, unit),
                    std::invalid_argument);
  }
}

TEST_CASE("applying a found preimage recovers the target") {
  const Universe wide = Universe::interval(-4.0, 4.0);
  for (std::uint64_t i = 0; i < 200; ++i) {
    SelfMap f = SelfMap::identity();
    switch (i % 3) {
      case 0:
        f = SelfMap::affine(0.2 + pgmtest::unit(55, i, 0),
                            pgmtest::unit(55, i, 1) - 0.5);
        break;
      case 1:
        f = SelfMap::poly({pgmtest::unit(55, i, 0) - 0.5,
                           0.3 + pgmtest::unit(55, i, 1),
                           0.1 * pgmtest::unit(55, i, 2)});
        break;
      default:
        f = SelfMap::composite({SelfMap::affine(0.5, 0.1),
                                SelfMap::affine(1.0 + pgmtest::unit(55, i, 3), 0.0)});
    }
    const double target = 3.0 * (pgmtest::unit(55, i, 4) - 0.5);
    const auto p = pgm::solve_preimage(f, target, wide, 1e-10);
    if (p.has_value()) {
      CHECK(f.apply_raw(*p, wide) == doctest::Approx(target).epsilon(1e-8));
      CHECK(wide.contains(*p));
    }
  }
}

TEST_CASE("composite grouping does not change the map") {
  const Universe wide = Universe::interval(-8.0, 8.0);
  const SelfMap f = SelfMap::affine(0.5, 0.25);
  const SelfMap g = SelfMap::poly({0.0, 1.0, 0.05});
  const SelfMap h = SelfMap::affine(-0.75, 0.5);
  const SelfMap left = SelfMap::composite({SelfMap::composite({f, g}), h});
  const SelfMap right = SelfMap::composite({f, SelfMap::composite({g, h})});
  const SelfMap flat = SelfMap::composite({f, g, h});
  for (std::uint64_t i = 0; i < 100; ++i) {
    const double x = 2.0 * (pgmtest::unit(66, i, 0) - 0.5);
    const double a = left.apply_raw(x, wide);
    CHECK(a == right.apply_raw(x, wide));
    CHECK(a == flat.apply_raw(x, wide));
  }
}

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(SelfMap::table({0, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SelfMap::table({}), std::invalid_argument);
  CHECK_THROWS_AS(SelfMap::poly({}), std::invalid_argument);
  CHECK_THROWS_AS(SelfMap::composite({}), std::invalid_argument);
}
