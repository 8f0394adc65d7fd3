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

#include <cstring>

#include "pgm/scenario.hpp"

using pgm::Scenario;
using pgm::ScenarioError;
using pgm::SelfMap;

namespace {

constexpr const char* kCanonicalText = R"(# canonical halving scenario
[space]
family = ratio
kernel = perimeter
universe = interval 0 1
tnorm = min

[maps]
A = affine 0.25 0
B = affine 0.25 0
C = affine 0.25 0
D = affine 0.5 0
S = affine 0.5 0
T = affine 0.5 0

[run]
x0 = 1
k = 0.5
eps = 1e-6
delta = 1e-3
n_max = 60
seed = 42
grid = pow2 -10 10
)";

} // namespace

TEST_CASE("a minimal document parses with defaults") {
  const Scenario s = pgm::parse_scenario("[maps]\nA = affine 0.5 0\n");
  CHECK(s.family == pgm::Family::ratio);
  CHECK(s.kernel.kind == pgm::KernelSpec::Kind::perimeter);
  CHECK_FALSE(s.universe_finite);
  CHECK(s.tnorm == pgm::TnormKind::min);
  CHECK(s.k == 0.5);
  CHECK_FALSE(s.x0.has_value());
  CHECK(s.maps.at("A") == SelfMap::affine(0.5, 0.0));
}

TEST_CASE("the canonical document parses completely") {
  const Scenario s = pgm::parse_scenario(kCanonicalText, true);
  CHECK(s.x0 == 1.0);
  CHECK(s.n_max == 60);
  CHECK(s.seed == 42);
  CHECK(s.maps.size() == 6);
  CHECK(s.grid.materialize().size() == 21);
  const pgm::Sextuple sx = pgm::build_sextuple(s);
  CHECK(sx.A == SelfMap::affine(0.25, 0.0));
  CHECK(sx.S == SelfMap::affine(0.5, 0.0));
}

TEST_CASE("field validation") {
  SUBCASE("k outside the admissible interval") {
    try {
      pgm::parse_scenario("[run]\nk = 0.6\n");
      FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
      CHECK(std::strstr(e.what(), "k outside (0, 1/2]") != nullptr);
      CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(pgm::parse_scenario("[run]\nk = 0\n"), ScenarioError);
  }

  SUBCASE("unknown names are rejected") {
    CHECK_THROWS_AS(pgm::parse_scenario("[space]\ntnorm = hamacher\n"),
                    ScenarioError);
    CHECK_THROWS_AS(pgm::parse_scenario("[space]\nfamily = gaussian\n"),
                    ScenarioError);
    CHECK_THROWS_AS(pgm::parse_scenario("[space]\nkernel = graph\n"),
                    ScenarioError);
  }

  SUBCASE("delta and eps ranges") {
    CHECK_THROWS_AS(pgm::parse_scenario("[run]\ndelta = 1\n"), ScenarioError);
    CHECK_THROWS_AS(pgm::parse_scenario("[run]\neps = 0\n"), ScenarioError);
  }

  SUBCASE("unknown keys: error in strict mode, warning otherwise") {
    const char* text = "[run]\nwibble = 3\n";
    CHECK_THROWS_AS(pgm::parse_scenario(text, true), ScenarioError);
    std::vector<std::string> warnings;
    const Scenario s = pgm::parse_scenario(text, false, &warnings);
    CHECK(s.k == 0.5);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("wibble") != std::string::npos);
  }

  SUBCASE("structural errors") {
    CHECK_THROWS_AS(pgm::parse_scenario("x0 = 1\n"), ScenarioError);  // no section
    CHECK_THROWS_AS(pgm::parse_scenario("[run\nx0 = 1\n"), ScenarioError);
    CHECK_THROWS_AS(pgm::parse_scenario("[run]\nx0\n"), ScenarioError);
    CHECK_THROWS_AS(pgm::parse_scenario("[run]\nx0 =\n"), ScenarioError);
    CHECK_THROWS_AS(pgm::parse_scenario("[run]\nx0 = 1\nx0 = 2\n"), ScenarioError);
  }

  SUBCASE("table maps require a finite universe") {
    CHECK_THROWS_AS(
        pgm::parse_scenario("[space]\nuniverse = interval 0 1\n[maps]\nA = table 0\n"),
        ScenarioError);
  }

  SUBCASE("raw kernels demand complete tables") {
    const char* text =
        "[space]\nkernel = table\nuniverse = finite 0 1\ng = raw\nraw = 0 0 0 0\n";
    const Scenario s = pgm::parse_scenario(text);
    CHECK_THROWS_AS(pgm::build_space(s), ScenarioError);
  }

  SUBCASE("missing sextuple members are listed") {
    const Scenario s = pgm::parse_scenario("[maps]\nA = affine 0.5 0\n");
    try {
      pgm::build_sextuple(s);
      FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
      CHECK(std::strstr(e.what(), "B") != nullptr);
      CHECK(std::strstr(e.what(), "T") != nullptr);
    }
  }
}

TEST_CASE("sequence specifications materialize correctly") {
  const Scenario geo = pgm::parse_scenario("[sequence]\nkind = geometric 1 0.5 4\n");
  CHECK(geo.sequence->materialize() == std::vector<double>{1.0, 0.5, 0.25, 0.125});

  const Scenario harm =
      pgm::parse_scenario("[sequence]\nkind = harmonic_shift 2 4\n");
  const auto hseq = harm.sequence->materialize();
  REQUIRE(hseq.size() == 4);
  CHECK(hseq[0] == 3.0);
  CHECK(hseq[3] == 2.25);

  const Scenario alt =
      pgm::parse_scenario("[sequence]\nkind = alternating 0 1 5\n");
  CHECK(alt.sequence->materialize() == std::vector<double>{0, 1, 0, 1, 0});

  const Scenario con = pgm::parse_scenario("[sequence]\nkind = constant 0.3 4\n");
  CHECK(con.sequence->materialize() == std::vector<double>(4, 0.3));

  const Scenario lst =
      pgm::parse_scenario("[sequence]\nkind = list 0.5 0.25 0.125\n");
  CHECK(lst.sequence->materialize() == std::vector<double>{0.5, 0.25, 0.125});

  CHECK_THROWS_AS(pgm::parse_scenario("[sequence]\nkind = geometric 1 0.5 2\n"),
                  ScenarioError);
}

TEST_CASE("render and parse round-trip") {
  SUBCASE("canonical scenario") {
    const Scenario s = pgm::parse_scenario(kCanonicalText, true);
    const Scenario again = pgm::parse_scenario(pgm::render_scenario(s), true);
    CHECK(again == s);
  }

  SUBCASE("finite discrete scenario with explicit entries") {
    Scenario s;
    s.family = pgm::Family::dirac;
    s.universe_finite = true;
    s.points = {0.0, 1.0, 2.5};
    s.kernel.kind = pgm::KernelSpec::Kind::table_entries;
    s.kernel.entries = {{0, 0, 0, 0.0}, {0, 0, 1, 2.0}, {0, 0, 2, 5.0},
                        {0, 1, 1, 2.0}, {0, 1, 2, 7.0}, {0, 2, 2, 5.0},
                        {1, 1, 1, 0.0}, {1, 1, 2, 3.0}, {1, 2, 2, 3.0},
                        {2, 2, 2, 0.0}};
    s.maps.emplace("A", SelfMap::table({0, 0, 1}));
    s.maps.emplace("B", SelfMap::composite({SelfMap::table({0, 0, 1}),
                                            SelfMap::table({0, 1, 2})}));
    s.x0 = 2.5;
    s.grid.kind = pgm::GridSpec::Kind::list;
    s.grid.values = {0.5, 1.0, 8.0};
    s.sequence = pgm::SequenceSpec{pgm::SequenceSpec::Kind::list,
                                   0.0, 0.0, 0, {2.5, 1.0, 0.0, 0.0}};
    s.probe_starts = {0.0, 2.5};
    const Scenario again = pgm::parse_scenario(pgm::render_scenario(s), true);
    CHECK(again == s);
    CHECK_NOTHROW(pgm::build_space(again));
  }

  SUBCASE("awkward floating point values survive") {
    Scenario s;
    s.maps.emplace("A", SelfMap::affine(1.0 / 3.0, 1e-17));
    s.maps.emplace("B", SelfMap::poly({0.1, 0.2, 0.30000000000000004}));
    s.x0 = 0.1 + 0.2;
    s.eps = 5e-324;  // smallest denormal
    s.weakened_fifth = true;
    const Scenario again = pgm::parse_scenario(pgm::render_scenario(s), true);
    CHECK(again == s);
  }

  SUBCASE("the weakened contraction variant parses") {
    const Scenario s =
        pgm::parse_scenario("[run]\nweakened_fifth = true\n", true);
    CHECK(s.weakened_fifth);
    CHECK_THROWS_AS(pgm::parse_scenario("[run]\nweakened_fifth = maybe\n"),
                    ScenarioError);
  }
}

TEST_CASE("grid specifications") {
  const Scenario lst = pgm::parse_scenario("[run]\ngrid = list 0.5 1 2\n");
  CHECK(lst.grid.materialize() == std::vector<double>{0.5, 1.0, 2.0});
  CHECK_THROWS_AS(pgm::parse_scenario("[run]\ngrid = list 0 1\n"), ScenarioError);
  CHECK_THROWS_AS(pgm::parse_scenario("[run]\ngrid = pow2 4 2\n"), ScenarioError);
}
