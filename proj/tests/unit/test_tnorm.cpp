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

#include "pgm/tnorm.hpp"
#include "test_util.hpp"

using pgm::Tnorm;
using pgm::TnormKind;

namespace {
const Tnorm kMin{TnormKind::min};
const Tnorm kProduct{TnormKind::product};
const Tnorm kLukasiewicz{TnormKind::lukasiewicz};
}

TEST_CASE("apply on the three built-ins") {
  CHECK(kMin.apply(0.3, 0.7) == 0.3);
  CHECK(kProduct.apply(0.5, 0.5) == 0.25);
  CHECK(kLukasiewicz.apply(0.5, 0.5) == 0.0);
  CHECK(kLukasiewicz.apply(0.8, 0.7) == doctest::Approx(0.5));
  CHECK_THROWS_AS(kMin.apply(1.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(kMin.apply(0.5, -0.2), std::domain_error);
}

TEST_CASE("1 is the identity for every built-in") {
  for (const Tnorm& op : {kMin, kProduct, kLukasiewicz}) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      const double x = pgmtest::unit(3, i, 0);
      CHECK(op.apply(x, 1.0) == doctest::Approx(x).epsilon(1e-12));
    }
  }
}

TEST_CASE("axiom scan finds nothing wrong with the built-ins") {
  for (const Tnorm& op : {kMin, kProduct, kLukasiewicz}) {
    CHECK(pgm::check_axioms(op, 1000, 42).empty());
  }
}

TEST_CASE("axiom scan catches a non-commutative operator") {
  const auto broken = [](double x, double) { return x; };
  const auto violations = pgm::check_axioms(broken, 1000, 42);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations.front().axiom == pgm::TnormAxiom::commutativity);
  CHECK(violations.front().x != violations.front().y);
}

TEST_CASE("axiom scan catches a non-monotone operator") {
  const auto broken = [](double x, double y) {
    return std::max(0.0, std::min(1.0, x * (1.0 - y)));
  };
  const auto violations = pgm::check_axioms(broken, 1000, 42);
  REQUIRE_FALSE(violations.empty());
  bool has_monotonicity = false;
  for (const auto& v : violations) {
    if (v.axiom == pgm::TnormAxiom::monotonicity) has_monotonicity = true;
  }
  CHECK(has_monotonicity);
}

TEST_CASE("idempotency: min only, witness at one half") {
  CHECK(pgm::is_idempotent(kMin, 1000, 42));
  CHECK_FALSE(pgm::is_idempotent(kProduct, 1000, 42));
  CHECK_FALSE(pgm::is_idempotent(kLukasiewicz, 1000, 42));

  const auto prod_witness = pgm::idempotency_witness(
      [](double x, double y) { return kProduct.apply(x, y); }, 1000, 42);
  REQUIRE(prod_witness.has_value());
  CHECK(*prod_witness == 0.5);
  const auto luk_witness = pgm::idempotency_witness(
      [](double x, double y) { return kLukasiewicz.apply(x, y); }, 1000, 42);
  REQUIRE(luk_witness.has_value());
  CHECK(*luk_witness == 0.5);
}

TEST_CASE("a*a never exceeds a, and idempotency forces equality") {
  for (const Tnorm& op : {kMin, kProduct, kLukasiewicz}) {
    const bool idem = pgm::is_idempotent(op, 500, 11);
    for (std::uint64_t i = 0; i < 500; ++i) {
      const double a = pgmtest::unit(11, i, 7);
      const double aa = op.apply(a, a);
      CHECK(aa <= a + 1e-15);
      if (idem) CHECK(aa == doctest::Approx(a).epsilon(1e-12));
    }
  }
}

TEST_CASE("min dominates every built-in") {
  for (const Tnorm& op : {kMin, kProduct, kLukasiewicz}) {
    for (std::uint64_t i = 0; i < 500; ++i) {
      const double x = pgmtest::unit(13, i, 0);
      const double y = pgmtest::unit(13, i, 1);
      CHECK(op.apply(x, y) <= std::min(x, y) + 1e-15);
    }
  }
}
