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

#include "pgm/tnorm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "pgm/ddf.hpp"
#include "pgm/rng.hpp"

namespace pgm {

namespace {

constexpr std::array<double, 5> kLattice = {0.0, 0.25, 0.5, 0.75, 1.0};

void require_unit(double v, const char* arg) {
  if (std::isnan(v) || v < -1e-12 || v > 1.0 + 1e-12) {
    throw std::domain_error(std::string("Tnorm::apply: ") + arg +
                            " outside [0, 1]");
  }
}

} // namespace

double Tnorm::apply(double x, double y) const {
  require_unit(x, "x");
  require_unit(y, "y");
  x = std::clamp(x, 0.0, 1.0);
  y = std::clamp(y, 0.0, 1.0);
  switch (kind_) {
    case TnormKind::min:
      return std::min(x, y);
    case TnormKind::product:
      return x * y;
    case TnormKind::lukasiewicz:
      return std::max(0.0, x + y - 1.0);
  }
  return 0.0;
}

std::string_view Tnorm::name() const noexcept {
  switch (kind_) {
    case TnormKind::min: return "min";
    case TnormKind::product: return "product";
    case TnormKind::lukasiewicz: return "lukasiewicz";
  }
  return "?";
}

std::vector<TnormViolation> check_axioms(const BinaryOp& op,
                                         std::size_t samples,
                                         std::uint64_t seed) {
  if (samples < 1) {
    throw std::invalid_argument("check_axioms: need at least one sample");
  }
  std::vector<TnormViolation> out;
  const std::size_t lattice_triples =
      kLattice.size() * kLattice.size() * kLattice.size();

  auto check_one = [&](std::size_t idx, double x, double y, double z) {
    const double xy = op(x, y);
    const double yx = op(y, x);
    if (std::abs(xy - yx) > kValueTol) {
      out.push_back({TnormAxiom::commutativity, idx, x, y, z, xy, yx});
    }
    const double assoc_l = op(x, op(y, z));
    const double assoc_r = op(op(x, y), z);
    if (std::abs(assoc_l - assoc_r) > kValueTol) {
      out.push_back({TnormAxiom::associativity, idx, x, y, z, assoc_l, assoc_r});
    }
    const double y_lo = std::min(y, z);
    const double y_hi = std::max(y, z);
    const double mono_l = op(x, y_lo);
    const double mono_r = op(x, y_hi);
    if (mono_l > mono_r + kValueTol) {
      out.push_back({TnormAxiom::monotonicity, idx, x, y_lo, y_hi, mono_l, mono_r});
    }
    const double ident = op(x, 1.0);
    if (std::abs(ident - x) > kValueTol) {
      out.push_back({TnormAxiom::identity, idx, x, 1.0, 0.0, ident, x});
    }
  };

  for (std::size_t i = 0; i < samples; ++i) {
    double x, y, z;
    if (i < lattice_triples) {
      x = kLattice[i % kLattice.size()];
      y = kLattice[(i / kLattice.size()) % kLattice.size()];
      z = kLattice[i / (kLattice.size() * kLattice.size())];
    } else {
      x = draw_unit(seed, i, 0);
      y = draw_unit(seed, i, 1);
      z = draw_unit(seed, i, 2);
    }
    check_one(i, x, y, z);
  }
  return out;
}

std::vector<TnormViolation> check_axioms(const Tnorm& op, std::size_t samples,
                                         std::uint64_t seed) {
  return check_axioms([&op](double x, double y) { return op.apply(x, y); },
                      samples, seed);
}

std::optional<double> idempotency_witness(const BinaryOp& op,
                                          std::size_t samples,
                                          std::uint64_t seed) {
  if (samples < 1) {
    throw std::invalid_argument("idempotency_witness: need at least one sample");
  }
  // Endpoints and midpoint first, so a failing witness is seed-independent.
  constexpr std::array<double, 5> probes = {0.0, 1.0, 0.5, 0.25, 0.75};
  for (double a : probes) {
    if (op(a, a) < a - kValueTol) return a;
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const double a = draw_unit(seed, i, 7);
    if (op(a, a) < a - kValueTol) return a;
  }
  return std::nullopt;
}

bool is_idempotent(const BinaryOp& op, std::size_t samples,
                   std::uint64_t seed) {
  return !idempotency_witness(op, samples, seed).has_value();
}

bool is_idempotent(const Tnorm& op, std::size_t samples, std::uint64_t seed) {
  return is_idempotent([&op](double x, double y) { return op.apply(x, y); },
                       samples, seed);
}

} // namespace pgm
