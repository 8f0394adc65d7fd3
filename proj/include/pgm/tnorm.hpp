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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace pgm {

enum class TnormKind { min, product, lukasiewicz };

/// Binary aggregation operator on [0, 1]: commutative, associative, monotone
/// in each argument, with identity 1.
class Tnorm {
public:
  explicit Tnorm(TnormKind kind) : kind_(kind) {}

  /// Throws std::domain_error when an argument is outside [0, 1].
  double apply(double x, double y) const;

  TnormKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept;

  friend bool operator==(const Tnorm&, const Tnorm&) = default;

private:
  TnormKind kind_;
};

enum class TnormAxiom : int {
  commutativity = 1,
  associativity = 2,
  monotonicity = 3,
  identity = 4,
};

struct TnormViolation {
  TnormAxiom axiom;
  std::size_t sample;
  double x, y, z;
  double lhs, rhs;
};

using BinaryOp = std::function<double(double, double)>;

/// Samples triples from [0,1]^3 (a fixed lattice over {0, .25, .5, .75, 1}
/// first, then seeded draws) and records every axiom failure beyond
/// kValueTol. Empty result means no counterexample was found.
std::vector<TnormViolation> check_axioms(const BinaryOp& op,
                                         std::size_t samples,
                                         std::uint64_t seed);
std::vector<TnormViolation> check_axioms(const Tnorm& op, std::size_t samples,
                                         std::uint64_t seed);

/// First sampled a with op(a,a) < a - kValueTol, probing {0, 1, 0.5, 0.25,
/// 0.75} before seeded draws; empty when a*a >= a held throughout.
std::optional<double> idempotency_witness(const BinaryOp& op,
                                          std::size_t samples,
                                          std::uint64_t seed);

bool is_idempotent(const BinaryOp& op, std::size_t samples, std::uint64_t seed);
bool is_idempotent(const Tnorm& op, std::size_t samples, std::uint64_t seed);

} // namespace pgm
