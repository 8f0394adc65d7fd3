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
#include <span>
#include <vector>

namespace pgm {

/// Tolerance for equality comparisons of distribution-function values.
inline constexpr double kValueTol = 1e-9;

/// Distribution function on the extended real line with values in [0, 1].
///
/// Three representations:
///  - step(a):  0 on [-inf, a], 1 on (a, inf]         (crisp distance a)
///  - ratio(c): t/(t+c) for t > 0, 0 for t <= 0       (c = 0 gives the unit step at 0)
///  - table:    left-continuous step function; a breakpoint (t, v) means the
///    function takes value v for arguments strictly greater than t, so the
///    jump lands after the breakpoint and left-continuity holds.
///
/// All values are immutable after construction and safe to share across
/// threads.
class Ddf {
public:
  enum class Kind { step, ratio, table };

  struct Breakpoint {
    double t = 0.0;
    double v = 0.0;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
  };

  /// Step function jumping just after a; requires a >= 0 finite.
  static Ddf step(double a);

  /// Step at +infinity: 0 everywhere on [-inf, inf), 1 only at +inf.
  /// Constructible for completeness of the step family, but rejected by
  /// is_distance().
  static Ddf step_at_infinity();

  /// t -> t/(t+c) for t > 0; requires c >= 0 finite.
  static Ddf ratio(double c);

  /// Breakpoints must have nonnegative, strictly increasing t and
  /// nondecreasing v in [0, 1].
  static Ddf table(std::vector<Breakpoint> breakpoints);

  /// Total on the extended reals (use +-infinity directly).
  /// Value at +inf is 1 for every kind except the step at infinity.
  double eval(double t) const noexcept;

  Kind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }
  const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }

  /// True when the function qualifies as a distance distribution function
  /// (F(0) = 0 and F(t) -> 1); the step at infinity fails.
  bool is_distance() const noexcept;

  friend bool operator==(const Ddf&, const Ddf&) = default;

private:
  Ddf() = default;
  Kind kind_ = Kind::step;
  double param_ = 0.0;
  std::vector<Breakpoint> breakpoints_;
};

/// Spacing grid {2^k : k = lo_exp..hi_exp}; the default query grid is
/// pow2_grid(-10, 10).
std::vector<double> pow2_grid(int lo_exp, int hi_exp);

/// Max over the grid of |f(t) - g(t)|. Throws on an empty grid.
double sup_distance(const Ddf& f, const Ddf& g, std::span<const double> grid);

/// True iff family[n](t) > 1 - delta for every grid t and every index
/// n > tail_start present in the family. Throws if delta is outside (0, 1).
bool converges_to_h0(std::span<const Ddf> family, std::span<const double> grid,
                     double delta, std::size_t tail_start);

/// Max over grid and indices n > tail_start of 1 - family[n](t); the
/// quantity converges_to_h0 compares against delta.
double h0_residual(std::span<const Ddf> family, std::span<const double> grid,
                   std::size_t tail_start);

/// Start index of the last `fraction` of a sequence of given length
/// (entries strictly after the returned index form the tail window).
std::size_t tail_start_index(std::size_t length, double fraction = 0.25);

} // namespace pgm
