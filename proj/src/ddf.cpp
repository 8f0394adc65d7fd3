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

#include "pgm/ddf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pgm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Ddf Ddf::step(double a) {
  if (!(a >= 0.0) || std::isinf(a) || std::isnan(a)) {
    throw std::invalid_argument("Ddf::step: offset must be finite and >= 0");
  }
  Ddf f;
  f.kind_ = Kind::step;
  f.param_ = a;
  return f;
}

Ddf Ddf::step_at_infinity() {
  Ddf f;
  f.kind_ = Kind::step;
  f.param_ = kInf;
  return f;
}

Ddf Ddf::ratio(double c) {
  if (!(c >= 0.0) || std::isinf(c) || std::isnan(c)) {
    throw std::invalid_argument("Ddf::ratio: scale must be finite and >= 0");
  }
  Ddf f;
  f.kind_ = Kind::ratio;
  f.param_ = c;
  return f;
}

Ddf Ddf::table(std::vector<Breakpoint> breakpoints) {
  double prev_t = -1.0;
  double prev_v = 0.0;
  for (const auto& bp : breakpoints) {
    if (!(bp.t >= 0.0) || std::isinf(bp.t) || std::isnan(bp.t)) {
      throw std::invalid_argument("Ddf::table: breakpoint abscissa must be finite and >= 0");
    }
    if (bp.t <= prev_t) {
      throw std::invalid_argument("Ddf::table: breakpoints must be strictly increasing");
    }
    if (!(bp.v >= 0.0 && bp.v <= 1.0)) {
      throw std::invalid_argument("Ddf::table: values must lie in [0, 1]");
    }
    if (bp.v < prev_v) {
      throw std::invalid_argument("Ddf::table: values must be nondecreasing");
    }
    prev_t = bp.t;
    prev_v = bp.v;
  }
  Ddf f;
  f.kind_ = Kind::table;
  f.breakpoints_ = std::move(breakpoints);
  return f;
}

double Ddf::eval(double t) const noexcept {
  switch (kind_) {
    case Kind::step:
      if (std::isinf(param_)) {
        return t == kInf ? 1.0 : 0.0;
      }
      return t > param_ ? 1.0 : 0.0;
    case Kind::ratio:
      if (t <= 0.0) return 0.0;
      if (t == kInf) return 1.0;
      return t / (t + param_);
    case Kind::table: {
      if (t == kInf) return 1.0;  // value at +inf pinned to 1
      // Value of the greatest breakpoint strictly below t; the value set at
      // a breakpoint applies only past it.
      auto it = std::lower_bound(
          breakpoints_.begin(), breakpoints_.end(), t,
          [](const Breakpoint& bp, double query) { return bp.t < query; });
      if (it == breakpoints_.begin()) return 0.0;
      return std::prev(it)->v;
    }
  }
  return 0.0;
}

bool Ddf::is_distance() const noexcept {
  if (kind_ == Kind::step && std::isinf(param_)) return false;
  return true;
}

std::vector<double> pow2_grid(int lo_exp, int hi_exp) {
  if (lo_exp > hi_exp) {
    throw std::invalid_argument("pow2_grid: empty exponent range");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(hi_exp - lo_exp + 1));
  for (int k = lo_exp; k <= hi_exp; ++k) {
    grid.push_back(std::ldexp(1.0, k));
  }
  return grid;
}

double sup_distance(const Ddf& f, const Ddf& g, std::span<const double> grid) {
  if (grid.empty()) {
    throw std::invalid_argument("sup_distance: grid must be nonempty");
  }
  double sup = 0.0;
  for (double t : grid) {
    sup = std::max(sup, std::abs(f.eval(t) - g.eval(t)));
  }
  return sup;
}

bool converges_to_h0(std::span<const Ddf> family, std::span<const double> grid,
                     double delta, std::size_t tail_start) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("converges_to_h0: delta must lie in (0, 1)");
  }
  for (std::size_t n = tail_start + 1; n < family.size(); ++n) {
    for (double t : grid) {
      if (!(family[n].eval(t) > 1.0 - delta)) return false;
    }
  }
  return true;
}

double h0_residual(std::span<const Ddf> family, std::span<const double> grid,
                   std::size_t tail_start) {
  double worst = 0.0;
  for (std::size_t n = tail_start + 1; n < family.size(); ++n) {
    for (double t : grid) {
      worst = std::max(worst, 1.0 - family[n].eval(t));
    }
  }
  return worst;
}

std::size_t tail_start_index(std::size_t length, double fraction) {
  if (length == 0) return 0;
  auto window = static_cast<std::size_t>(
      std::ceil(static_cast<double>(length) * fraction));
  window = std::clamp<std::size_t>(window, 1, length);
  return length - window - (window == length ? 0 : 1);
}

} // namespace pgm
