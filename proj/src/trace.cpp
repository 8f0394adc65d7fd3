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

#include "pgm/trace.hpp"

#include <cstdio>

namespace pgm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace(std::ostream& out, const PgmSpace& space,
                 const IterationState& state, std::span<const double> grid) {
  out << "step,x,y";
  for (double t : grid) {
    out << ",G@" << format_double(t);
  }
  out << ",chain_violations\n";

  const auto& x = state.x_seq;
  const auto& y = state.y_seq;
  if (y.size() < 3) return;

  std::size_t violations = 0;
  for (std::size_t n = 0; n + 2 < y.size(); ++n) {
    out << n << ',' << format_double(n < x.size() ? x[n] : y[n]) << ','
        << format_double(y[n]);
    for (double t : grid) {
      out << ',' << format_double(space.g_value(y[n], y[n + 1], y[n + 2], t));
    }
    if (n + 3 < y.size()) {
      for (double t : grid) {
        const double lhs = space.g_value(y[n + 1], y[n + 2], y[n + 3], t);
        const double rhs = space.g_value(y[n], y[n + 1], y[n + 2], t / state.k);
        if (lhs < rhs - kValueTol) {
          ++violations;
          break;
        }
      }
    }
    out << ',' << violations << '\n';
  }
}

} // namespace pgm
