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

#include <ostream>
#include <span>
#include <string>

#include "pgm/fixpoint.hpp"
#include "pgm/space.hpp"

namespace pgm {

/// Shortest round-trip decimal rendering of a double; byte-stable across
/// runs, locale-independent.
std::string format_double(double v);

/// CSV trace of a built iteration: one row per step n with x_n, y_n, the
/// values G_{y_n, y_{n+1}, y_{n+2}}(t) at each grid t, and the cumulative
/// count of step-to-step chain violations (proof_chain_monitor inequality
/// (a)) observed up to that row. Rows run while the consecutive triple
/// exists. Identical inputs produce byte-identical output.
void write_trace(std::ostream& out, const PgmSpace& space,
                 const IterationState& state, std::span<const double> grid);

} // namespace pgm
