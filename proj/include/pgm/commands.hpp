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

#include <optional>
#include <ostream>
#include <string>

#include "pgm/scenario.hpp"

namespace pgm {

/// Exit codes shared by all commands: 0 pass/converged, 1 violations or
/// divergence, 2 scenario errors.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitScenarioError = 2;

struct CommandOptions {
  std::optional<std::string> out_path;          // machine-readable report
  std::optional<std::uint64_t> seed_override;
  std::optional<GridSpec> grid_override;
  std::optional<std::size_t> max_iter_override;
  bool strict = false;
};

/// Space axiom verification; JSON report when out_path is set.
int cmd_check_axioms(const Scenario& scenario, const CommandOptions& options,
                     std::ostream& out, std::ostream& err);

/// Compatibility of [A, B, C] (C defaults to B, the pair case) along the
/// scenario sequence; JSON report.
int cmd_compat(const Scenario& scenario, const CommandOptions& options,
               std::ostream& out, std::ostream& err);

/// Six-map iteration; CSV trace written to out_path.
int cmd_fixpoint(const Scenario& scenario, const CommandOptions& options,
                 std::ostream& out, std::ostream& err);

/// Builds the iteration and checks the chain inequalities plus the
/// contraction bound; JSON report.
int cmd_monitor(const Scenario& scenario, const CommandOptions& options,
                std::ostream& out, std::ostream& err);

/// Parses the grid override syntax used by the --grid flag: either
/// "pow2 <lo> <hi>" or "list <v>..." with ' ', ':' or ',' separators.
GridSpec parse_grid_flag(const std::string& text);

} // namespace pgm
