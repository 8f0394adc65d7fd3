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

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pgm/fixpoint.hpp"
#include "pgm/space.hpp"

namespace pgm {

/// Scenario documents are flat key = value text grouped into [sections];
/// see the repository README for the complete grammar.

struct GridSpec {
  enum class Kind { pow2, list };
  Kind kind = Kind::pow2;
  int lo_exp = -10;
  int hi_exp = 10;
  std::vector<double> values;  // list kind

  std::vector<double> materialize() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct SequenceSpec {
  enum class Kind { geometric, harmonic_shift, constant, alternating, list };
  Kind kind = Kind::geometric;
  double a = 0.0;
  double b = 0.0;
  std::size_t length = 0;
  std::vector<double> values;  // list kind

  std::vector<double> materialize() const;
  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

struct KernelSpec {
  enum class Kind {
    perimeter,        // formula kernel
    table_perimeter,  // perimeter of the point values materialized as a table
    table_entries,    // symmetric entries, one per index multiset
    table_raw,        // explicit ordered-triple entries (all n^3 required)
  };
  Kind kind = Kind::perimeter;
  std::vector<GKernel::Entry> entries;

  friend bool operator==(const KernelSpec& l, const KernelSpec& r) {
    if (l.kind != r.kind || l.entries.size() != r.entries.size()) return false;
    for (std::size_t i = 0; i < l.entries.size(); ++i) {
      if (l.entries[i].i != r.entries[i].i || l.entries[i].j != r.entries[i].j ||
          l.entries[i].k != r.entries[i].k ||
          l.entries[i].value != r.entries[i].value) {
        return false;
      }
    }
    return true;
  }
};

struct Scenario {
  Family family = Family::ratio;
  KernelSpec kernel;
  bool universe_finite = false;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> points;
  TnormKind tnorm = TnormKind::min;

  std::map<std::string, SelfMap> maps;  // keys among A, B, C, D, S, T

  std::optional<double> x0;
  double k = 0.5;
  double eps = 1e-6;
  double delta = 1e-3;
  std::size_t n_max = 200;
  std::uint64_t seed = 0;
  GridSpec grid;
  /// Evaluate the fifth contraction factor at t instead of 2t; a strictly
  /// weaker demand (distribution values are nondecreasing in t), kept for
  /// cross-checking.
  bool weakened_fifth = false;

  std::optional<SequenceSpec> sequence;
  std::vector<double> probe_starts;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioError : std::runtime_error {
  ScenarioError(std::size_t line_, std::string field_, const std::string& message);
  std::size_t line;   // 1-based; 0 when not tied to a line
  std::string field;
};

/// Parses and validates a scenario document. Unknown sections or keys are
/// errors in strict mode and reported into `warnings` otherwise. Entry
/// lists are canonicalized (sorted by indices) so that parse/render
/// round-trips compare equal.
Scenario parse_scenario(std::string_view text, bool strict = false,
                        std::vector<std::string>* warnings = nullptr);

std::string render_scenario(const Scenario& s);

/// Instantiates the space described by the scenario.
PgmSpace build_space(const Scenario& s);
Universe build_universe(const Scenario& s);

/// Collects maps A..T into a Sextuple; throws ScenarioError listing any
/// missing names.
Sextuple build_sextuple(const Scenario& s);

} // namespace pgm
