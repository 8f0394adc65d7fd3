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

#include "pgm/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "pgm/trace.hpp"

namespace pgm {

namespace {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

double parse_double(const std::string& tok, std::size_t line, const std::string& field) {
  double v = 0.0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ScenarioError(line, field, "expected a number, got '" + tok + "'");
  }
  return v;
}

long long parse_int(const std::string& tok, std::size_t line, const std::string& field) {
  long long v = 0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ScenarioError(line, field, "expected an integer, got '" + tok + "'");
  }
  return v;
}

std::size_t parse_index(const std::string& tok, std::size_t line, const std::string& field) {
  const long long v = parse_int(tok, line, field);
  if (v < 0) throw ScenarioError(line, field, "index must be >= 0");
  return static_cast<std::size_t>(v);
}

SelfMap parse_map_tokens(const std::vector<std::string>& tokens, std::size_t begin,
                         std::size_t end, std::size_t line, const std::string& field);

SelfMap parse_map_spec(const std::vector<std::string>& tokens, std::size_t line,
                       const std::string& field) {
  return parse_map_tokens(tokens, 0, tokens.size(), line, field);
}

SelfMap parse_map_tokens(const std::vector<std::string>& tokens, std::size_t begin,
                         std::size_t end, std::size_t line, const std::string& field) {
  if (begin >= end) throw ScenarioError(line, field, "empty map spec");
  const std::string& kind = tokens[begin];
  if (kind == "affine") {
    if (end - begin != 3) {
      throw ScenarioError(line, field, "affine expects: affine <slope> <intercept>");
    }
    return SelfMap::affine(parse_double(tokens[begin + 1], line, field),
                           parse_double(tokens[begin + 2], line, field));
  }
  if (kind == "poly") {
    if (end - begin < 2) {
      throw ScenarioError(line, field, "poly expects coefficients in ascending powers");
    }
    std::vector<double> coeffs;
    for (std::size_t i = begin + 1; i < end; ++i) {
      coeffs.push_back(parse_double(tokens[i], line, field));
    }
    return SelfMap::poly(std::move(coeffs));
  }
  if (kind == "table") {
    if (end - begin < 2) {
      throw ScenarioError(line, field, "table expects image indices");
    }
    std::vector<std::size_t> images;
    for (std::size_t i = begin + 1; i < end; ++i) {
      images.push_back(parse_index(tokens[i], line, field));
    }
    try {
      return SelfMap::table(std::move(images));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(line, field, e.what());
    }
  }
  if (kind == "composite") {
    // Stages separated by ';' tokens.
    std::vector<SelfMap> stages;
    std::size_t stage_begin = begin + 1;
    for (std::size_t i = begin + 1; i <= end; ++i) {
      if (i == end || tokens[i] == ";") {
        if (i > stage_begin) {
          stages.push_back(parse_map_tokens(tokens, stage_begin, i, line, field));
        }
        stage_begin = i + 1;
      }
    }
    if (stages.empty()) {
      throw ScenarioError(line, field, "composite expects ';'-separated stages");
    }
    return SelfMap::composite(std::move(stages));
  }
  throw ScenarioError(line, field, "unknown map kind '" + kind + "'");
}

void render_map(std::ostringstream& out, const SelfMap& m) {
  switch (m.kind()) {
    case SelfMap::Kind::affine:
      out << "affine " << format_double(m.slope()) << ' '
          << format_double(m.intercept());
      break;
    case SelfMap::Kind::poly:
      out << "poly";
      for (double c : m.coefficients()) out << ' ' << format_double(c);
      break;
    case SelfMap::Kind::table:
      out << "table";
      for (std::size_t i : m.images()) out << ' ' << i;
      break;
    case SelfMap::Kind::composite: {
      out << "composite ";
      bool first = true;
      for (const auto& stage : m.stages()) {
        if (!first) out << " ; ";
        first = false;
        render_map(out, stage);
      }
      break;
    }
  }
}

constexpr const char* kMapKeys[] = {"A", "B", "C", "D", "S", "T"};

bool is_map_key(const std::string& key) {
  for (const char* k : kMapKeys) {
    if (key == k) return true;
  }
  return false;
}

} // namespace

ScenarioError::ScenarioError(std::size_t line_, std::string field_,
                             const std::string& message)
    : std::runtime_error(line_ == 0
                             ? (field_.empty() ? message : field_ + ": " + message)
                             : "line " + std::to_string(line_) + ", " + field_ +
                                   ": " + message),
      line(line_),
      field(std::move(field_)) {}

std::vector<double> GridSpec::materialize() const {
  if (kind == Kind::pow2) return pow2_grid(lo_exp, hi_exp);
  return values;
}

std::vector<double> SequenceSpec::materialize() const {
  std::vector<double> seq;
  switch (kind) {
    case Kind::geometric: {
      seq.reserve(length);
      double v = a;
      for (std::size_t n = 0; n < length; ++n) {
        seq.push_back(v);
        v *= b;
      }
      break;
    }
    case Kind::harmonic_shift:
      seq.reserve(length);
      for (std::size_t n = 1; n <= length; ++n) {
        seq.push_back(a + 1.0 / static_cast<double>(n));
      }
      break;
    case Kind::constant:
      seq.assign(length, a);
      break;
    case Kind::alternating:
      seq.reserve(length);
      for (std::size_t n = 0; n < length; ++n) {
        seq.push_back(n % 2 == 0 ? a : b);
      }
      break;
    case Kind::list:
      seq = values;
      break;
  }
  return seq;
}

Scenario parse_scenario(std::string_view text, bool strict,
                        std::vector<std::string>* warnings) {
  Scenario s;
  std::string section;
  std::set<std::string> seen_keys;
  bool universe_set = false;
  std::string g_mode;  // "", "perimeter", "entries", "raw"

  auto unknown = [&](std::size_t line, const std::string& what,
                     const std::string& detail) {
    if (strict) throw ScenarioError(line, what, "unknown " + detail);
    if (warnings) {
      warnings->push_back("line " + std::to_string(line) + ": unknown " +
                          detail + " '" + what + "'");
    }
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string line(raw);
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ScenarioError(line_no, "section", "missing closing ']'");
      }
      section = line.substr(1, line.size() - 2);
      if (section != "space" && section != "maps" && section != "run" &&
          section != "sequence" && section != "probe") {
        unknown(line_no, section, "section");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ScenarioError(line_no, "line", "expected 'key = value'");
    }
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    const std::string value_text = line.substr(eq + 1);
    const auto tokens = tokenize(value_text);
    if (tokens.empty()) {
      throw ScenarioError(line_no, key, "missing value");
    }

    const std::string scoped = section + "." + key;
    if (key != "entry" && key != "raw" && !seen_keys.insert(scoped).second) {
      throw ScenarioError(line_no, key, "duplicate key");
    }

    if (section == "space") {
      if (key == "family") {
        if (tokens[0] == "ratio") s.family = Family::ratio;
        else if (tokens[0] == "dirac") s.family = Family::dirac;
        else throw ScenarioError(line_no, key, "unknown family '" + tokens[0] + "'");
      } else if (key == "kernel") {
        if (tokens[0] == "perimeter") s.kernel.kind = KernelSpec::Kind::perimeter;
        else if (tokens[0] == "table") s.kernel.kind = KernelSpec::Kind::table_perimeter;
        else throw ScenarioError(line_no, key, "unknown kernel '" + tokens[0] + "'");
      } else if (key == "universe") {
        universe_set = true;
        if (tokens[0] == "interval") {
          if (tokens.size() != 3) {
            throw ScenarioError(line_no, key, "interval expects: interval <lo> <hi>");
          }
          s.universe_finite = false;
          s.lo = parse_double(tokens[1], line_no, key);
          s.hi = parse_double(tokens[2], line_no, key);
          if (!(s.lo < s.hi)) throw ScenarioError(line_no, key, "need lo < hi");
        } else if (tokens[0] == "finite") {
          if (tokens.size() < 2) {
            throw ScenarioError(line_no, key, "finite expects point values");
          }
          s.universe_finite = true;
          s.points.clear();
          for (std::size_t i = 1; i < tokens.size(); ++i) {
            s.points.push_back(parse_double(tokens[i], line_no, key));
          }
        } else {
          throw ScenarioError(line_no, key, "unknown universe kind '" + tokens[0] + "'");
        }
      } else if (key == "tnorm") {
        if (tokens[0] == "min") s.tnorm = TnormKind::min;
        else if (tokens[0] == "product") s.tnorm = TnormKind::product;
        else if (tokens[0] == "lukasiewicz") s.tnorm = TnormKind::lukasiewicz;
        else throw ScenarioError(line_no, key, "unknown t-norm '" + tokens[0] + "'");
      } else if (key == "g") {
        if (tokens[0] == "perimeter" || tokens[0] == "entries" || tokens[0] == "raw") {
          g_mode = tokens[0];
        } else {
          throw ScenarioError(line_no, key, "expected perimeter, entries or raw");
        }
      } else if (key == "entry" || key == "raw") {
        if (tokens.size() != 4) {
          throw ScenarioError(line_no, key, "expected: " + key + " = i j k value");
        }
        GKernel::Entry e{parse_index(tokens[0], line_no, key),
                         parse_index(tokens[1], line_no, key),
                         parse_index(tokens[2], line_no, key),
                         parse_double(tokens[3], line_no, key)};
        s.kernel.entries.push_back(e);
      } else {
        unknown(line_no, key, "key in [space]");
      }
    } else if (section == "maps") {
      if (!is_map_key(key)) {
        unknown(line_no, key, "map name (expected A, B, C, D, S or T)");
        continue;
      }
      s.maps.insert_or_assign(key, parse_map_spec(tokens, line_no, key));
    } else if (section == "run") {
      if (key == "x0") {
        s.x0 = parse_double(tokens[0], line_no, key);
      } else if (key == "k") {
        s.k = parse_double(tokens[0], line_no, key);
        if (!(s.k > 0.0 && s.k <= 0.5)) {
          throw ScenarioError(line_no, key, "k outside (0, 1/2]");
        }
      } else if (key == "eps") {
        s.eps = parse_double(tokens[0], line_no, key);
        if (!(s.eps > 0.0)) throw ScenarioError(line_no, key, "eps must be > 0");
      } else if (key == "delta") {
        s.delta = parse_double(tokens[0], line_no, key);
        if (!(s.delta > 0.0 && s.delta < 1.0)) {
          throw ScenarioError(line_no, key, "delta must lie in (0, 1)");
        }
      } else if (key == "n_max") {
        const long long v = parse_int(tokens[0], line_no, key);
        if (v < 1) throw ScenarioError(line_no, key, "n_max must be >= 1");
        s.n_max = static_cast<std::size_t>(v);
      } else if (key == "seed") {
        const long long v = parse_int(tokens[0], line_no, key);
        if (v < 0) throw ScenarioError(line_no, key, "seed must be >= 0");
        s.seed = static_cast<std::uint64_t>(v);
      } else if (key == "weakened_fifth") {
        if (tokens[0] == "true") s.weakened_fifth = true;
        else if (tokens[0] == "false") s.weakened_fifth = false;
        else throw ScenarioError(line_no, key, "expected true or false");
      } else if (key == "grid") {
        if (tokens[0] == "pow2") {
          if (tokens.size() != 3) {
            throw ScenarioError(line_no, key, "pow2 expects: pow2 <lo_exp> <hi_exp>");
          }
          s.grid.kind = GridSpec::Kind::pow2;
          s.grid.lo_exp = static_cast<int>(parse_int(tokens[1], line_no, key));
          s.grid.hi_exp = static_cast<int>(parse_int(tokens[2], line_no, key));
          if (s.grid.lo_exp > s.grid.hi_exp) {
            throw ScenarioError(line_no, key, "need lo_exp <= hi_exp");
          }
        } else if (tokens[0] == "list") {
          if (tokens.size() < 2) {
            throw ScenarioError(line_no, key, "list expects grid values");
          }
          s.grid.kind = GridSpec::Kind::list;
          s.grid.values.clear();
          for (std::size_t i = 1; i < tokens.size(); ++i) {
            const double t = parse_double(tokens[i], line_no, key);
            if (!(t > 0.0)) throw ScenarioError(line_no, key, "grid values must be > 0");
            s.grid.values.push_back(t);
          }
        } else {
          throw ScenarioError(line_no, key, "unknown grid kind '" + tokens[0] + "'");
        }
      } else {
        unknown(line_no, key, "key in [run]");
      }
    } else if (section == "sequence") {
      if (key == "kind") {
        const std::string& kind = tokens[0];
        SequenceSpec spec;
        auto need = [&](std::size_t count) {
          if (tokens.size() != count) {
            throw ScenarioError(line_no, key, "wrong number of arguments for '" + kind + "'");
          }
        };
        if (kind == "geometric") {
          need(4);
          spec.kind = SequenceSpec::Kind::geometric;
          spec.a = parse_double(tokens[1], line_no, key);
          spec.b = parse_double(tokens[2], line_no, key);
          spec.length = parse_index(tokens[3], line_no, key);
        } else if (kind == "harmonic_shift") {
          need(3);
          spec.kind = SequenceSpec::Kind::harmonic_shift;
          spec.a = parse_double(tokens[1], line_no, key);
          spec.length = parse_index(tokens[2], line_no, key);
        } else if (kind == "constant") {
          need(3);
          spec.kind = SequenceSpec::Kind::constant;
          spec.a = parse_double(tokens[1], line_no, key);
          spec.length = parse_index(tokens[2], line_no, key);
        } else if (kind == "alternating") {
          need(4);
          spec.kind = SequenceSpec::Kind::alternating;
          spec.a = parse_double(tokens[1], line_no, key);
          spec.b = parse_double(tokens[2], line_no, key);
          spec.length = parse_index(tokens[3], line_no, key);
        } else if (kind == "list") {
          if (tokens.size() < 2) {
            throw ScenarioError(line_no, key, "list expects values");
          }
          spec.kind = SequenceSpec::Kind::list;
          for (std::size_t i = 1; i < tokens.size(); ++i) {
            spec.values.push_back(parse_double(tokens[i], line_no, key));
          }
        } else {
          throw ScenarioError(line_no, key, "unknown sequence kind '" + kind + "'");
        }
        if (spec.kind != SequenceSpec::Kind::list && spec.length < 4) {
          throw ScenarioError(line_no, key, "sequence length must be >= 4");
        }
        s.sequence = std::move(spec);
      } else {
        unknown(line_no, key, "key in [sequence]");
      }
    } else if (section == "probe") {
      if (key == "seeds") {
        s.probe_starts.clear();
        for (const auto& tok : tokens) {
          s.probe_starts.push_back(parse_double(tok, line_no, key));
        }
      } else {
        unknown(line_no, key, "key in [probe]");
      }
    } else if (section.empty()) {
      throw ScenarioError(line_no, key, "key outside any section");
    } else {
      // Unknown section already reported; skip its keys in lax mode.
      if (strict) unknown(line_no, key, "key");
    }
  }

  // Cross-field validation.
  if (!s.kernel.entries.empty()) {
    if (s.kernel.kind != KernelSpec::Kind::table_perimeter) {
      throw ScenarioError(0, "entry", "kernel entries require kernel = table");
    }
    if (g_mode != "entries" && g_mode != "raw") {
      throw ScenarioError(0, "entry", "entry/raw lines require g = entries or g = raw");
    }
  }
  if (g_mode == "entries") s.kernel.kind = KernelSpec::Kind::table_entries;
  if (g_mode == "raw") s.kernel.kind = KernelSpec::Kind::table_raw;
  if ((s.kernel.kind == KernelSpec::Kind::table_entries ||
       s.kernel.kind == KernelSpec::Kind::table_raw) &&
      s.kernel.entries.empty()) {
    throw ScenarioError(0, "g", "g = " + g_mode + " requires entry/raw lines");
  }
  if (s.kernel.kind != KernelSpec::Kind::perimeter && !s.universe_finite) {
    throw ScenarioError(0, "kernel", "table kernels require a finite universe");
  }
  if (s.universe_finite) {
    for (const auto& [name, map] : s.maps) {
      if (map.kind() == SelfMap::Kind::table &&
          map.images().size() != s.points.size()) {
        throw ScenarioError(0, name, "table map size must match the finite universe");
      }
    }
  } else {
    for (const auto& [name, map] : s.maps) {
      if (map.kind() == SelfMap::Kind::table) {
        throw ScenarioError(0, name, "table maps require a finite universe");
      }
    }
  }
  std::stable_sort(s.kernel.entries.begin(), s.kernel.entries.end(),
                   [](const GKernel::Entry& l, const GKernel::Entry& r) {
                     return std::tie(l.i, l.j, l.k) < std::tie(r.i, r.j, r.k);
                   });
  (void)universe_set;
  return s;
}

std::string render_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "[space]\n";
  out << "family = " << (s.family == Family::ratio ? "ratio" : "dirac") << '\n';
  out << "kernel = "
      << (s.kernel.kind == KernelSpec::Kind::perimeter ? "perimeter" : "table")
      << '\n';
  if (s.universe_finite) {
    out << "universe = finite";
    for (double p : s.points) out << ' ' << format_double(p);
    out << '\n';
  } else {
    out << "universe = interval " << format_double(s.lo) << ' '
        << format_double(s.hi) << '\n';
  }
  out << "tnorm = " << Tnorm(s.tnorm).name() << '\n';
  switch (s.kernel.kind) {
    case KernelSpec::Kind::perimeter:
      break;
    case KernelSpec::Kind::table_perimeter:
      out << "g = perimeter\n";
      break;
    case KernelSpec::Kind::table_entries:
    case KernelSpec::Kind::table_raw: {
      const bool raw = s.kernel.kind == KernelSpec::Kind::table_raw;
      out << "g = " << (raw ? "raw" : "entries") << '\n';
      for (const auto& e : s.kernel.entries) {
        out << (raw ? "raw" : "entry") << " = " << e.i << ' ' << e.j << ' '
            << e.k << ' ' << format_double(e.value) << '\n';
      }
      break;
    }
  }

  if (!s.maps.empty()) {
    out << "\n[maps]\n";
    for (const char* name : kMapKeys) {
      auto it = s.maps.find(name);
      if (it == s.maps.end()) continue;
      out << name << " = ";
      render_map(out, it->second);
      out << '\n';
    }
  }

  out << "\n[run]\n";
  if (s.x0) out << "x0 = " << format_double(*s.x0) << '\n';
  out << "k = " << format_double(s.k) << '\n';
  out << "eps = " << format_double(s.eps) << '\n';
  out << "delta = " << format_double(s.delta) << '\n';
  out << "n_max = " << s.n_max << '\n';
  out << "seed = " << s.seed << '\n';
  out << "weakened_fifth = " << (s.weakened_fifth ? "true" : "false") << '\n';
  if (s.grid.kind == GridSpec::Kind::pow2) {
    out << "grid = pow2 " << s.grid.lo_exp << ' ' << s.grid.hi_exp << '\n';
  } else {
    out << "grid = list";
    for (double t : s.grid.values) out << ' ' << format_double(t);
    out << '\n';
  }

  if (s.sequence) {
    out << "\n[sequence]\nkind = ";
    const auto& q = *s.sequence;
    switch (q.kind) {
      case SequenceSpec::Kind::geometric:
        out << "geometric " << format_double(q.a) << ' ' << format_double(q.b)
            << ' ' << q.length;
        break;
      case SequenceSpec::Kind::harmonic_shift:
        out << "harmonic_shift " << format_double(q.a) << ' ' << q.length;
        break;
      case SequenceSpec::Kind::constant:
        out << "constant " << format_double(q.a) << ' ' << q.length;
        break;
      case SequenceSpec::Kind::alternating:
        out << "alternating " << format_double(q.a) << ' ' << format_double(q.b)
            << ' ' << q.length;
        break;
      case SequenceSpec::Kind::list:
        out << "list";
        for (double v : q.values) out << ' ' << format_double(v);
        break;
    }
    out << '\n';
  }

  if (!s.probe_starts.empty()) {
    out << "\n[probe]\nseeds =";
    for (double p : s.probe_starts) out << ' ' << format_double(p);
    out << '\n';
  }
  return out.str();
}

Universe build_universe(const Scenario& s) {
  if (s.universe_finite) return Universe::finite(s.points);
  return Universe::interval(s.lo, s.hi);
}

PgmSpace build_space(const Scenario& s) {
  Universe u = build_universe(s);
  GKernel kernel = GKernel::perimeter();
  switch (s.kernel.kind) {
    case KernelSpec::Kind::perimeter:
      break;
    case KernelSpec::Kind::table_perimeter:
      kernel = GKernel::table_from_values(u.points());
      break;
    case KernelSpec::Kind::table_entries:
      try {
        kernel = GKernel::table_from_entries(u.size(), s.kernel.entries);
      } catch (const std::invalid_argument& e) {
        throw ScenarioError(0, "entry", e.what());
      }
      break;
    case KernelSpec::Kind::table_raw: {
      const std::size_t n = u.size();
      std::vector<double> values(n * n * n, -1.0);
      for (const auto& e : s.kernel.entries) {
        if (e.i >= n || e.j >= n || e.k >= n) {
          throw ScenarioError(0, "raw", "index out of range");
        }
        values[(e.i * n + e.j) * n + e.k] = e.value;
      }
      for (double v : values) {
        if (v < 0.0) {
          throw ScenarioError(0, "raw", "raw kernels require all n^3 entries");
        }
      }
      kernel = GKernel::table_raw(n, std::move(values));
      break;
    }
  }
  return PgmSpace(std::move(u), std::move(kernel), s.family, Tnorm(s.tnorm));
}

Sextuple build_sextuple(const Scenario& s) {
  std::string missing;
  for (const char* name : kMapKeys) {
    if (!s.maps.contains(name)) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  }
  if (!missing.empty()) {
    throw ScenarioError(0, "maps", "missing map(s): " + missing);
  }
  return Sextuple{s.maps.at("A"), s.maps.at("B"), s.maps.at("C"),
                  s.maps.at("D"), s.maps.at("S"), s.maps.at("T")};
}

} // namespace pgm
