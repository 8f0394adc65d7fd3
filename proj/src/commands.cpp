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

#include "pgm/commands.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "pgm/analysis.hpp"
#include "pgm/trace.hpp"

namespace pgm {

namespace {

using nlohmann::json;

struct Prepared {
  Scenario scenario;
  std::vector<double> grid;
};

Prepared prepare(const Scenario& input, const CommandOptions& options) {
  Prepared p{input, {}};
  if (options.seed_override) p.scenario.seed = *options.seed_override;
  if (options.grid_override) p.scenario.grid = *options.grid_override;
  if (options.max_iter_override) p.scenario.n_max = *options.max_iter_override;
  p.grid = p.scenario.grid.materialize();
  return p;
}

void write_report_file(const std::string& path, const json& report,
                       std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "warning: cannot open report path '" << path << "'\n";
    return;
  }
  f << report.dump(2) << '\n';
}

json witness_json(const SpaceAxiomViolation& w) {
  return json{{"axiom", w.axiom},   {"level", w.crisp ? "crisp" : "sampled"},
              {"sample", w.sample}, {"x", w.x},
              {"y", w.y},           {"z", w.z},
              {"a", w.a},           {"t", w.t},
              {"s", w.s},           {"lhs", w.lhs},
              {"rhs", w.rhs},       {"slack", w.lhs - w.rhs}};
}

constexpr std::size_t kMaxWitnessesInReport = 50;

/// Gate shared by the iteration commands: the six-map engine is meaningful
/// only under an idempotent t-norm.
bool idempotency_gate(const Scenario& s, std::ostream& err) {
  if (is_idempotent(Tnorm(s.tnorm), 256, s.seed)) return true;
  err << "scenario error: t-norm '" << Tnorm(s.tnorm).name()
      << "' fails a*a >= a (witness a = 0.5); the six-map iteration "
         "requires an idempotent t-norm and min is the only continuous "
         "one\n";
  return false;
}

} // namespace

GridSpec parse_grid_flag(const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ':' || c == ',') c = ' ';
  }
  const Scenario parsed =
      parse_scenario("[run]\ngrid = " + normalized + "\n", true);
  return parsed.grid;
}

int cmd_check_axioms(const Scenario& scenario, const CommandOptions& options,
                     std::ostream& out, std::ostream& err) {
  try {
    const Prepared p = prepare(scenario, options);
    const PgmSpace space = build_space(p.scenario);

    SpaceAxiomReport report;
    const std::size_t st_pairs = 20;
    if (space.universe().is_finite() && space.universe().size() <= 16) {
      report = check_axioms_exhaustive(space, st_pairs, p.scenario.seed, p.grid);
      out << "axiom check (exhaustive over " << report.tuples << " tuples)\n";
    } else {
      report = check_axioms(space, 1000, st_pairs, p.scenario.seed, p.grid);
      out << "axiom check (" << report.tuples << " sampled tuples)\n";
    }
    out << "checks run:  " << report.checks << '\n';
    for (int axiom = 1; axiom <= 4; ++axiom) {
      out << "axiom " << axiom << " violations: "
          << report.violations_per_axiom[static_cast<std::size_t>(axiom - 1)]
          << '\n';
    }
    if (!report.pass()) {
      const auto& w = report.witnesses.front();
      out << "first witness: axiom " << w.axiom << " ("
          << (w.crisp ? "crisp" : "sampled") << ") at (x, y, z, a) = (" << w.x
          << ", " << w.y << ", " << w.z << ", " << w.a << "), lhs = " << w.lhs
          << ", rhs = " << w.rhs << '\n';
    }
    out << "result: " << (report.pass() ? "pass" : "fail") << '\n';

    if (options.out_path) {
      json j{{"command", "check-axioms"},
             {"pass", report.pass()},
             {"tuples", report.tuples},
             {"checks", report.checks},
             {"violations",
              {{"axiom1", report.violations_per_axiom[0]},
               {"axiom2", report.violations_per_axiom[1]},
               {"axiom3", report.violations_per_axiom[2]},
               {"axiom4", report.violations_per_axiom[3]}}}};
      json witnesses = json::array();
      for (std::size_t i = 0;
           i < report.witnesses.size() && i < kMaxWitnessesInReport; ++i) {
        witnesses.push_back(witness_json(report.witnesses[i]));
      }
      j["witnesses"] = std::move(witnesses);
      write_report_file(*options.out_path, j, err);
    }
    return report.pass() ? kExitPass : kExitViolation;
  } catch (const std::exception& e) {
    err << "scenario error: " << e.what() << '\n';
    return kExitScenarioError;
  }
}

int cmd_compat(const Scenario& scenario, const CommandOptions& options,
               std::ostream& out, std::ostream& err) {
  try {
    const Prepared p = prepare(scenario, options);
    const PgmSpace space = build_space(p.scenario);

    if (!p.scenario.maps.contains("A") || !p.scenario.maps.contains("B")) {
      throw ScenarioError(0, "maps", "compat requires at least maps A and B");
    }
    if (!p.scenario.sequence) {
      throw ScenarioError(0, "sequence", "compat requires a [sequence] section");
    }
    const SelfMap& A = p.scenario.maps.at("A");
    const SelfMap& B = p.scenario.maps.at("B");
    const SelfMap& C = p.scenario.maps.contains("C") ? p.scenario.maps.at("C") : B;
    const auto seq = p.scenario.sequence->materialize();

    const CompatReport report = check_compatible_triple(
        space, A, B, C, seq, p.grid, p.scenario.delta);

    out << "compatibility check over " << seq.size() << " sequence entries\n";
    out << "premise (shared limit): " << (report.premise_holds ? "holds" : "FAILED")
        << '\n';
    if (!report.premise_holds) {
      out << "note: verdict is vacuous; the supplied sequence does not "
             "certify a common limit of the A/B/C images\n";
    }
    out << "worst residual: " << format_double(report.worst_residual) << '\n';
    for (const auto& pair : report.pairs) {
      out << "  (" << to_string(pair.alpha) << ", " << to_string(pair.beta)
          << ") residual = " << format_double(pair.residual) << '\n';
    }
    out << "verdict: " << (report.verdict ? "compatible" : "not compatible")
        << '\n';

    if (options.out_path) {
      json pairs = json::array();
      for (const auto& pair : report.pairs) {
        pairs.push_back(json{{"alpha", to_string(pair.alpha)},
                             {"beta", to_string(pair.beta)},
                             {"residual", pair.residual},
                             {"final_values", pair.final_values}});
      }
      json j{{"command", "compat"},
             {"premise_holds", report.premise_holds},
             {"verdict", report.verdict},
             {"worst_residual", report.worst_residual},
             {"tail_start", report.tail_start},
             {"grid", p.grid},
             {"pairs", std::move(pairs)}};
      write_report_file(*options.out_path, j, err);
    }
    return report.verdict ? kExitPass : kExitViolation;
  } catch (const std::exception& e) {
    err << "scenario error: " << e.what() << '\n';
    return kExitScenarioError;
  }
}

int cmd_fixpoint(const Scenario& scenario, const CommandOptions& options,
                 std::ostream& out, std::ostream& err) {
  try {
    const Prepared p = prepare(scenario, options);
    const PgmSpace space = build_space(p.scenario);
    const Sextuple sx = build_sextuple(p.scenario);
    if (!p.scenario.x0) {
      throw ScenarioError(0, "x0", "fixpoint requires x0 in [run]");
    }
    if (!idempotency_gate(p.scenario, err)) return kExitScenarioError;

    RunConfig config;
    config.k = p.scenario.k;
    config.eps = p.scenario.eps;
    config.delta = p.scenario.delta;
    config.n_max = p.scenario.n_max;
    config.seed = p.scenario.seed;
    config.weakened_fifth = p.scenario.weakened_fifth;

    FixpointReport report = run(space, sx, *p.scenario.x0, config, p.grid);

    if (p.scenario.probe_starts.size() >= 2) {
      const auto probe =
          uniqueness_probe(space, sx, p.scenario.probe_starts, config, p.grid);
      if (probe.outcome != UniquenessProbe::Outcome::inconclusive) {
        report.unique = probe.outcome == UniquenessProbe::Outcome::confirmed;
      }
      out << "uniqueness probe over " << p.scenario.probe_starts.size()
          << " starts: "
          << (probe.outcome == UniquenessProbe::Outcome::confirmed ? "confirmed"
              : probe.outcome == UniquenessProbe::Outcome::refuted
                  ? "refuted"
                  : "inconclusive")
          << " (spread " << format_double(probe.spread) << ")\n";
    }

    out << "termination: " << to_string(report.termination) << '\n';
    out << "iterations:  " << report.iterations << '\n';
    out << "candidate:   " << format_double(report.candidate) << '\n';
    if (report.cauchy_index) {
      out << "cauchy index: " << *report.cauchy_index << '\n';
    } else {
      out << "cauchy index: none\n";
    }
    for (std::size_t i = 0; i < 6; ++i) {
      out << "residual " << kMapNames[i] << ": "
          << format_double(report.residuals[i]) << '\n';
    }
    out << "contraction violations: " << report.contraction_violations << '\n';
    if (report.termination == Termination::collision) {
      out << (report.worst_residual() <= config.delta
                  ? "collision with residuals within delta: the iteration "
                    "arrived at a fixed point early\n"
                  : "collision with large residuals: degenerate scenario, "
                    "the distinctness requirement cannot be maintained\n");
    }
    if (report.termination == Termination::preimage_failure) {
      out << "preimage failure at step " << report.state.outcome.step
          << ": no " << report.state.outcome.which_map << "-preimage of "
          << format_double(report.state.outcome.target) << '\n';
    }

    if (options.out_path) {
      std::ofstream f(*options.out_path, std::ios::binary);
      if (!f) {
        err << "warning: cannot open trace path '" << *options.out_path << "'\n";
      } else {
        write_trace(f, space, report.state, p.grid);
      }
    }

    const bool ok = report.termination == Termination::converged ||
                    (report.termination == Termination::collision &&
                     report.worst_residual() <= config.delta);
    return ok ? kExitPass : kExitViolation;
  } catch (const ScenarioError& e) {
    err << "scenario error: " << e.what() << '\n';
    return kExitScenarioError;
  } catch (const std::exception& e) {
    err << "scenario error: " << e.what() << '\n';
    return kExitScenarioError;
  }
}

int cmd_monitor(const Scenario& scenario, const CommandOptions& options,
                std::ostream& out, std::ostream& err) {
  try {
    const Prepared p = prepare(scenario, options);
    const PgmSpace space = build_space(p.scenario);
    const Sextuple sx = build_sextuple(p.scenario);
    if (!p.scenario.x0) {
      throw ScenarioError(0, "x0", "monitor requires x0 in [run]");
    }
    if (!idempotency_gate(p.scenario, err)) return kExitScenarioError;

    IterationState state = build_sequences(sx, space.universe(), *p.scenario.x0,
                                           p.scenario.n_max);
    state.k = p.scenario.k;
    if (state.y_seq.size() < 4) {
      throw ScenarioError(0, "n_max",
                          "monitor needs at least 4 iteration terms; the "
                          "trace stopped after " +
                              std::to_string(state.y_seq.size()));
    }

    const ProofChainReport chain =
        proof_chain_monitor(space, state, p.scenario.k, p.grid);
    const ContractionReport contraction = check_contraction(
        space, sx, p.scenario.k, 2000, 2, p.scenario.seed,
        p.scenario.weakened_fifth);

    out << "chain checks: " << chain.checks << '\n';
    out << "step inequality failures:      " << chain.alpha_failures << '\n';
    out << "telescoped inequality failures: " << chain.beta_failures << '\n';
    out << "cauchy bound failures:          " << chain.gamma_failures << '\n';
    out << "contraction violations (paired scan): " << contraction.violations
        << '\n';
    if (!chain.pass() && contraction.worst) {
      const auto& w = *contraction.worst;
      out << "contraction witness: (x, y, z, t) = (" << format_double(w.x)
          << ", " << format_double(w.y) << ", " << format_double(w.z) << ", "
          << format_double(w.t) << "), lhs = " << format_double(w.lhs)
          << ", rhs = " << format_double(w.rhs) << '\n';
    }
    out << "result: " << (chain.pass() ? "pass" : "fail") << '\n';

    if (options.out_path) {
      json witnesses = json::array();
      for (std::size_t i = 0;
           i < chain.witnesses.size() && i < kMaxWitnessesInReport; ++i) {
        const auto& w = chain.witnesses[i];
        witnesses.push_back(json{{"inequality", std::string(1, w.inequality)},
                                 {"n", w.n},
                                 {"t", w.t},
                                 {"p", w.p},
                                 {"q", w.q},
                                 {"lhs", w.lhs},
                                 {"rhs", w.rhs}});
      }
      json j{{"command", "monitor"},
             {"pass", chain.pass()},
             {"checks", chain.checks},
             {"failures",
              {{"step", chain.alpha_failures},
               {"telescoped", chain.beta_failures},
               {"cauchy", chain.gamma_failures}}},
             {"contraction_violations", contraction.violations},
             {"witnesses", std::move(witnesses)}};
      write_report_file(*options.out_path, j, err);
    }
    return chain.pass() ? kExitPass : kExitViolation;
  } catch (const std::exception& e) {
    err << "scenario error: " << e.what() << '\n';
    return kExitScenarioError;
  }
}

} // namespace pgm
