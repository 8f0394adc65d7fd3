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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pgm/commands.hpp"

namespace {

struct CommonFlags {
  std::string scenario_path;
  std::string out_path;
  std::string grid_spec;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t max_iter = 0;
  bool max_iter_set = false;
  bool strict = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--scenario", flags.scenario_path, "scenario file")
      ->required();
  cmd->add_option("--out", flags.out_path,
                  "machine-readable report / trace output path");
  cmd->add_option("--grid", flags.grid_spec,
                  "grid override: 'pow2:<lo>:<hi>' or 'list:<v>,...'");
  cmd->add_option("--seed", flags.seed, "seed override")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--max-iter", flags.max_iter, "iteration cap override")
      ->each([&flags](const std::string&) { flags.max_iter_set = true; });
  cmd->add_flag("--strict", flags.strict,
                "reject unknown scenario keys instead of warning");
}

int dispatch(const std::string& name, const CommonFlags& flags) {
  std::ifstream file(flags.scenario_path);
  if (!file) {
    std::cerr << "scenario error: cannot open '" << flags.scenario_path << "'\n";
    return pgm::kExitScenarioError;
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();

  pgm::Scenario scenario;
  std::vector<std::string> warnings;
  try {
    scenario = pgm::parse_scenario(buffer.str(), flags.strict, &warnings);
  } catch (const std::exception& e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return pgm::kExitScenarioError;
  }
  for (const auto& w : warnings) {
    std::cerr << "warning: " << w << '\n';
  }

  pgm::CommandOptions options;
  options.strict = flags.strict;
  if (!flags.out_path.empty()) options.out_path = flags.out_path;
  if (flags.seed_set) options.seed_override = flags.seed;
  if (flags.max_iter_set) options.max_iter_override = flags.max_iter;
  if (!flags.grid_spec.empty()) {
    try {
      options.grid_override = pgm::parse_grid_flag(flags.grid_spec);
    } catch (const std::exception& e) {
      std::cerr << "scenario error: bad --grid spec: " << e.what() << '\n';
      return pgm::kExitScenarioError;
    }
  }

  if (name == "check-axioms") {
    return pgm::cmd_check_axioms(scenario, options, std::cout, std::cerr);
  }
  if (name == "compat") {
    return pgm::cmd_compat(scenario, options, std::cout, std::cerr);
  }
  if (name == "fixpoint") {
    return pgm::cmd_fixpoint(scenario, options, std::cout, std::cerr);
  }
  return pgm::cmd_monitor(scenario, options, std::cout, std::cerr);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pgmfix: probabilistic generalized metric spaces and the six-map "
      "common-fixed-point iteration"};
  app.require_subcommand(1);

  CommonFlags flags[4];
  const char* names[4] = {"check-axioms", "compat", "fixpoint", "monitor"};
  const char* descriptions[4] = {
      "verify the four space axioms by sampling (exhaustive on small finite universes)",
      "check compatibility of the maps [A, B, C] along the scenario sequence",
      "run the six-map iteration and verify the common fixed point",
      "check the chain inequalities along a built iteration trace"};
  CLI::App* subs[4];
  for (int i = 0; i < 4; ++i) {
    subs[i] = app.add_subcommand(names[i], descriptions[i]);
    add_common_flags(subs[i], flags[i]);
  }

  CLI11_PARSE(app, argc, argv);

  for (int i = 0; i < 4; ++i) {
    if (subs[i]->parsed()) return dispatch(names[i], flags[i]);
  }
  return pgm::kExitScenarioError;
}
