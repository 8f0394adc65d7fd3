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

// Times the serial reference implementation of each sampling kernel
// against its OpenMP twin and verifies both produce identical reports.
// Pass --quick to shrink the workloads (used by the ctest smoke run).

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>

#include "pgm/fixpoint.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_once(const std::function<void()>& fn) {
  const auto start = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void row(const char* kernel, const char* size, double serial_s,
         double parallel_s, bool equal) {
  std::printf("%-18s %-16s %10.3f ms %10.3f ms %8.2fx  %s\n", kernel, size,
              serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
              equal ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const auto grid = pgm::pow2_grid(-10, 10);
  const pgm::PgmSpace space(pgm::Universe::interval(0.0, 1.0),
                            pgm::GKernel::perimeter(), pgm::Family::ratio,
                            pgm::Tnorm(pgm::TnormKind::min));

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-18s %-16s %13s %13s %9s\n", "kernel", "size", "serial",
              "parallel", "speedup");

  int mismatches = 0;

  {
    const std::size_t tuples = quick ? 2000 : 50000;
    pgm::SpaceAxiomReport rs, rp;
    const double ts = time_once([&] {
      rs = pgm::check_axioms(space, tuples, 20, 7, grid, pgm::Exec::serial);
    });
    const double tp = time_once([&] {
      rp = pgm::check_axioms(space, tuples, 20, 7, grid, pgm::Exec::parallel);
    });
    const bool equal = rs.checks == rp.checks &&
                       rs.violations_per_axiom == rp.violations_per_axiom &&
                       rs.witnesses.size() == rp.witnesses.size();
    mismatches += !equal;
    row("axiom scan", (std::to_string(tuples) + " tuples").c_str(), ts, tp, equal);
  }

  {
    const std::size_t triples = quick ? 20000 : 400000;
    const pgm::SelfMap quarter = pgm::SelfMap::affine(0.25, 0.0);
    const pgm::SelfMap half = pgm::SelfMap::affine(0.5, 0.0);
    const pgm::Sextuple sx{quarter, quarter, quarter, half, half, half};
    pgm::ContractionReport rs, rp;
    const double ts = time_once([&] {
      rs = pgm::check_contraction(space, sx, 0.5, triples, 2, 7, false,
                                  pgm::Exec::serial);
    });
    const double tp = time_once([&] {
      rp = pgm::check_contraction(space, sx, 0.5, triples, 2, 7, false,
                                  pgm::Exec::parallel);
    });
    const bool equal = rs.violations == rp.violations &&
                       rs.worst_slack == rp.worst_slack &&
                       rs.checks == rp.checks;
    mismatches += !equal;
    row("contraction scan", (std::to_string(2 * triples) + " checks").c_str(),
        ts, tp, equal);
  }

  {
    const int len = quick ? 120 : 400;
    std::vector<double> seq;
    for (int n = 0; n < len; ++n) {
      seq.push_back(std::ldexp(1.0, -(n / 8)) * (n % 2 == 0 ? 1.0 : 0.75));
    }
    std::optional<std::size_t> rs, rp;
    const double ts = time_once(
        [&] { rs = pgm::cauchy_window(space, seq, 1e-4, 0.01, pgm::Exec::serial); });
    const double tp = time_once(
        [&] { rp = pgm::cauchy_window(space, seq, 1e-4, 0.01, pgm::Exec::parallel); });
    const bool equal = rs == rp;
    mismatches += !equal;
    row("cauchy window", (std::to_string(len) + " entries").c_str(), ts, tp, equal);
  }

  {
    const std::size_t n_max = quick ? 200 : 800;
    const pgm::SelfMap quarter = pgm::SelfMap::affine(0.25, 0.0);
    const pgm::SelfMap half = pgm::SelfMap::affine(0.5, 0.0);
    const pgm::Sextuple sx{quarter, quarter, quarter, half, half, half};
    auto state = pgm::build_sequences(sx, space.universe(), 1.0, n_max);
    state.k = 0.5;
    pgm::ProofChainReport rs, rp;
    const double ts = time_once([&] {
      rs = pgm::proof_chain_monitor(space, state, 0.5, grid, pgm::Exec::serial);
    });
    const double tp = time_once([&] {
      rp = pgm::proof_chain_monitor(space, state, 0.5, grid, pgm::Exec::parallel);
    });
    const bool equal = rs.checks == rp.checks &&
                       rs.alpha_failures == rp.alpha_failures &&
                       rs.beta_failures == rp.beta_failures &&
                       rs.gamma_failures == rp.gamma_failures;
    mismatches += !equal;
    row("chain monitor", (std::to_string(state.y_seq.size()) + " terms").c_str(),
        ts, tp, equal);
  }

  if (mismatches > 0) {
    std::printf("%d kernel(s) diverged between serial and parallel\n", mismatches);
    return 1;
  }
  return 0;
}
