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

#include "pgm/fixpoint.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pgm/rng.hpp"

namespace pgm {

namespace {

void require_contraction_factor(double k) {
  if (!(k > 0.0 && k <= 0.5)) {
    throw std::invalid_argument("k outside (0, 1/2]");
  }
}

bool values_equal(double a, double b, double tol) {
  return tol == 0.0 ? a == b : std::abs(a - b) <= tol;
}

struct ContractionSample {
  double x, y, z, t;
};

// Every fourth sample degenerates to a repeated-point pattern; those are
// where weak sextuples typically break first.
ContractionSample contraction_sample(const Universe& u, std::uint64_t seed,
                                     std::size_t i, std::size_t t_slot) {
  double x = u.sample(seed, i, 0);
  double y = u.sample(seed, i, 1);
  double z = u.sample(seed, i, 2);
  switch (i % 4) {
    case 0: y = x; break;
    case 1: z = x; break;
    case 2: z = y; break;
    default: break;
  }
  const double t =
      draw_log2(seed, i, 200 + static_cast<std::uint32_t>(t_slot), -10.0, 10.0);
  return {x, y, z, t};
}

} // namespace

IterationState build_sequences(const Sextuple& sx, const Universe& universe,
                               double x0, std::size_t n_max,
                               double preimage_tol, double collision_tol) {
  if (!universe.contains(x0)) {
    throw std::invalid_argument("build_sequences: x0 not in universe");
  }
  if (n_max < 1) {
    throw std::invalid_argument("build_sequences: n_max must be >= 1");
  }
  IterationState st;
  st.x_seq.push_back(x0);

  // Cyclic schedule: y_{3n} = A x_{3n} with T x_{3n+1} = y_{3n}, then B/D,
  // then C/S.
  const SelfMap* forward[3] = {&sx.A, &sx.B, &sx.C};
  const SelfMap* inverse[3] = {&sx.T, &sx.D, &sx.S};
  const char* inverse_name[3] = {"T", "D", "S"};

  for (std::size_t m = 0; m < n_max; ++m) {
    const std::size_t phase = m % 3;
    const double x_cur = st.x_seq.back();
    const double y = apply_map(*forward[phase], x_cur, universe);
    st.y_seq.push_back(y);

    if (st.y_seq.size() >= 2 &&
        values_equal(st.y_seq[st.y_seq.size() - 2], y, collision_tol)) {
      st.outcome = {BuildOutcome::Kind::collision, st.y_seq.size() - 1, y, ""};
      return st;
    }

    auto x_next = solve_preimage(*inverse[phase], y, universe, preimage_tol);
    if (!x_next) {
      st.outcome = {BuildOutcome::Kind::preimage_failure, st.y_seq.size() - 1,
                    y, inverse_name[phase]};
      return st;
    }
    if (*x_next == x_cur) st.consecutive_x_distinct = false;
    st.x_seq.push_back(*x_next);
  }
  st.outcome = {BuildOutcome::Kind::completed, st.y_seq.size(), 0.0, ""};
  return st;
}

ContractionReport check_contraction(const PgmSpace& space, const Sextuple& sx,
                                    double k, std::size_t triple_samples,
                                    std::size_t t_samples, std::uint64_t seed,
                                    bool weakened_fifth_term, Exec exec) {
  require_contraction_factor(k);
  if (triple_samples < 1 || t_samples < 1) {
    throw std::invalid_argument("check_contraction: counts must be >= 1");
  }
  if (!is_idempotent(space.tnorm(), 64, seed)) {
    throw std::invalid_argument(
        "check_contraction: t-norm must satisfy a*a >= a (of the built-in "
        "t-norms only min does)");
  }
  const Universe& u = space.universe();

  struct Slot {
    double slack = -1.0;      // rhs - lhs; violations have positive slack
    std::size_t sample = 0;   // ties resolve to the smallest sample index
    ContractionWitness w{};
  };

  auto eval_sample = [&](std::size_t i, std::size_t ts, Slot& slot) {
    const auto smp = contraction_sample(u, seed, i, ts);
    const double ax = apply_map(sx.A, smp.x, u);
    const double by = apply_map(sx.B, smp.y, u);
    const double cz = apply_map(sx.C, smp.z, u);
    const double sxp = apply_map(sx.S, smp.x, u);
    const double ty = apply_map(sx.T, smp.y, u);
    const double dz = apply_map(sx.D, smp.z, u);

    const double lhs = space.g_value(ax, by, cz, k * smp.t);
    const Tnorm& tn = space.tnorm();
    double rhs = tn.apply(space.g_value(sxp, ty, dz, smp.t),
                          space.g_value(sxp, ax, dz, smp.t));
    rhs = tn.apply(rhs, space.g_value(ax, by, cz, smp.t));
    rhs = tn.apply(rhs, space.g_value(ty, by, cz, smp.t));
    rhs = tn.apply(rhs, space.g_value(sxp, cz, dz,
                                      weakened_fifth_term ? smp.t : 2.0 * smp.t));
    const double slack = rhs - lhs;
    if (slack > kValueTol &&
        (slack > slot.slack || (slack == slot.slack && i < slot.sample))) {
      slot.slack = slack;
      slot.sample = i;
      slot.w = {smp.x, smp.y, smp.z, smp.t, lhs, rhs};
    }
    return slack > kValueTol;
  };

  ContractionReport report;
  report.checks = triple_samples * t_samples;

  if (exec == Exec::serial) {
    Slot best;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < triple_samples; ++i) {
      for (std::size_t ts = 0; ts < t_samples; ++ts) {
        if (eval_sample(i, ts, best)) ++violations;
      }
    }
    report.violations = violations;
    if (best.slack > 0.0) {
      report.worst_slack = best.slack;
      report.worst = best.w;
    }
  } else {
    const int max_threads = omp_get_max_threads();
    std::vector<Slot> best(static_cast<std::size_t>(max_threads));
    std::size_t violations = 0;
#pragma omp parallel for schedule(static) reduction(+ : violations)
    for (std::size_t i = 0; i < triple_samples; ++i) {
      Slot& slot = best[static_cast<std::size_t>(omp_get_thread_num())];
      for (std::size_t ts = 0; ts < t_samples; ++ts) {
        if (eval_sample(i, ts, slot)) ++violations;
      }
    }
    report.violations = violations;
    Slot merged;
    for (const Slot& s : best) {
      if (s.slack > merged.slack ||
          (s.slack == merged.slack && s.slack > 0.0 && s.sample < merged.sample)) {
        merged = s;
      }
    }
    if (merged.slack > 0.0) {
      report.worst_slack = merged.slack;
      report.worst = merged.w;
    }
  }
  return report;
}

ProofChainReport proof_chain_monitor(const PgmSpace& space,
                                     const IterationState& state, double k,
                                     std::span<const double> grid, Exec exec) {
  require_contraction_factor(k);
  const auto& y = state.y_seq;
  if (y.size() < 4) {
    throw std::invalid_argument("proof_chain_monitor: need at least 4 y-terms");
  }
  const std::size_t len = y.size();

  // Offset pairs for the Cauchy-style bound; trimmed per n to fit the trace.
  std::vector<std::pair<std::size_t, std::size_t>> offsets;
  {
    const std::size_t q_max = std::min<std::size_t>(19, len - 1);
    const std::pair<std::size_t, std::size_t> base[] = {
        {1, 1}, {1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 5}, {5, 8},
        {1, q_max}, {q_max / 2 == 0 ? 1 : q_max / 2, q_max}, {q_max, q_max}};
    for (auto [p, q] : base) {
      if (p >= 1 && p <= q && q <= q_max) offsets.emplace_back(p, q);
    }
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  }

  auto g3 = [&](std::size_t n, double t) {
    return space.g_value(y[n], y[n + 1], y[n + 2], t);
  };

  struct Local {
    std::size_t checks = 0;
    std::size_t fail_a = 0, fail_b = 0, fail_g = 0;
    std::vector<ProofChainFailure> witnesses;
  };

  auto scan_n = [&](std::size_t n, Local& acc) {
    for (double t : grid) {
      if (n + 3 < len) {
        ++acc.checks;
        const double lhs_a = g3(n + 1, t);
        const double rhs_a = g3(n, t / k);
        if (lhs_a < rhs_a - kValueTol) {
          ++acc.fail_a;
          acc.witnesses.push_back({'a', n, t, 0, 0, lhs_a, rhs_a});
        }
        ++acc.checks;
        const double rhs_b =
            g3(0, t * std::pow(k, -static_cast<double>(n + 1)));
        if (lhs_a < rhs_b - kValueTol) {
          ++acc.fail_b;
          acc.witnesses.push_back({'b', n, t, 0, 0, lhs_a, rhs_b});
        }
      }
      for (auto [p, q] : offsets) {
        if (n + q >= len) continue;
        ++acc.checks;
        const double lhs_g = space.g_value(y[n], y[n + p], y[n + q], t);
        const double rhs_g = g3(0, std::ldexp(t, static_cast<int>(n) - 1));
        if (lhs_g < rhs_g - kValueTol) {
          ++acc.fail_g;
          acc.witnesses.push_back({'g', n, t, p, q, lhs_g, rhs_g});
        }
      }
    }
  };

  ProofChainReport report;
  if (exec == Exec::serial) {
    Local acc;
    for (std::size_t n = 0; n < len; ++n) scan_n(n, acc);
    report.checks = acc.checks;
    report.alpha_failures = acc.fail_a;
    report.beta_failures = acc.fail_b;
    report.gamma_failures = acc.fail_g;
    report.witnesses = std::move(acc.witnesses);
  } else {
    const int max_threads = omp_get_max_threads();
    std::vector<Local> locals(static_cast<std::size_t>(max_threads));
#pragma omp parallel for schedule(static)
    for (std::size_t n = 0; n < len; ++n) {
      scan_n(n, locals[static_cast<std::size_t>(omp_get_thread_num())]);
    }
    for (auto& loc : locals) {
      report.checks += loc.checks;
      report.alpha_failures += loc.fail_a;
      report.beta_failures += loc.fail_b;
      report.gamma_failures += loc.fail_g;
      report.witnesses.insert(report.witnesses.end(), loc.witnesses.begin(),
                              loc.witnesses.end());
    }
    std::stable_sort(report.witnesses.begin(), report.witnesses.end(),
                     [](const ProofChainFailure& l, const ProofChainFailure& r) {
                       return l.n < r.n;
                     });
  }
  return report;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::collision: return "collision";
    case Termination::preimage_failure: return "preimage_failure";
    case Termination::max_iter: return "max_iter";
  }
  return "?";
}

FixpointReport run(const PgmSpace& space, const Sextuple& sx, double x0,
                   const RunConfig& config, std::span<const double> grid) {
  require_contraction_factor(config.k);
  if (!is_idempotent(space.tnorm(), 64, config.seed)) {
    throw std::invalid_argument(
        "run: the six-map iteration requires a t-norm with a*a >= a; of the "
        "built-in t-norms only min qualifies");
  }

  FixpointReport report;
  report.state = build_sequences(sx, space.universe(), x0, config.n_max,
                                 config.preimage_tol, config.collision_tol);
  report.state.k = config.k;
  report.iterations = report.state.y_seq.size();

  const auto& y = report.state.y_seq;
  if (!y.empty()) {
    report.cauchy_index =
        cauchy_window(space, y, config.eps, config.delta);
  }

  // Candidate: the settled tail on real universes, the exact collision
  // point on finite ones (where the collision value is the arrived point).
  if (report.state.outcome.kind == BuildOutcome::Kind::collision) {
    report.candidate = y.back();
  } else {
    report.candidate = y.empty() ? x0 : y.back();
  }

  const SelfMap* maps[6] = {&sx.A, &sx.B, &sx.C, &sx.D, &sx.S, &sx.T};
  for (std::size_t i = 0; i < 6; ++i) {
    const double image = apply_map(*maps[i], report.candidate, space.universe());
    double worst = 0.0;
    for (double t : grid) {
      worst = std::max(
          worst, 1.0 - space.g_value(image, report.candidate, report.candidate, t));
    }
    report.residuals[i] = worst;
  }

  const auto contraction = check_contraction(
      space, sx, config.k, config.contraction_triples, config.contraction_ts,
      config.seed, config.weakened_fifth);
  report.contraction_violations = contraction.violations;

  switch (report.state.outcome.kind) {
    case BuildOutcome::Kind::collision:
      report.termination = Termination::collision;
      break;
    case BuildOutcome::Kind::preimage_failure:
      report.termination = Termination::preimage_failure;
      break;
    case BuildOutcome::Kind::completed:
      report.termination = (report.cauchy_index.has_value() &&
                            report.worst_residual() <= config.delta)
                               ? Termination::converged
                               : Termination::max_iter;
      break;
  }
  return report;
}

UniquenessProbe uniqueness_probe(const PgmSpace& space, const Sextuple& sx,
                                 std::span<const double> starts,
                                 const RunConfig& config,
                                 std::span<const double> grid) {
  if (starts.size() < 2) {
    throw std::invalid_argument("uniqueness_probe: need at least 2 start points");
  }
  // Configuration problems are the same for every start; surface them
  // before entering the parallel region.
  require_contraction_factor(config.k);
  if (!is_idempotent(space.tnorm(), 64, config.seed)) {
    throw std::invalid_argument(
        "uniqueness_probe: the iteration requires a t-norm with a*a >= a");
  }
  UniquenessProbe probe;
  probe.runs.resize(starts.size());
  std::vector<std::string> errors(starts.size());

  // Runs are independent; results land in per-start slots. Exceptions must
  // not leave the parallel region, so they are captured per run.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < starts.size(); ++i) {
    try {
      probe.runs[i] = run(space, sx, starts[i], config, grid);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }

  bool all_verified = true;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (!errors[i].empty()) {
      probe.errors.push_back("start " + std::to_string(i) + ": " + errors[i]);
      all_verified = false;
      continue;
    }
    const auto& r = probe.runs[i];
    const bool verified =
        r.termination == Termination::converged ||
        (r.termination == Termination::collision &&
         r.worst_residual() <= config.delta);
    if (!verified) all_verified = false;
  }
  double spread = 0.0;
  for (std::size_t i = 0; i < probe.runs.size(); ++i) {
    for (std::size_t j = i + 1; j < probe.runs.size(); ++j) {
      spread = std::max(spread, std::abs(probe.runs[i].candidate -
                                         probe.runs[j].candidate));
    }
  }
  probe.spread = spread;
  if (!all_verified) {
    probe.outcome = UniquenessProbe::Outcome::inconclusive;
  } else {
    probe.outcome = spread <= config.eps ? UniquenessProbe::Outcome::confirmed
                                         : UniquenessProbe::Outcome::refuted;
  }
  return probe;
}

} // namespace pgm
