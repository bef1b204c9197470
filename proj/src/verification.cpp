// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rsm/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "rsm/attacks.hpp"
#include "rsm/errors.hpp"
#include "rsm/harness.hpp"
#include "rsm/rng.hpp"
#include "rsm/scenario.hpp"
#include "rsm/solver.hpp"
#include "rsm/subsets.hpp"

namespace rsm {

namespace {

struct GridJob {
  int size = 0;
  int horizon = 0;
  int alpha = 0;
  int beta = 0;
  std::string family;
  int index = 0;
  std::uint64_t seed = 0;

  std::string describe() const {
    std::ostringstream os;
    os << family << " |V_t|=" << size << " T=" << horizon << " alpha=" << alpha
       << " beta=" << beta << " #" << index << " seed=" << seed;
    return os.str();
  }
};

// Exact breakpoint of the regularized-removal size function: the unique
// multiplier where the best penalized value among removals of size >= beta
// ties the best among sizes < beta. Computed from a full subset scan.
double scan_breakpoint(const ObjectiveHandle& obj,
                       const SelectionSequence& history,
                       const ElementSet& selected, int beta) {
  const int n = static_cast<int>(selected.size());
  const int step = history.length() + 1;
  std::vector<double> best_by_size(n + 1,
                                   std::numeric_limits<double>::infinity());
  for_each_subset(selected, [&](const ElementSet& removal) {
    double value =
        obj.evaluate(history.with_merged(step, set_minus(selected, removal)));
    int k = static_cast<int>(removal.size());
    best_by_size[k] = std::min(best_by_size[k], value);
  });
  auto envelope = [&](double lambda, int from, int to) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = from; k <= to; ++k) {
      best = std::min(best, best_by_size[k] + lambda * k);
    }
    return best;
  };
  auto gap = [&](double lambda) {
    return envelope(lambda, beta, n) - envelope(lambda, 0, beta - 1);
  };
  if (gap(0.0) >= 0.0) return 0.0;
  std::vector<double> candidates;
  for (int k = beta; k <= n; ++k) {
    for (int k2 = 0; k2 < beta; ++k2) {
      double cross = (best_by_size[k2] - best_by_size[k]) / (k - k2);
      if (cross >= 0.0 && std::isfinite(cross)) candidates.push_back(cross);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (double lambda : candidates) {
    if (gap(lambda) >= -1e-12) return lambda;
  }
  return candidates.empty() ? 0.0 : candidates.back();
}

void run_grid_job(const GridJob& job, const GridOptions& options,
                  GridCounters* counters,
                  std::vector<GridViolation>* violations) {
  const double tol = options.tolerance;
  auto record = [&](const std::string& check, const std::string& detail) {
    violations->push_back(GridViolation{check, job.describe(), detail});
  };

  ScenarioConfig config;
  config.kind = ScenarioKind::kSynthetic;
  config.horizon = job.horizon;
  config.alpha = job.alpha;
  config.beta = job.beta;
  config.synthetic_objective = job.family;
  config.synthetic_per_step = job.size;
  config.synthetic_universe = job.size + 3;
  config.synthetic_max_cover = 3;
  config.synthetic_weight_max = 9;
  ScenarioInstance instance = generate_scenario(job.seed, config);
  const ObjectiveHandle& obj = instance.objective;
  const GroundSets& grounds = *instance.grounds;
  const Budgets& budgets = instance.budgets;
  counters->instances += 1;

  CurvatureReport curvature = kappa(obj, grounds.all_ids());

  EpisodeTrace trace = run_episode(obj, grounds, budgets, SelectorKind::kRam,
                                   AttackerKind::kWorstCase, job.seed);
  const int T = grounds.horizon();

  std::vector<double> minimax_by_t(T + 1, 0.0);
  for (int t = 1; t <= T; ++t) {
    minimax_by_t[t] = optimal_value(obj, grounds, budgets,
                                    /*node_budget=*/200000000, t).value;
  }
  const double robust_final = trace.steps[T - 1].value_after_removal;

  // A priori guarantees, both curvature branches (the objectives here are
  // submodular, so total curvature equals kappa).
  for (BoundKind kind :
       {BoundKind::kAprioriSubmodular, BoundKind::kAprioriNonsubmodular}) {
    BoundReport bound = apriori_bound(kind, curvature, T);
    counters->apriori_checks += 1;
    if (robust_final < bound.value * minimax_by_t[T] - tol) {
      record("apriori_soundness",
             "f=" + std::to_string(robust_final) + " bound=" +
                 std::to_string(bound.value) + " f*=" +
                 std::to_string(minimax_by_t[T]));
    }
  }

  // Modular instances: the robust selection is exactly optimal.
  if (job.family == "modular") {
    counters->modular_equality_checks += 1;
    if (robust_final != minimax_by_t[T]) {
      record("modular_equality",
             "f=" + std::to_string(robust_final) + " f*=" +
                 std::to_string(minimax_by_t[T]));
    }
  }

  // Greedy reference for the ratio bounds.
  std::vector<ElementSet> baits;
  for (const auto& s : trace.steps) baits.push_back(s.bait);
  SelectionSequence reference;
  bool reference_ok = true;
  try {
    reference = greedy_reference(obj, grounds, budgets, baits);
  } catch (const Error&) {
    reference_ok = false;
  }

  for (int t = 1; t <= T && reference_ok; ++t) {
    double value_t = trace.steps[t - 1].value_after_removal;
    for (bool submodular_branch : {true, false}) {
      counters->aposteriori_checks += 1;
      try {
        BoundReport bound = aposteriori_bound(obj, trace, t, reference,
                                              curvature, submodular_branch);
        if (value_t < bound.value * minimax_by_t[t] - tol) {
          record("aposteriori_soundness",
                 "t=" + std::to_string(t) + " f=" + std::to_string(value_t) +
                     " bound=" + std::to_string(bound.value) + " f*_t=" +
                     std::to_string(minimax_by_t[t]));
        }
      } catch (const DegenerateInstanceError&) {
        counters->skipped_degenerate += 1;
      }
    }
  }

  // Pre-failure machinery, step by step.
  if (job.beta >= 1) {
    std::vector<BisectionState> bisections;
    for (int t = 1; t <= T; ++t) {
      SelectionSequence history = trace.survivors_prefix(t - 1);
      const ElementSet& selected = trace.steps[t - 1].selected;
      const double u0 = default_bisection_upper(obj, history, selected);
      const double epsilon = 1e-6;
      BisectionState state =
          bisection_lambda(obj, history, selected, job.beta, u0, epsilon);
      counters->bisection_checks += 1;

      if (state.surviving_value >
          trace.steps[t - 1].value_after_removal + tol) {
        record("bisection_lower_bounds_worst_case",
               "t=" + std::to_string(t) + " f_hat=" +
                   std::to_string(state.surviving_value) + " f_after=" +
                   std::to_string(trace.steps[t - 1].value_after_removal));
      }
      double breakpoint = scan_breakpoint(obj, history, selected, job.beta);
      if (std::abs(state.lambda - breakpoint) > epsilon + 1e-9) {
        record("bisection_breakpoint",
               "t=" + std::to_string(t) + " lambda=" +
                   std::to_string(state.lambda) + " scan=" +
                   std::to_string(breakpoint));
      }
      auto probes = state.visited;
      std::sort(probes.begin(), probes.end());
      for (std::size_t i = 1; i < probes.size(); ++i) {
        if (probes[i].second > probes[i - 1].second) {
          record("bisection_size_monotone",
                 "t=" + std::to_string(t) + " at lambda=" +
                     std::to_string(probes[i].first));
        }
      }
      int cap = state.initial_upper > epsilon
                    ? static_cast<int>(
                          std::ceil(std::log2(state.initial_upper / epsilon)))
                    : 0;
      if (state.iterations > cap) {
        record("bisection_iteration_cap",
               "t=" + std::to_string(t) + " iterations=" +
                   std::to_string(state.iterations) + " cap=" +
                   std::to_string(cap));
      }
      bisections.push_back(std::move(state));
    }

    for (int t = 1; t <= T && reference_ok; ++t) {
      double value_t = trace.steps[t - 1].value_after_removal;
      for (bool submodular_branch : {true, false}) {
        counters->prefailure_checks += 1;
        try {
          BoundReport bound = prefailure_bound(obj, bisections, t, reference,
                                               curvature, submodular_branch);
          if (value_t < bound.value * minimax_by_t[t] - tol) {
            record("prefailure_soundness",
                   "t=" + std::to_string(t) + " f=" + std::to_string(value_t) +
                       " bound=" + std::to_string(bound.value) + " f*_t=" +
                       std::to_string(minimax_by_t[t]));
          }
          // The pre-failure value never exceeds the a posteriori one.
          BoundReport post = aposteriori_bound(obj, trace, t, reference,
                                               curvature, submodular_branch);
          if (bound.value > post.value + tol) {
            record("prefailure_below_aposteriori",
                   "t=" + std::to_string(t) + " pre=" +
                       std::to_string(bound.value) + " post=" +
                       std::to_string(post.value));
          }
        } catch (const DegenerateInstanceError&) {
          counters->skipped_degenerate += 1;
        }
      }
    }
  }

  // The sampled total curvature can only under-estimate the exact one.
  Rng sample_rng(derive_seed(job.seed, 7));
  CurvatureReport sampled =
      total_curvature(obj, grounds.all_ids(), CurvatureMode::kSampled, 200,
                      &sample_rng);
  if (grounds.all_ids().size() <= 10) {
    CurvatureReport exact = total_curvature(
        obj, grounds.all_ids(), CurvatureMode::kExact, 0, nullptr);
    if (sampled.value > exact.value + tol) {
      record("sampled_curvature_lower_bound",
             "sampled=" + std::to_string(sampled.value) + " exact=" +
                 std::to_string(exact.value));
    }
    if (std::abs(exact.value - curvature.value) > 1e-9) {
      record("total_curvature_matches_kappa",
             "c=" + std::to_string(exact.value) + " kappa=" +
                 std::to_string(curvature.value));
    }
  }
}

}  // namespace

GridOutcome run_bound_soundness_grid(const GridOptions& options) {
  std::vector<GridJob> jobs;
  for (int size : options.sizes) {
    for (int horizon : options.horizons) {
      for (int alpha = 1; alpha <= size; ++alpha) {
        for (int beta = 0; beta <= alpha; ++beta) {
          for (const char* family : {"modular", "coverage"}) {
            for (int index = 0; index < options.instances_per_cell; ++index) {
              GridJob job;
              job.size = size;
              job.horizon = horizon;
              job.alpha = alpha;
              job.beta = beta;
              job.family = family;
              job.index = index;
              job.seed = derive_seed(
                  options.seed,
                  hash_tag(family) ^
                      (static_cast<std::uint64_t>(size) << 32 ^
                       static_cast<std::uint64_t>(horizon) << 24 ^
                       static_cast<std::uint64_t>(alpha) << 16 ^
                       static_cast<std::uint64_t>(beta) << 8 ^
                       static_cast<std::uint64_t>(index)));
              jobs.push_back(std::move(job));
            }
          }
        }
      }
    }
  }

  const int workers = options.workers > 0 ? options.workers
                                          : worker_pool_size();
  std::vector<GridCounters> counters(jobs.size());
  std::vector<std::vector<GridViolation>> violations(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::vector<std::string> errors;
  auto work = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        run_grid_job(jobs[i], options, &counters[i], &violations[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        errors.push_back(jobs[i].describe() + ": " + e.what());
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (!errors.empty()) throw Error("grid job failed: " + errors.front());

  GridOutcome outcome;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    outcome.counters.instances += counters[i].instances;
    outcome.counters.apriori_checks += counters[i].apriori_checks;
    outcome.counters.aposteriori_checks += counters[i].aposteriori_checks;
    outcome.counters.prefailure_checks += counters[i].prefailure_checks;
    outcome.counters.bisection_checks += counters[i].bisection_checks;
    outcome.counters.modular_equality_checks +=
        counters[i].modular_equality_checks;
    outcome.counters.skipped_degenerate += counters[i].skipped_degenerate;
    outcome.violations.insert(outcome.violations.end(), violations[i].begin(),
                              violations[i].end());
  }
  return outcome;
}

InequalitySuiteOutcome run_inequality_suite(const InequalitySuiteOptions& options) {
  InequalitySuiteOutcome outcome;
  for (int i = 0; i < options.instances; ++i) {
    std::uint64_t seed = derive_seed(options.seed, i);
    ScenarioConfig config;
    config.kind = ScenarioKind::kSynthetic;
    // Alternate small shapes; all have universes small enough for exact
    // total curvature.
    config.horizon = (i % 2 == 0) ? 2 : 1;
    config.synthetic_per_step = (i % 2 == 0) ? 3 : 4 + (i % 3);
    config.synthetic_objective = (i % 5 == 4) ? "modular" : "coverage";
    config.synthetic_universe = 6 + (i % 4);
    config.synthetic_max_cover = 3;
    config.synthetic_weight_max = 9;
    Rng budget_rng(derive_seed(seed, 1));
    config.alpha =
        1 + static_cast<int>(budget_rng.next_below(config.synthetic_per_step));
    config.beta = static_cast<int>(budget_rng.next_below(config.alpha + 1));
    ScenarioInstance instance = generate_scenario(seed, config);
    outcome.instances += 1;

    CurvatureReport c_exact =
        total_curvature(instance.objective, instance.grounds->all_ids(),
                        CurvatureMode::kExact, 0, nullptr);
    Rng draw_rng(derive_seed(seed, 2));
    auto violations = check_curvature_inequalities(
        instance.objective, instance.grounds->all_ids(), c_exact.value,
        options.draws_per_instance, draw_rng, options.tolerance);
    outcome.randomized_draws += options.draws_per_instance;
    outcome.violations.insert(outcome.violations.end(), violations.begin(),
                              violations.end());
    if (instance.grounds->all_ids().size() <= 8) {
      auto exhaustive = check_curvature_inequalities_exhaustive(
          instance.objective, instance.grounds->all_ids(), c_exact.value,
          options.tolerance);
      outcome.exhaustive_instances += 1;
      outcome.violations.insert(outcome.violations.end(), exhaustive.begin(),
                                exhaustive.end());
    }
    auto selection = check_selection_inequalities(
        instance.objective, *instance.grounds, instance.budgets,
        c_exact.value, options.tolerance);
    outcome.violations.insert(outcome.violations.end(), selection.begin(),
                              selection.end());
  }
  return outcome;
}

}  // namespace rsm
