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

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "rsm/analysis.hpp"
#include "rsm/harness.hpp"
#include "rsm/rng.hpp"
#include "rsm/scenario.hpp"
#include "rsm/solver.hpp"
#include "rsm/verification.hpp"

namespace {

using namespace rsm;

int cmd_run(const std::string& config_path, const std::string& out_override,
            int trials_override, std::int64_t seed_override,
            const std::string& selectors, const std::string& attackers,
            bool bounds, bool plot) {
  ScenarioConfig config = load_config(config_path);
  if (!out_override.empty()) config.output_path = out_override;
  if (trials_override > 0) config.trials = trials_override;
  if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
  auto parse_list = [](const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(csv);
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  };
  if (!selectors.empty()) config.selectors = parse_list(selectors);
  if (!attackers.empty()) config.attackers = parse_list(attackers);
  if (bounds) config.bounds = true;
  config.validate();

  MonteCarloOutput output = run_monte_carlo(config);
  for (const std::string& skipped : output.skipped) {
    std::cerr << "skipped: " << skipped << "\n";
  }
  if (config.output_path.empty()) {
    std::cout << results_to_csv(output.rows);
  } else {
    emit_results(output.rows, config.output_path);
    if (plot) emit_plot_data(output.summary, config.output_path);
    std::cout << "wrote " << output.rows.size() << " rows to "
              << config.output_path << "\n";
  }
  std::cout << "# selector attacker step mean_error stderr\n";
  for (const SummaryRow& row : output.summary) {
    std::printf("%s %s %d %.6g %.3g\n", row.selector.c_str(),
                row.attacker.c_str(), row.step, row.mean_error,
                row.stderr_error);
  }
  return 0;
}

int cmd_curvature(const std::string& config_path, const std::string& mode,
                  int samples) {
  ScenarioConfig config = load_config(config_path);
  ScenarioInstance instance = generate_scenario(config.seed, config);
  const ElementSet& universe = instance.grounds->all_ids();

  if (instance.objective.claims_submodular()) {
    CurvatureReport k = kappa(instance.objective, universe);
    std::printf("kappa %.10g exact certified\n", k.value);
  }
  if (mode == "exact") {
    CurvatureReport c = total_curvature(instance.objective, universe,
                                        CurvatureMode::kExact, 0, nullptr);
    std::printf("total_curvature %.10g exact certified\n", c.value);
  } else {
    Rng rng(derive_seed(config.seed, hash_tag("curvature")));
    CurvatureReport c =
        total_curvature(instance.objective, universe, CurvatureMode::kSampled,
                        samples, &rng);
    std::printf("total_curvature %.10g sampled(%lld) estimate-only\n", c.value,
                static_cast<long long>(c.sample_count));
  }
  return 0;
}

int cmd_bounds(const std::string& config_path, const std::string& selector,
               const std::string& attacker) {
  ScenarioConfig config = load_config(config_path);
  ScenarioInstance instance = generate_scenario(config.seed, config);
  const ObjectiveHandle& obj = instance.objective;
  const GroundSets& grounds = *instance.grounds;
  const bool submodular = obj.claims_submodular();

  CurvatureReport curvature;
  if (submodular) {
    curvature = kappa(obj, grounds.all_ids());
  } else {
    Rng rng(derive_seed(config.seed, hash_tag("curvature")));
    curvature = total_curvature(obj, grounds.all_ids(),
                                CurvatureMode::kSampled,
                                config.curvature_samples, &rng);
  }
  std::printf("curvature %.6g (%s%s)\n", curvature.value,
              curvature.kind == CurvatureKind::kKappa ? "kappa" : "total",
              curvature.certified ? ", certified" : ", sampled estimate");

  EpisodeLimits limits;
  limits.removal_enumeration_cap = config.removal_cap;
  EpisodeTrace trace = run_episode(
      obj, grounds, instance.budgets, selector_from_name(selector),
      attacker_from_name(attacker),
      derive_seed(config.seed, hash_tag(selector) ^ hash_tag(attacker)),
      limits);

  BoundReport apriori = apriori_bound(
      submodular ? BoundKind::kAprioriSubmodular
                 : BoundKind::kAprioriNonsubmodular,
      curvature, grounds.horizon());
  std::printf("apriori_bound %.6g%s\n", apriori.value,
              apriori.certified ? "" : " (estimate)");

  std::vector<ElementSet> baits;
  for (const auto& s : trace.steps) baits.push_back(s.bait);
  SelectionSequence reference =
      greedy_reference(obj, grounds, instance.budgets, baits);

  const char* mark = curvature.certified ? "" : "*";
  if (!curvature.certified) {
    std::printf("# values marked * rest on a sampled curvature estimate\n");
  }
  std::printf("# t f_survivors error aposteriori prefailure\n");
  for (int t = 1; t <= grounds.horizon(); ++t) {
    double f_t = trace.steps[t - 1].value_after_removal;
    double error = obj.baseline_cost(t) - f_t;
    std::string post = "-", pre = "-";
    try {
      post = std::to_string(
          aposteriori_bound(obj, trace, t, reference, curvature, submodular)
              .value);
    } catch (const DegenerateInstanceError&) {
    }
    if (instance.budgets.beta[t - 1] >= 1) {
      SelectionSequence history = trace.survivors_prefix(t - 1);
      const ElementSet& selected = trace.steps[t - 1].selected;
      double u0 = default_bisection_upper(obj, history, selected);
      std::vector<BisectionState> bisections(t);
      bisections[t - 1] =
          bisection_lambda(obj, history, selected,
                           instance.budgets.beta[t - 1], u0, 1e-6,
                           config.removal_cap);
      try {
        pre = std::to_string(
            prefailure_bound(obj, bisections, t, reference, curvature,
                             submodular)
                .value);
      } catch (const DegenerateInstanceError&) {
      }
    }
    std::printf("%d %.6g %.6g %s%s %s%s\n", t, f_t, error, post.c_str(),
                post == "-" ? "" : mark, pre.c_str(), pre == "-" ? "" : mark);
  }
  return 0;
}

int cmd_optimal(const std::string& config_path, std::int64_t node_budget) {
  ScenarioConfig config = load_config(config_path);
  ScenarioInstance instance = generate_scenario(config.seed, config);
  if (node_budget <= 0) node_budget = config.node_budget;
  MinimaxResult result = optimal_value(instance.objective, *instance.grounds,
                                       instance.budgets, node_budget);
  std::printf("f_star %.10g\n", result.value);
  std::printf("optimal_first_move %s\n",
              set_to_string(result.optimal_first_move).c_str());
  std::printf("nodes %lld\n", static_cast<long long>(result.node_count));
  return 0;
}

int cmd_verify(int instances_per_cell, int inequality_instances, int inequality_draws) {
  GridOptions grid;
  if (instances_per_cell > 0) grid.instances_per_cell = instances_per_cell;
  GridOutcome outcome = run_bound_soundness_grid(grid);
  std::printf("grid: %lld instances, %lld apriori, %lld aposteriori, "
              "%lld prefailure, %lld bisection, %lld modular-equality checks "
              "(%lld degenerate cells skipped)\n",
              outcome.counters.instances, outcome.counters.apriori_checks,
              outcome.counters.aposteriori_checks,
              outcome.counters.prefailure_checks,
              outcome.counters.bisection_checks,
              outcome.counters.modular_equality_checks,
              outcome.counters.skipped_degenerate);
  for (const GridViolation& v : outcome.violations) {
    std::printf("VIOLATION %s [%s] %s\n", v.check.c_str(), v.instance.c_str(),
                v.detail.c_str());
  }

  InequalitySuiteOptions inequalities;
  if (inequality_instances > 0) inequalities.instances = inequality_instances;
  if (inequality_draws > 0) inequalities.draws_per_instance = inequality_draws;
  InequalitySuiteOutcome inequality_outcome = run_inequality_suite(inequalities);
  std::printf("inequality suite: %lld instances, %lld randomized draws per "
              "inequality, %lld exhaustive instances\n",
              inequality_outcome.instances, inequality_outcome.randomized_draws,
              inequality_outcome.exhaustive_instances);
  for (const InequalityViolation& v : inequality_outcome.violations) {
    std::printf("VIOLATION %s %s lhs=%.12g rhs=%.12g\n", v.check.c_str(),
                v.witness.c_str(), v.lhs, v.rhs);
  }

  bool ok = outcome.violations.empty() && inequality_outcome.violations.empty();
  std::printf("%s\n", ok ? "verify: OK" : "verify: FAILED");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust sequential selection benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, out_path, selectors, attackers, selector = "ram",
                                                           attacker = "worst";
  std::string mode = "sampled";
  int trials = 0, samples = 2000;
  std::int64_t seed = -1, node_budget = 0;
  bool bounds = false, plot = false;
  int grid_instances = 0, inequality_instances = 0, inequality_draws = 0;

  auto* run = app.add_subcommand("run", "Monte Carlo episodes to CSV");
  run->add_option("--config", config_path)->required();
  run->add_option("--out", out_path);
  run->add_option("--trials", trials);
  run->add_option("--seed", seed);
  run->add_option("--selectors", selectors);
  run->add_option("--attackers", attackers);
  run->add_flag("--bounds", bounds);
  run->add_flag("--plot", plot);

  auto* curvature = app.add_subcommand("curvature", "Curvature of the scenario objective");
  curvature->add_option("--config", config_path)->required();
  curvature->add_option("--mode", mode)->check(CLI::IsMember({"exact", "sampled"}));
  curvature->add_option("--samples", samples);

  auto* bounds_cmd = app.add_subcommand("bounds", "Per-step bound report for one episode");
  bounds_cmd->add_option("--config", config_path)->required();
  bounds_cmd->add_option("--selector", selector);
  bounds_cmd->add_option("--attacker", attacker);

  auto* optimal = app.add_subcommand("optimal", "Brute-force minimax value (tiny instances)");
  optimal->add_option("--config", config_path)->required();
  optimal->add_option("--node-budget", node_budget);

  auto* verify = app.add_subcommand("verify", "Exhaustive desk-scale soundness grid");
  verify->add_option("--instances-per-cell", grid_instances);
  verify->add_option("--inequality-instances", inequality_instances);
  verify->add_option("--inequality-draws", inequality_draws);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path, out_path, trials, seed, selectors, attackers,
                     bounds, plot);
    }
    if (curvature->parsed()) return cmd_curvature(config_path, mode, samples);
    if (bounds_cmd->parsed()) return cmd_bounds(config_path, selector, attacker);
    if (optimal->parsed()) return cmd_optimal(config_path, node_budget);
    if (verify->parsed()) {
      return cmd_verify(grid_instances, inequality_instances, inequality_draws);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
