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

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "rsm/analysis.hpp"
#include "rsm/attacks.hpp"
#include "rsm/errors.hpp"
#include "rsm/objectives.hpp"
#include "rsm/scenario.hpp"
#include "rsm/solver.hpp"

using namespace rsm;
using rsm::testing::coverage_abc;
using rsm::testing::modular_abc;
using rsm::testing::seq_of;

TEST_CASE("kappa: examples and call accounting") {
  auto modular = modular_abc();
  CHECK(kappa(modular.obj, modular.grounds->all_ids()).value == 0.0);

  // f = min(|A|, 1): two elements covering the same unit item.
  GroundSets grounds = GroundSets::uniform(1, 2);
  CoverageSpec saturating;
  saturating.universe_weights = {1.0};
  saturating.covers = {{0, {0}}, {1, {0}}};
  ObjectiveHandle sat = make_coverage(grounds, saturating);
  CHECK(kappa(sat, grounds.all_ids()).value == 1.0);

  auto coverage = coverage_abc();
  long long before = coverage.obj.eval_count();
  CurvatureReport report = kappa(coverage.obj, coverage.grounds->all_ids());
  CHECK(report.value == 1.0);  // witness: element 1 adds nothing to {0, 2}
  CHECK(report.certified);
  // f(V), each f(V \ {v}), each f({v}).
  CHECK(coverage.obj.eval_count() - before == 2 * 3 + 1);
}

TEST_CASE("kappa: zero-value singleton is a degenerate instance") {
  GroundSets grounds = GroundSets::uniform(1, 2);
  CoverageSpec spec;
  spec.universe_weights = {1.0};
  spec.covers = {{0, {0}}, {1, {}}};  // element 1 covers nothing
  ObjectiveHandle obj = make_coverage(grounds, spec);
  CHECK_THROWS_AS(kappa(obj, grounds.all_ids()), DegenerateInstanceError);
}

TEST_CASE("total curvature: examples") {
  auto modular = modular_abc();
  CurvatureReport exact = total_curvature(
      modular.obj, modular.grounds->all_ids(), CurvatureMode::kExact, 0,
      nullptr);
  CHECK(exact.value == 0.0);
  CHECK(exact.certified);

  // Two elements, f(a) = f(b) = 1, f(ab) = 1.5: min ratio 0.5.
  GroundSets grounds = GroundSets::uniform(1, 2);
  CoverageSpec spec;
  spec.universe_weights = {0.5, 0.5, 0.5};
  spec.covers = {{0, {0, 1}}, {1, {1, 2}}};
  ObjectiveHandle obj = make_coverage(grounds, spec);
  CurvatureReport c = total_curvature(obj, grounds.all_ids(),
                                      CurvatureMode::kExact, 0, nullptr);
  CHECK(c.value == doctest::Approx(0.5).epsilon(1e-12));

  // Capacity guard.
  GroundSets big = GroundSets::uniform(1, 12);
  ModularSpec big_spec;
  for (GlobalId id : big.all_ids()) big_spec.weights[id] = 1.0;
  ObjectiveHandle big_obj = make_modular(big, big_spec);
  CHECK_THROWS_AS(total_curvature(big_obj, big.all_ids(),
                                  CurvatureMode::kExact, 0, nullptr),
                  CapacityError);
}

TEST_CASE("total curvature equals kappa for submodular objectives") {
  ScenarioConfig config;
  config.kind = ScenarioKind::kSynthetic;
  config.horizon = 2;
  config.synthetic_per_step = 3;
  for (std::uint64_t seed : {5ull, 6ull, 7ull}) {
    ScenarioInstance inst = generate_scenario(seed, config);
    CurvatureReport k = kappa(inst.objective, inst.grounds->all_ids());
    CurvatureReport c = total_curvature(
        inst.objective, inst.grounds->all_ids(), CurvatureMode::kExact, 0,
        nullptr);
    CHECK(std::abs(k.value - c.value) < 1e-9);

    Rng rng(seed);
    CurvatureReport sampled = total_curvature(
        inst.objective, inst.grounds->all_ids(), CurvatureMode::kSampled, 100,
        &rng);
    CHECK(!sampled.certified);
    CHECK(sampled.value <= c.value + 1e-9);
    // Uncertified curvature taints every bound built from it.
    CHECK(!apriori_bound(BoundKind::kAprioriNonsubmodular, sampled, 2)
               .certified);
    CHECK(apriori_bound(BoundKind::kAprioriSubmodular, k, 2).certified);
  }
}

TEST_CASE("a priori bound closed forms") {
  CurvatureReport zero{0.0, CurvatureKind::kKappa, CurvatureMode::kExact, 0,
                       true};
  CHECK(apriori_bound(BoundKind::kAprioriSubmodular, zero, 1).value == 1.0);

  CurvatureReport half{0.5, CurvatureKind::kKappa, CurvatureMode::kExact, 0,
                       true};
  CHECK(apriori_bound(BoundKind::kAprioriSubmodular, half, 1).value ==
        doctest::Approx((1.0 - std::exp(-0.5)) / 0.5 * 0.5).epsilon(1e-15));
  CHECK(apriori_bound(BoundKind::kAprioriSubmodular, half, 2).value ==
        doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(apriori_bound(BoundKind::kAprioriNonsubmodular, half, 1).value ==
        doctest::Approx(0.125).epsilon(1e-15));
  CHECK(apriori_bound(BoundKind::kAprioriNonsubmodular, half, 2).value ==
        doctest::Approx(0.03125).epsilon(1e-15));

  // Formula fidelity: the report reproduces from its components exactly.
  BoundReport report = apriori_bound(BoundKind::kAprioriSubmodular, half, 2);
  CHECK(report.value == bound_formula(report.kind, report.components));
}

TEST_CASE("greedy reference: hand trace and bait-guess identity") {
  auto coverage = coverage_abc();
  Budgets budgets = Budgets::uniform(1, 2, 1);
  EpisodeTrace trace =
      run_episode(coverage.obj, *coverage.grounds, budgets,
                  SelectorKind::kRam, AttackerKind::kWorstCase, /*seed=*/0);
  std::vector<ElementSet> baits = {trace.steps[0].bait};
  SelectionSequence reference =
      greedy_reference(coverage.obj, *coverage.grounds, budgets, baits);
  CHECK(reference.set_at(1) == ElementSet{1});

  // When the removal hits the bait exactly, the greedy reference coincides
  // with the surviving greedy parts.
  CHECK(trace.steps[0].removed == trace.steps[0].bait);
  CHECK(reference.set_at(1) == trace.steps[0].greedy_part);
}

TEST_CASE("a posteriori bound: coverage example at kappa = 1") {
  auto coverage = coverage_abc();
  Budgets budgets = Budgets::uniform(1, 2, 1);
  EpisodeTrace trace =
      run_episode(coverage.obj, *coverage.grounds, budgets,
                  SelectorKind::kRam, AttackerKind::kWorstCase, /*seed=*/0);
  CurvatureReport curvature = kappa(coverage.obj, coverage.grounds->all_ids());
  REQUIRE(curvature.value == 1.0);
  std::vector<ElementSet> baits = {trace.steps[0].bait};
  SelectionSequence reference =
      greedy_reference(coverage.obj, *coverage.grounds, budgets, baits);
  BoundReport bound = aposteriori_bound(coverage.obj, trace, 1, reference,
                                        curvature, /*submodular=*/true);
  // survivors value 2, f(M_1) = 2: bound = (1 - 1/e) * 1.
  CHECK(bound.value == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(bound.components.ratio_numerator == 2.0);
  CHECK(bound.components.ratio_denominator == 2.0);
  CHECK(bound.value == bound_formula(bound.kind, bound.components));

  // f* = 2, so f/f* = 1 >= bound.
  MinimaxResult optimal = optimal_value(coverage.obj, *coverage.grounds,
                                        budgets);
  CHECK(trace.steps[0].value_after_removal / optimal.value >= bound.value);
}

TEST_CASE("a posteriori bound: kappa = 1 halves the ratio for t > 1") {
  // Saturating two-step instance with kappa = 1.
  GroundSets grounds = GroundSets::uniform(2, 2);
  CoverageSpec spec;
  spec.universe_weights = {1.0, 1.0, 1.0};
  spec.covers = {{0, {0}}, {1, {0, 1}}, {2, {1, 2}}, {3, {2}}};
  ObjectiveHandle obj = make_coverage(grounds, spec);
  CurvatureReport curvature = kappa(obj, grounds.all_ids());
  REQUIRE(curvature.value == 1.0);
  Budgets budgets = Budgets::uniform(2, 1, 0);
  EpisodeTrace trace = run_episode(obj, grounds, budgets, SelectorKind::kRam,
                                   AttackerKind::kWorstCase, /*seed=*/0);
  std::vector<ElementSet> baits = {trace.steps[0].bait, trace.steps[1].bait};
  SelectionSequence reference = greedy_reference(obj, grounds, budgets, baits);
  BoundReport bound =
      aposteriori_bound(obj, trace, 2, reference, curvature, true);
  double ratio = bound.components.ratio_numerator /
                 bound.components.ratio_denominator;
  CHECK(bound.value == doctest::Approx(ratio / 2.0).epsilon(1e-15));
}

TEST_CASE("a posteriori bound: degenerate greedy reference") {
  auto coverage = coverage_abc();
  Budgets budgets = Budgets::uniform(1, 2, 2);  // delta = 0, M empty
  EpisodeTrace trace =
      run_episode(coverage.obj, *coverage.grounds, budgets,
                  SelectorKind::kRam, AttackerKind::kWorstCase, /*seed=*/0);
  CurvatureReport curvature = kappa(coverage.obj, coverage.grounds->all_ids());
  std::vector<ElementSet> baits = {trace.steps[0].bait};
  SelectionSequence reference =
      greedy_reference(coverage.obj, *coverage.grounds, budgets, baits);
  CHECK_THROWS_AS(aposteriori_bound(coverage.obj, trace, 1, reference,
                                    curvature, true),
                  DegenerateInstanceError);
}

TEST_CASE("regularized removal: modular thresholds") {
  auto modular = modular_abc();
  const ElementSet all = {0, 1, 2};

  RegularizedRemoval mid =
      regularized_min_removal(modular.obj, {}, all, 2.5);
  CHECK(mid.removal == ElementSet{0});  // only the weight-3 element pays off
  CHECK(mid.surviving_value == 3.0);
  CHECK(mid.objective_value == 5.5);

  RegularizedRemoval free_removal =
      regularized_min_removal(modular.obj, {}, all, 0.0);
  CHECK(free_removal.removal == all);
  CHECK(free_removal.surviving_value == 0.0);

  RegularizedRemoval expensive =
      regularized_min_removal(modular.obj, {}, all, 10.0);
  CHECK(expensive.removal.empty());
  CHECK(expensive.surviving_value == 6.0);

  // Tie at lambda == weight: smaller removal wins.
  RegularizedRemoval tie = regularized_min_removal(modular.obj, {}, all, 2.0);
  CHECK(tie.removal == ElementSet{0});
}

TEST_CASE("bisection: modular hand trace against the printed loop") {
  auto modular = modular_abc();
  const ElementSet all = {0, 1, 2};
  const double epsilon = 1e-6;
  BisectionState state =
      bisection_lambda(modular.obj, {}, all, 1, 10.0, epsilon);
  // |B(lambda)| drops below beta = 1 at lambda = 3 (the largest weight);
  // the lower bracket converges there from below.
  CHECK(state.lambda == doctest::Approx(3.0).epsilon(1e-5));
  CHECK(state.lambda < 3.0);
  CHECK(state.removal == ElementSet{0});
  CHECK(state.surviving_value == 3.0);
  // Guarantee: f-hat never exceeds the value after the worst-case removal.
  RemovalOutcome worst = worst_case_removal(modular.obj, {}, all, 1);
  CHECK(state.surviving_value <= worst.post_value + 1e-12);
  CHECK(state.iterations <= std::ceil(std::log2(10.0 / epsilon)));
  // |B| non-increasing over the probes, sorted by lambda.
  auto probes = state.visited;
  std::sort(probes.begin(), probes.end());
  for (std::size_t i = 1; i < probes.size(); ++i) {
    CHECK(probes[i].second <= probes[i - 1].second);
  }
}

TEST_CASE("bisection: bracket preconditions") {
  auto modular = modular_abc();
  const ElementSet all = {0, 1, 2};
  // u0 = 1 keeps two elements worth removing: |B(u0)| = 2 >= beta.
  CHECK_THROWS_AS(bisection_lambda(modular.obj, {}, all, 1, 1.0, 1e-6),
                  ArgumentError);
  CHECK_THROWS_AS(bisection_lambda(modular.obj, {}, all, 0, 10.0, 1e-6),
                  ArgumentError);
  // The default upper bracket always satisfies the precondition.
  double u0 = default_bisection_upper(modular.obj, {}, all);
  CHECK(u0 == 7.0);
  CHECK_NOTHROW(bisection_lambda(modular.obj, {}, all, 3, u0, 1e-6));
}

TEST_CASE("prefailure bound: modular instance and ordering vs a posteriori") {
  auto modular = modular_abc();
  Budgets budgets = Budgets::uniform(1, 3, 1);
  EpisodeTrace trace =
      run_episode(modular.obj, *modular.grounds, budgets, SelectorKind::kRam,
                  AttackerKind::kWorstCase, /*seed=*/0);
  CurvatureReport curvature = kappa(modular.obj, modular.grounds->all_ids());
  CHECK(curvature.value == 0.0);
  std::vector<ElementSet> baits = {trace.steps[0].bait};
  SelectionSequence reference =
      greedy_reference(modular.obj, *modular.grounds, budgets, baits);

  SelectionSequence history;
  double u0 = default_bisection_upper(modular.obj, history,
                                      trace.steps[0].selected);
  std::vector<BisectionState> bisections = {bisection_lambda(
      modular.obj, history, trace.steps[0].selected, 1, u0, 1e-6)};

  BoundReport pre = prefailure_bound(modular.obj, bisections, 1, reference,
                                     curvature, /*submodular=*/true);
  BoundReport post = aposteriori_bound(modular.obj, trace, 1, reference,
                                       curvature, /*submodular=*/true);
  // kappa = 0 at t = 1: the curvature factor is the limit value 1.
  CHECK(pre.value ==
        pre.components.ratio_numerator / pre.components.ratio_denominator);
  CHECK(pre.value <= post.value + 1e-12);
  CHECK(bisections[0].surviving_value <=
        trace.steps[0].value_after_removal + 1e-12);
}

TEST_CASE("curvature inequality checks: hand instances") {
  // Modular: equality in the union-vs-sums inequality at c = 0.
  auto modular = modular_abc();
  Rng rng(17);
  auto violations = check_curvature_inequalities(
      modular.obj, modular.grounds->all_ids(), 0.0, 500, rng);
  CHECK(violations.empty());

  // The 2-element c = 0.5 instance satisfies the exchange inequality:
  // 1 + 0.5 * 1 >= 0.5 * 1.5 + 0.
  GroundSets grounds = GroundSets::uniform(1, 2);
  CoverageSpec spec;
  spec.universe_weights = {0.5, 0.5, 0.5};
  spec.covers = {{0, {0, 1}}, {1, {1, 2}}};
  ObjectiveHandle obj = make_coverage(grounds, spec);
  auto exhaustive =
      check_curvature_inequalities_exhaustive(obj, grounds.all_ids(), 0.5);
  CHECK(exhaustive.empty());

  // An overstated curvature must produce violations (the checks detect).
  auto broken =
      check_curvature_inequalities_exhaustive(obj, grounds.all_ids(), 0.0);
  CHECK(!broken.empty());
}

TEST_CASE("selection-chain inequalities on exhaustive instances") {
  ScenarioConfig config;
  config.kind = ScenarioKind::kSynthetic;
  config.horizon = 2;
  config.synthetic_per_step = 3;
  config.alpha = 2;
  config.beta = 1;
  for (std::uint64_t seed : {31ull, 32ull, 33ull}) {
    for (const char* family : {"coverage", "modular"}) {
      config.synthetic_objective = family;
      ScenarioInstance inst = generate_scenario(seed, config);
      CurvatureReport c = total_curvature(
          inst.objective, inst.grounds->all_ids(), CurvatureMode::kExact, 0,
          nullptr);
      auto violations = check_selection_inequalities(
          inst.objective, *inst.grounds, inst.budgets, c.value);
      CHECK(violations.empty());
    }
  }
}

TEST_CASE("combined inequality runner is clean on a random instance") {
  ScenarioConfig config;
  config.kind = ScenarioKind::kSynthetic;
  config.horizon = 1;
  config.synthetic_per_step = 5;
  config.alpha = 3;
  config.beta = 1;
  ScenarioInstance inst = generate_scenario(404, config);
  CurvatureReport c = total_curvature(inst.objective,
                                      inst.grounds->all_ids(),
                                      CurvatureMode::kExact, 0, nullptr);
  Rng rng(405);
  auto violations = check_all_inequalities(inst.objective, *inst.grounds,
                                          inst.budgets, c.value, 1000, rng);
  CHECK(violations.empty());
}
