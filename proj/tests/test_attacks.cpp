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

#include "fixtures.hpp"
#include "rsm/attacks.hpp"
#include "rsm/errors.hpp"
#include "rsm/scenario.hpp"
#include "rsm/subsets.hpp"

using namespace rsm;
using rsm::testing::coverage_abc;
using rsm::testing::modular_abc;

TEST_CASE("worst-case removal: examples") {
  auto modular = modular_abc();
  RemovalOutcome outcome =
      worst_case_removal(modular.obj, {}, {0, 1, 2}, 2);
  CHECK(outcome.removed == ElementSet{0, 1});
  CHECK(outcome.post_value == 1.0);

  auto coverage = coverage_abc();
  RemovalOutcome cov = worst_case_removal(coverage.obj, {}, {0, 1}, 1);
  // Removing either of {0} or {1} leaves value 2; lexicographic tie-break.
  CHECK(cov.removed == ElementSet{0});
  CHECK(cov.post_value == 2.0);

  RemovalOutcome none = worst_case_removal(coverage.obj, {}, {0, 1}, 0);
  CHECK(none.removed.empty());
  CHECK(none.post_value == 3.0);

  CHECK_THROWS_AS(worst_case_removal(modular.obj, {}, {0, 1, 2}, 2,
                                     /*enumeration_cap=*/2),
                  CapacityError);
}

TEST_CASE("greedy removal: examples") {
  auto modular = modular_abc();
  RemovalOutcome outcome = greedy_removal(modular.obj, {}, {0, 1, 2}, 2);
  CHECK(outcome.removed == ElementSet{0, 1});
  CHECK(outcome.post_value == 1.0);

  RemovalOutcome none = greedy_removal(modular.obj, {}, {0, 1, 2}, 0);
  CHECK(none.removed.empty());
  CHECK(none.post_value == 6.0);
}

TEST_CASE("random removal: edge cases and golden reproducibility") {
  auto modular = modular_abc();
  Rng rng(3);
  RemovalOutcome all = random_removal(modular.obj, {}, {0, 1, 2}, 3, rng);
  CHECK(all.removed == ElementSet{0, 1, 2});
  CHECK(all.post_value == 0.0);
  RemovalOutcome none = random_removal(modular.obj, {}, {0, 1, 2}, 0, rng);
  CHECK(none.removed.empty());

  Rng a(41), b(41);
  RemovalOutcome ra = random_removal(modular.obj, {}, {0, 1, 2}, 1, a);
  RemovalOutcome rb = random_removal(modular.obj, {}, {0, 1, 2}, 1, b);
  CHECK(ra.removed == rb.removed);
  // Golden draw for the documented sampling scheme.
  CHECK(ra.removed == ElementSet{1});
  CHECK(ra.post_value == 4.0);
}

TEST_CASE("worst case is the exact minimum over attacks") {
  ScenarioConfig config;
  config.kind = ScenarioKind::kSynthetic;
  config.horizon = 1;
  config.synthetic_per_step = 5;
  for (std::uint64_t seed : {101ull, 102ull, 103ull, 104ull}) {
    for (const char* family : {"coverage", "modular"}) {
      config.synthetic_objective = family;
      config.alpha = 4;
      config.beta = 2;
      ScenarioInstance instance = generate_scenario(seed, config);
      ElementSet selected = {0, 1, 2, 3};
      RemovalOutcome worst =
          worst_case_removal(instance.objective, {}, selected, 2);
      RemovalOutcome greedy =
          greedy_removal(instance.objective, {}, selected, 2);
      Rng rng(seed);
      RemovalOutcome random =
          random_removal(instance.objective, {}, selected, 2, rng);
      CHECK(worst.post_value <= greedy.post_value + 1e-12);
      CHECK(worst.post_value <= random.post_value + 1e-12);

      // Exhaustive confirmation that nothing beats the enumerated minimum,
      // and that a full budget is never worse for the attacker.
      double manual_best = worst.post_value;
      for_each_subset_up_to(selected, 2, [&](const ElementSet& removal) {
        double value = instance.objective.evaluate_set(
            set_minus(selected, removal));
        CHECK(value >= worst.post_value - 1e-12);
        manual_best = std::min(manual_best, value);
      });
      CHECK(manual_best == worst.post_value);
      for (int smaller = 0; smaller < 2; ++smaller) {
        RemovalOutcome limited =
            worst_case_removal(instance.objective, {}, selected, smaller);
        CHECK(worst.post_value <= limited.post_value + 1e-12);
      }
    }
  }
}
