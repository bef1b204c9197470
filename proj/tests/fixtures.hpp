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

//
// Small hand-checkable instances shared across the tests.
//

#pragma once

#include <memory>

#include "rsm/objective.hpp"
#include "rsm/objectives.hpp"
#include "rsm/types.hpp"

namespace rsm::testing {

struct Instance {
  std::unique_ptr<GroundSets> grounds;
  ObjectiveHandle obj;
};

// Weights {0: 3, 1: 2} at a single step.
inline Instance modular_ab() {
  auto grounds = std::make_unique<GroundSets>(GroundSets::uniform(1, 2));
  ModularSpec spec;
  spec.weights = {{0, 3.0}, {1, 2.0}};
  ObjectiveHandle obj = make_modular(*grounds, spec);
  return Instance{std::move(grounds), std::move(obj)};
}

// Weights {0: 3, 1: 2, 2: 1} at a single step.
inline Instance modular_abc() {
  auto grounds = std::make_unique<GroundSets>(GroundSets::uniform(1, 3));
  ModularSpec spec;
  spec.weights = {{0, 3.0}, {1, 2.0}, {2, 1.0}};
  ObjectiveHandle obj = make_modular(*grounds, spec);
  return Instance{std::move(grounds), std::move(obj)};
}

// Unit-weight coverage: 0 -> {u1, u2}, 1 -> {u2, u3}.
inline Instance coverage_ab() {
  auto grounds = std::make_unique<GroundSets>(GroundSets::uniform(1, 2));
  CoverageSpec spec;
  spec.universe_weights = {1.0, 1.0, 1.0};
  spec.covers = {{0, {0, 1}}, {1, {1, 2}}};
  ObjectiveHandle obj = make_coverage(*grounds, spec);
  return Instance{std::move(grounds), std::move(obj)};
}

// Unit-weight coverage: 0 -> {u1, u2}, 1 -> {u2, u3}, 2 -> {u3}.
inline Instance coverage_abc() {
  auto grounds = std::make_unique<GroundSets>(GroundSets::uniform(1, 3));
  CoverageSpec spec;
  spec.universe_weights = {1.0, 1.0, 1.0};
  spec.covers = {{0, {0, 1}}, {1, {1, 2}}, {2, {2}}};
  ObjectiveHandle obj = make_coverage(*grounds, spec);
  return Instance{std::move(grounds), std::move(obj)};
}

inline SelectionSequence seq_of(std::vector<ElementSet> sets) {
  return SelectionSequence(std::move(sets));
}

}  // namespace rsm::testing
