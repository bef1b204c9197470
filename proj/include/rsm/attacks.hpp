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
// Removal models: exact worst-case (enumeration), greedy, and random. An
// attacker sees the surviving history and the current selection, never
// future steps.
//

#pragma once

#include <cstdint>

#include "rsm/objective.hpp"
#include "rsm/rng.hpp"
#include "rsm/types.hpp"

namespace rsm {

struct RemovalOutcome {
  ElementSet removed;       // B_t, |B_t| <= beta_t, subset of A_t
  double post_value = 0.0;  // f(survivors_history, A_t \ B_t)
};

// Exact minimizer over all subsets of `selected` with size <= beta.
// Ties go to the lexicographically smallest removal in id order.
// `enumeration_cap` bounds the number of candidate subsets.
RemovalOutcome worst_case_removal(const ObjectiveHandle& obj,
                                  const SelectionSequence& survivors_history,
                                  const ElementSet& selected, int beta,
                                  std::int64_t enumeration_cap = 1000000);

// beta rounds, each removing the single element whose removal minimizes the
// surviving value; ties to the smallest id.
RemovalOutcome greedy_removal(const ObjectiveHandle& obj,
                              const SelectionSequence& survivors_history,
                              const ElementSet& selected, int beta);

// Uniform beta-subset of the selection.
RemovalOutcome random_removal(const ObjectiveHandle& obj,
                              const SelectionSequence& survivors_history,
                              const ElementSet& selected, int beta, Rng& rng);

}  // namespace rsm
