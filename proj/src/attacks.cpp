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

#include "rsm/attacks.hpp"

#include <string>

#include "rsm/errors.hpp"
#include "rsm/subsets.hpp"

namespace rsm {

RemovalOutcome worst_case_removal(const ObjectiveHandle& obj,
                                  const SelectionSequence& survivors_history,
                                  const ElementSet& selected, int beta,
                                  std::int64_t enumeration_cap) {
  const int n = static_cast<int>(selected.size());
  if (beta < 0 || beta > n) {
    throw ArgumentError("worst-case removal: beta out of range");
  }
  std::int64_t candidates = count_subsets_up_to(n, beta);
  if (candidates > enumeration_cap) {
    throw CapacityError("worst-case removal: " + std::to_string(candidates) +
                        " candidate subsets exceed the cap of " +
                        std::to_string(enumeration_cap));
  }
  const int step = survivors_history.length() + 1;
  RemovalOutcome best;
  bool first = true;
  // Monotonicity makes a full-budget removal optimal, but every size is
  // scanned so the result stays exact for any evaluator.
  for_each_subset_up_to(selected, beta, [&](const ElementSet& removal) {
    SelectionSequence seq =
        survivors_history.with_merged(step, set_minus(selected, removal));
    double value = obj.evaluate(seq);
    if (first || value < best.post_value ||
        (value == best.post_value && set_lex_less(removal, best.removed))) {
      best.removed = removal;
      best.post_value = value;
      first = false;
    }
  });
  return best;
}

RemovalOutcome greedy_removal(const ObjectiveHandle& obj,
                              const SelectionSequence& survivors_history,
                              const ElementSet& selected, int beta) {
  const int n = static_cast<int>(selected.size());
  if (beta < 0 || beta > n) {
    throw ArgumentError("greedy removal: beta out of range");
  }
  const int step = survivors_history.length() + 1;
  ElementSet removed;
  ElementSet remaining = selected;
  double post_value =
      obj.evaluate(survivors_history.with_merged(step, remaining));
  for (int round = 0; round < beta; ++round) {
    GlobalId best_id = -1;
    double best_value = 0.0;
    bool first = true;
    for (GlobalId id : remaining) {  // canonical order; first win = smallest id
      SelectionSequence seq =
          survivors_history.with_merged(step, set_without(remaining, id));
      double value = obj.evaluate(seq);
      if (first || value < best_value) {
        best_id = id;
        best_value = value;
        first = false;
      }
    }
    removed = set_with(removed, best_id);
    remaining = set_without(remaining, best_id);
    post_value = best_value;
  }
  return RemovalOutcome{removed, post_value};
}

RemovalOutcome random_removal(const ObjectiveHandle& obj,
                              const SelectionSequence& survivors_history,
                              const ElementSet& selected, int beta, Rng& rng) {
  const int n = static_cast<int>(selected.size());
  if (beta < 0 || beta > n) {
    throw ArgumentError("random removal: beta out of range");
  }
  ElementSet removed = rng.sample_subset(selected, beta);
  const int step = survivors_history.length() + 1;
  double post_value = obj.evaluate(
      survivors_history.with_merged(step, set_minus(selected, removed)));
  return RemovalOutcome{removed, post_value};
}

}  // namespace rsm
