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

#include "rsm/objectives.hpp"

#include <string>

#include "rsm/errors.hpp"

namespace rsm {

ObjectiveHandle make_modular(const GroundSets& grounds,
                             const ModularSpec& spec) {
  for (const auto& [id, w] : spec.weights) {
    if (w < 0.0) {
      throw ArgumentError("modular objective: negative weight for element " +
                          std::to_string(id));
    }
    grounds.step_of(id);  // must be a declared element
  }
  auto weights = spec.weights;
  auto raw = [weights](const SelectionSequence& seq) {
    double total = 0.0;
    for (const ElementSet& set : seq.sets()) {
      for (GlobalId id : set) {
        auto it = weights.find(id);
        total += (it == weights.end()) ? 0.0 : it->second;
      }
    }
    return total;
  };
  return ObjectiveHandle("modular", &grounds, std::move(raw),
                         /*submodular=*/true);
}

ObjectiveHandle make_coverage(const GroundSets& grounds,
                              const CoverageSpec& spec) {
  const int universe = static_cast<int>(spec.universe_weights.size());
  for (double w : spec.universe_weights) {
    if (w < 0.0) throw ArgumentError("coverage objective: negative item weight");
  }
  for (const auto& [id, items] : spec.covers) {
    grounds.step_of(id);
    for (int item : items) {
      if (item < 0 || item >= universe) {
        throw ArgumentError("coverage objective: element " +
                            std::to_string(id) +
                            " references unknown universe item " +
                            std::to_string(item));
      }
    }
  }
  auto weights = spec.universe_weights;
  auto covers = spec.covers;
  auto raw = [weights, covers](const SelectionSequence& seq) {
    std::vector<char> covered(weights.size(), 0);
    for (const ElementSet& set : seq.sets()) {
      for (GlobalId id : set) {
        auto it = covers.find(id);
        if (it == covers.end()) continue;
        for (int item : it->second) covered[item] = 1;
      }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (covered[i]) total += weights[i];
    }
    return total;
  };
  return ObjectiveHandle("coverage", &grounds, std::move(raw),
                         /*submodular=*/true);
}

}  // namespace rsm
