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
// Synthetic set functions used as exhaustively checkable oracles: modular
// (weighted sums) and weighted coverage.
//

#pragma once

#include <map>
#include <vector>

#include "rsm/objective.hpp"
#include "rsm/types.hpp"

namespace rsm {

// f(A) = sum of per-element weights; curvature 0.
struct ModularSpec {
  std::map<GlobalId, double> weights;  // non-negative
};

// f(A) = total weight of the universe items covered by A's elements;
// monotone submodular.
struct CoverageSpec {
  std::vector<double> universe_weights;            // non-negative, by item
  std::map<GlobalId, std::vector<int>> covers;     // element -> item indices
};

ObjectiveHandle make_modular(const GroundSets& grounds,
                             const ModularSpec& spec);
ObjectiveHandle make_coverage(const GroundSets& grounds,
                              const CoverageSpec& spec);

}  // namespace rsm
