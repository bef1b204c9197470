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
// Defender-side algorithms. The robust step pairs a bait set (the budget's
// worth of top singleton-value elements, meant to absorb a worst-case
// removal) with a greedy set conditioned on the surviving history. Also
// here: the failure-free online greedy, a seeded random selector, the
// episode protocol alternating selector and attacker, and an exact
// brute-force minimax solver for tiny instances.
//

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsm/objective.hpp"
#include "rsm/rng.hpp"
#include "rsm/types.hpp"

namespace rsm {

// One robust step: selected = bait (size beta) union greedy part (size
// alpha - beta), disjoint.
struct StepPlan {
  ElementSet bait;         // S_{t,1}
  ElementSet greedy_part;  // S_{t,2}
  ElementSet selected;     // A_t
  long long oracle_calls = 0;
};

// Robust step at time t = survivors_history.length() + 1. Bait = the beta
// elements of candidates with the largest singleton values (ties: smaller
// id); greedy part = alpha - beta greedy rounds conditioned on the
// surviving history. Consumes at most |V_t| + (alpha - beta)|V_t| oracle
// calls.
StepPlan ram_step(const ObjectiveHandle& obj,
                  const SelectionSequence& survivors_history,
                  const ElementSet& candidates, int alpha, int beta);

// Failure-free greedy step: delta rounds over `candidates`, conditioned on
// `prior_choices`; ties to the smaller id.
ElementSet greedy_step(const ObjectiveHandle& obj,
                       const SelectionSequence& prior_choices,
                       const ElementSet& candidates, int delta);

// Uniform alpha-subset.
ElementSet random_step(Rng& rng, const ElementSet& candidates, int alpha);

enum class SelectorKind { kRam, kGreedy, kRandom };
enum class AttackerKind { kWorstCase, kGreedy, kRandom };

SelectorKind selector_from_name(const std::string& name);
AttackerKind attacker_from_name(const std::string& name);
std::string to_string(SelectorKind kind);
std::string to_string(AttackerKind kind);

// Per-step record of an episode.
struct StepRecord {
  ElementSet bait;        // empty for non-robust selectors
  ElementSet greedy_part; // equals selected for non-robust selectors
  ElementSet selected;    // A_t
  ElementSet removed;     // B_t
  ElementSet survivors;   // A_t \ B_t
  double value_after_removal = 0.0;  // f(survivors_{1:t})
  long long selector_oracle_calls = 0;
  long long attacker_oracle_calls = 0;
};

struct EpisodeTrace {
  std::vector<StepRecord> steps;
  std::string selector;
  std::string attacker;
  std::uint64_t seed = 0;

  // Surviving sets of steps 1..t as a sequence.
  SelectionSequence survivors_prefix(int t) const;
  // Selected sets of steps 1..t as a sequence.
  SelectionSequence selected_prefix(int t) const;
};

struct EpisodeLimits {
  std::int64_t removal_enumeration_cap = 1000000;
};

// Runs the T-step protocol: the selector chooses A_t given the surviving
// history, then the attacker removes B_t given the same history plus A_t.
// The selector never sees B_t before committing to A_t. `seed` drives every
// random draw of the episode and is recorded in the trace.
EpisodeTrace run_episode(const ObjectiveHandle& obj, const GroundSets& grounds,
                         const Budgets& budgets, SelectorKind selector,
                         AttackerKind attacker, std::uint64_t seed,
                         const EpisodeLimits& limits = {});

struct MinimaxResult {
  double value = 0.0;                 // the exact max-min value
  ElementSet optimal_first_move;      // an argmax A_1, for diagnostics
  std::int64_t node_count = 0;
};

// Exact value of the T-step max-min selection/removal game by depth-first
// recursion over (A_t, B_t) pairs. `horizon` truncates the game (0 = full
// horizon). Throws CapacityError once more than `node_budget` nodes are
// visited.
MinimaxResult optimal_value(const ObjectiveHandle& obj,
                            const GroundSets& grounds, const Budgets& budgets,
                            std::int64_t node_budget = 20000000,
                            int horizon = 0);

}  // namespace rsm
