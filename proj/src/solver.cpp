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

#include "rsm/solver.hpp"

#include <algorithm>
#include <utility>

#include "rsm/attacks.hpp"
#include "rsm/errors.hpp"
#include "rsm/subsets.hpp"

namespace rsm {

StepPlan ram_step(const ObjectiveHandle& obj,
                  const SelectionSequence& survivors_history,
                  const ElementSet& candidates, int alpha, int beta) {
  const int n = static_cast<int>(candidates.size());
  if (!(0 <= beta && beta <= alpha && alpha <= n)) {
    throw ArgumentError("robust step: need 0 <= beta <= alpha <= |V_t|");
  }
  const long long calls_before = obj.eval_count();
  StepPlan plan;
  if (beta > 0) {
    // Bait: top-beta singleton values. One oracle call per candidate; the
    // cache keeps the accounting exact.
    std::vector<std::pair<double, GlobalId>> singles;
    singles.reserve(n);
    for (GlobalId id : candidates) {
      singles.emplace_back(obj.singleton_value(id), id);
    }
    std::sort(singles.begin(), singles.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (int i = 0; i < beta; ++i) plan.bait.push_back(singles[i].second);
    std::sort(plan.bait.begin(), plan.bait.end());
  }
  const int step = survivors_history.length() + 1;
  ElementSet pool = set_minus(candidates, plan.bait);
  for (int round = 0; round < alpha - beta; ++round) {
    GlobalId best_id = -1;
    double best_value = 0.0;
    bool first = true;
    for (GlobalId id : pool) {  // ascending ids: first win = smallest id
      SelectionSequence seq = survivors_history.with_merged(
          step, set_with(plan.greedy_part, id));
      double value = obj.evaluate(seq);
      if (first || value > best_value) {
        best_id = id;
        best_value = value;
        first = false;
      }
    }
    plan.greedy_part = set_with(plan.greedy_part, best_id);
    pool = set_without(pool, best_id);
  }
  plan.selected = set_union(plan.bait, plan.greedy_part);
  plan.oracle_calls = obj.eval_count() - calls_before;
  const long long cap =
      static_cast<long long>(n) + static_cast<long long>(alpha - beta) * n;
  if (plan.oracle_calls > cap) {
    throw ContractError("robust step used " +
                        std::to_string(plan.oracle_calls) +
                        " oracle calls, above its bound of " +
                        std::to_string(cap));
  }
  return plan;
}

ElementSet greedy_step(const ObjectiveHandle& obj,
                       const SelectionSequence& prior_choices,
                       const ElementSet& candidates, int delta) {
  if (delta < 0 || delta > static_cast<int>(candidates.size())) {
    throw ArgumentError("greedy step: delta out of range");
  }
  const int step = prior_choices.length() + 1;
  ElementSet chosen;
  ElementSet pool = candidates;
  for (int round = 0; round < delta; ++round) {
    GlobalId best_id = -1;
    double best_value = 0.0;
    bool first = true;
    for (GlobalId id : pool) {
      SelectionSequence seq =
          prior_choices.with_merged(step, set_with(chosen, id));
      double value = obj.evaluate(seq);
      if (first || value > best_value) {
        best_id = id;
        best_value = value;
        first = false;
      }
    }
    chosen = set_with(chosen, best_id);
    pool = set_without(pool, best_id);
  }
  return chosen;
}

ElementSet random_step(Rng& rng, const ElementSet& candidates, int alpha) {
  if (alpha < 0 || alpha > static_cast<int>(candidates.size())) {
    throw ArgumentError("random step: alpha out of range");
  }
  return rng.sample_subset(candidates, alpha);
}

SelectorKind selector_from_name(const std::string& name) {
  if (name == "ram") return SelectorKind::kRam;
  if (name == "greedy") return SelectorKind::kGreedy;
  if (name == "random") return SelectorKind::kRandom;
  throw ArgumentError("unknown selector '" + name + "'");
}

AttackerKind attacker_from_name(const std::string& name) {
  if (name == "worst") return AttackerKind::kWorstCase;
  if (name == "greedy") return AttackerKind::kGreedy;
  if (name == "random") return AttackerKind::kRandom;
  throw ArgumentError("unknown attacker '" + name + "'");
}

std::string to_string(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::kRam: return "ram";
    case SelectorKind::kGreedy: return "greedy";
    case SelectorKind::kRandom: return "random";
  }
  return "?";
}

std::string to_string(AttackerKind kind) {
  switch (kind) {
    case AttackerKind::kWorstCase: return "worst";
    case AttackerKind::kGreedy: return "greedy";
    case AttackerKind::kRandom: return "random";
  }
  return "?";
}

SelectionSequence EpisodeTrace::survivors_prefix(int t) const {
  SelectionSequence seq;
  for (int s = 1; s <= t; ++s) seq.push_step(steps[s - 1].survivors);
  return seq;
}

SelectionSequence EpisodeTrace::selected_prefix(int t) const {
  SelectionSequence seq;
  for (int s = 1; s <= t; ++s) seq.push_step(steps[s - 1].selected);
  return seq;
}

EpisodeTrace run_episode(const ObjectiveHandle& obj, const GroundSets& grounds,
                         const Budgets& budgets, SelectorKind selector,
                         AttackerKind attacker, std::uint64_t seed,
                         const EpisodeLimits& limits) {
  budgets.validate(grounds);
  Rng rng(seed);
  EpisodeTrace trace;
  trace.selector = to_string(selector);
  trace.attacker = to_string(attacker);
  trace.seed = seed;
  SelectionSequence survivors;
  for (int t = 1; t <= grounds.horizon(); ++t) {
    const ElementSet& candidates = grounds.ids_at(t);
    const int alpha = budgets.alpha[t - 1];
    const int beta = budgets.beta[t - 1];
    StepRecord record;
    long long before = obj.eval_count();
    switch (selector) {
      case SelectorKind::kRam: {
        StepPlan plan = ram_step(obj, survivors, candidates, alpha, beta);
        record.bait = plan.bait;
        record.greedy_part = plan.greedy_part;
        record.selected = plan.selected;
        break;
      }
      case SelectorKind::kGreedy:
        record.selected = greedy_step(obj, survivors, candidates, alpha);
        record.greedy_part = record.selected;
        break;
      case SelectorKind::kRandom:
        record.selected = random_step(rng, candidates, alpha);
        record.greedy_part = record.selected;
        break;
    }
    record.selector_oracle_calls = obj.eval_count() - before;

    before = obj.eval_count();
    RemovalOutcome outcome;
    switch (attacker) {
      case AttackerKind::kWorstCase:
        outcome = worst_case_removal(obj, survivors, record.selected, beta,
                                     limits.removal_enumeration_cap);
        break;
      case AttackerKind::kGreedy:
        outcome = greedy_removal(obj, survivors, record.selected, beta);
        break;
      case AttackerKind::kRandom:
        outcome = random_removal(obj, survivors, record.selected, beta, rng);
        break;
    }
    record.attacker_oracle_calls = obj.eval_count() - before;
    record.removed = outcome.removed;
    record.survivors = set_minus(record.selected, outcome.removed);
    record.value_after_removal = outcome.post_value;
    survivors.push_step(record.survivors);
    trace.steps.push_back(std::move(record));
  }
  return trace;
}

namespace {

struct MinimaxSearch {
  const ObjectiveHandle& obj;
  const GroundSets& grounds;
  const Budgets& budgets;
  int horizon;
  std::int64_t node_budget;
  std::int64_t nodes = 0;

  void charge_node() {
    if (++nodes > node_budget) {
      throw CapacityError("minimax search exceeded its node budget of " +
                          std::to_string(node_budget));
    }
  }

  // Max over A_t of (min over B_t of the continuation value).
  double max_step(int t, const SelectionSequence& survivors,
                  ElementSet* best_first_move) {
    if (t > horizon) return obj.evaluate(survivors);
    const ElementSet& candidates = grounds.ids_at(t);
    const int alpha = budgets.alpha[t - 1];
    const int beta = budgets.beta[t - 1];
    double best = 0.0;
    bool first = true;
    for_each_subset_of_size(candidates, alpha, [&](const ElementSet& chosen) {
      double worst = 0.0;
      bool worst_first = true;
      for_each_subset_up_to(chosen, beta, [&](const ElementSet& removal) {
        charge_node();
        SelectionSequence next = survivors;
        next.push_step(set_minus(chosen, removal));
        double value = max_step(t + 1, next, nullptr);
        if (worst_first || value < worst) {
          worst = value;
          worst_first = false;
        }
      });
      if (first || worst > best) {
        best = worst;
        first = false;
        if (best_first_move != nullptr) *best_first_move = chosen;
      }
    });
    if (first) {
      throw ArgumentError("minimax search: no feasible selection at step " +
                          std::to_string(t));
    }
    return best;
  }
};

}  // namespace

MinimaxResult optimal_value(const ObjectiveHandle& obj,
                            const GroundSets& grounds, const Budgets& budgets,
                            std::int64_t node_budget, int horizon) {
  budgets.validate(grounds);
  if (horizon <= 0) horizon = grounds.horizon();
  if (horizon > grounds.horizon()) {
    throw ArgumentError("minimax horizon exceeds the ground-set horizon");
  }
  MinimaxSearch search{obj, grounds, budgets, horizon, node_budget};
  MinimaxResult result;
  result.value = search.max_step(1, SelectionSequence{},
                                 &result.optimal_first_move);
  result.node_count = search.nodes;
  return result;
}

}  // namespace rsm
