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
// Ground-set bookkeeping: elements tagged with their time step, per-step
// ground sets, selection/removal budgets, and selection sequences.
//
// Elements are identified by a global id that is unique across the whole
// horizon; every set is kept as a vector of ids sorted ascending, which is
// the canonical order used for all deterministic tie-breaking.
//

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "rsm/errors.hpp"

namespace rsm {

using GlobalId = std::int64_t;

// One selectable item. Steps are 1-based; elements of different steps are
// distinct even if they model the same physical device.
struct Element {
  int step = 0;
  int local_index = 0;
  GlobalId global_id = -1;
};

// A set of elements in canonical (ascending global id) order.
using ElementSet = std::vector<GlobalId>;

inline bool set_contains(const ElementSet& set, GlobalId id) {
  return std::binary_search(set.begin(), set.end(), id);
}

// Returns `set` with `id` inserted (no-op if already present).
ElementSet set_with(const ElementSet& set, GlobalId id);

// Returns `set` without `id` (no-op if absent).
ElementSet set_without(const ElementSet& set, GlobalId id);

ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_minus(const ElementSet& a, const ElementSet& b);
ElementSet set_intersect(const ElementSet& a, const ElementSet& b);

// Canonical lexicographic order on id vectors; used wherever the spec of an
// operation breaks ties by "lexicographically smallest" set.
inline bool set_lex_less(const ElementSet& a, const ElementSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string set_to_string(const ElementSet& set);

// Sorts and rejects duplicates.
ElementSet make_set(std::vector<GlobalId> ids);

// The per-step ground sets V_1..V_T. Per-step sets are pairwise disjoint by
// global id and non-empty.
class GroundSets {
 public:
  GroundSets(int horizon, std::vector<std::vector<Element>> per_step);

  // Convenience: horizon steps, each with `per_step_size` elements, ids
  // assigned sequentially from 0 (step 1 first).
  static GroundSets uniform(int horizon, int per_step_size);

  int horizon() const { return horizon_; }
  const std::vector<Element>& elements_at(int step) const;
  // Ids of step `step` (1-based), sorted ascending.
  const ElementSet& ids_at(int step) const;
  // All ids across the horizon, sorted ascending.
  const ElementSet& all_ids() const { return all_ids_; }
  int step_of(GlobalId id) const;  // throws StructuralError if unknown
  const Element& element(GlobalId id) const;
  bool contains(GlobalId id) const;

 private:
  int horizon_;
  std::vector<std::vector<Element>> per_step_;
  std::vector<ElementSet> per_step_ids_;
  ElementSet all_ids_;
  std::vector<std::pair<GlobalId, int>> id_to_index_;  // sorted by id
};

// Selection sizes alpha_t and removal budgets beta_t, 0 <= beta <= alpha <=
// |V_t| for every step.
struct Budgets {
  std::vector<int> alpha;
  std::vector<int> beta;

  static Budgets uniform(int horizon, int alpha, int beta);
  void validate(const GroundSets& grounds) const;
  int horizon() const { return static_cast<int>(alpha.size()); }
};

// An ordered tuple (X_1, ..., X_l) of per-step sets, l <= T. Trailing steps
// are implicitly empty; set_at(t) is 1-based.
class SelectionSequence {
 public:
  SelectionSequence() = default;
  explicit SelectionSequence(std::vector<ElementSet> sets)
      : sets_(std::move(sets)) {}

  int length() const { return static_cast<int>(sets_.size()); }
  const ElementSet& set_at(int step) const;
  const std::vector<ElementSet>& sets() const { return sets_; }

  // Appends one step's set.
  void push_step(ElementSet set) { sets_.push_back(std::move(set)); }
  // Returns a copy extended with empty steps up to `length`.
  SelectionSequence padded_to(int length) const;
  // Returns a copy with `extra` merged into step `step` (1-based; the
  // sequence is extended with empty steps if needed).
  SelectionSequence with_merged(int step, const ElementSet& extra) const;
  // Union of all per-step sets.
  ElementSet flatten() const;

  bool operator==(const SelectionSequence& other) const {
    return sets_ == other.sets_;
  }

 private:
  std::vector<ElementSet> sets_;
};

// Lifts a flat element set to the padded horizon-T sequence implied by the
// step tags of its elements.
SelectionSequence sequence_from_set(const GroundSets& grounds,
                                    const ElementSet& set);

}  // namespace rsm
