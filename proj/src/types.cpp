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

#include "rsm/types.hpp"

#include <sstream>

namespace rsm {

ElementSet set_with(const ElementSet& set, GlobalId id) {
  ElementSet out = set;
  auto it = std::lower_bound(out.begin(), out.end(), id);
  if (it == out.end() || *it != id) out.insert(it, id);
  return out;
}

ElementSet set_without(const ElementSet& set, GlobalId id) {
  ElementSet out = set;
  auto it = std::lower_bound(out.begin(), out.end(), id);
  if (it != out.end() && *it == id) out.erase(it);
  return out;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

ElementSet set_minus(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

ElementSet set_intersect(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::string set_to_string(const ElementSet& set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0) os << ',';
    os << set[i];
  }
  os << '}';
  return os.str();
}

ElementSet make_set(std::vector<GlobalId> ids) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw StructuralError("duplicate element id in set");
  }
  return ids;
}

GroundSets::GroundSets(int horizon, std::vector<std::vector<Element>> per_step)
    : horizon_(horizon), per_step_(std::move(per_step)) {
  if (horizon_ <= 0) throw StructuralError("horizon must be positive");
  if (static_cast<int>(per_step_.size()) != horizon_) {
    throw StructuralError("ground sets: per-step list count != horizon");
  }
  per_step_ids_.resize(per_step_.size());
  for (int t = 1; t <= horizon_; ++t) {
    auto& list = per_step_[t - 1];
    if (list.empty()) {
      throw StructuralError("ground set at step " + std::to_string(t) +
                            " is empty");
    }
    ElementSet ids;
    ids.reserve(list.size());
    for (const Element& e : list) {
      if (e.step != t) {
        throw StructuralError("element " + std::to_string(e.global_id) +
                              " tagged with step " + std::to_string(e.step) +
                              " stored at step " + std::to_string(t));
      }
      ids.push_back(e.global_id);
      id_to_index_.emplace_back(e.global_id, t);
    }
    std::sort(ids.begin(), ids.end());
    per_step_ids_[t - 1] = std::move(ids);
  }
  std::sort(id_to_index_.begin(), id_to_index_.end());
  for (std::size_t i = 1; i < id_to_index_.size(); ++i) {
    if (id_to_index_[i].first == id_to_index_[i - 1].first) {
      throw StructuralError("global id " +
                            std::to_string(id_to_index_[i].first) +
                            " appears in more than one ground set");
    }
  }
  all_ids_.reserve(id_to_index_.size());
  for (const auto& [id, step] : id_to_index_) all_ids_.push_back(id);
}

GroundSets GroundSets::uniform(int horizon, int per_step_size) {
  std::vector<std::vector<Element>> per_step(horizon);
  GlobalId next = 0;
  for (int t = 1; t <= horizon; ++t) {
    for (int i = 0; i < per_step_size; ++i) {
      per_step[t - 1].push_back(Element{t, i, next++});
    }
  }
  return GroundSets(horizon, std::move(per_step));
}

const std::vector<Element>& GroundSets::elements_at(int step) const {
  if (step < 1 || step > horizon_) {
    throw StructuralError("step " + std::to_string(step) + " out of range");
  }
  return per_step_[step - 1];
}

const ElementSet& GroundSets::ids_at(int step) const {
  if (step < 1 || step > horizon_) {
    throw StructuralError("step " + std::to_string(step) + " out of range");
  }
  return per_step_ids_[step - 1];
}

int GroundSets::step_of(GlobalId id) const {
  auto it = std::lower_bound(id_to_index_.begin(), id_to_index_.end(),
                             std::make_pair(id, 0));
  if (it == id_to_index_.end() || it->first != id) {
    throw StructuralError("unknown element id " + std::to_string(id));
  }
  return it->second;
}

const Element& GroundSets::element(GlobalId id) const {
  int step = step_of(id);
  for (const Element& e : per_step_[step - 1]) {
    if (e.global_id == id) return e;
  }
  throw StructuralError("unknown element id " + std::to_string(id));
}

bool GroundSets::contains(GlobalId id) const {
  auto it = std::lower_bound(id_to_index_.begin(), id_to_index_.end(),
                             std::make_pair(id, 0));
  return it != id_to_index_.end() && it->first == id;
}

Budgets Budgets::uniform(int horizon, int a, int b) {
  Budgets out;
  out.alpha.assign(horizon, a);
  out.beta.assign(horizon, b);
  return out;
}

void Budgets::validate(const GroundSets& grounds) const {
  if (static_cast<int>(alpha.size()) != grounds.horizon() ||
      static_cast<int>(beta.size()) != grounds.horizon()) {
    throw ArgumentError("budgets length != horizon");
  }
  for (int t = 1; t <= grounds.horizon(); ++t) {
    int a = alpha[t - 1], b = beta[t - 1];
    int n = static_cast<int>(grounds.ids_at(t).size());
    if (!(0 <= b && b <= a && a <= n)) {
      throw ArgumentError("budget violation at step " + std::to_string(t) +
                          ": need 0 <= beta <= alpha <= |V_t|, got beta=" +
                          std::to_string(b) + " alpha=" + std::to_string(a) +
                          " |V_t|=" + std::to_string(n));
    }
  }
}

const ElementSet& SelectionSequence::set_at(int step) const {
  if (step < 1 || step > length()) {
    throw StructuralError("sequence step " + std::to_string(step) +
                          " out of range");
  }
  return sets_[step - 1];
}

SelectionSequence SelectionSequence::padded_to(int length) const {
  SelectionSequence out = *this;
  while (out.length() < length) out.push_step({});
  return out;
}

SelectionSequence SelectionSequence::with_merged(int step,
                                                 const ElementSet& extra) const {
  SelectionSequence out = padded_to(step);
  out.sets_[step - 1] = set_union(out.sets_[step - 1], extra);
  return out;
}

ElementSet SelectionSequence::flatten() const {
  ElementSet out;
  for (const ElementSet& s : sets_) out = set_union(out, s);
  return out;
}

SelectionSequence sequence_from_set(const GroundSets& grounds,
                                    const ElementSet& set) {
  std::vector<ElementSet> sets(grounds.horizon());
  for (GlobalId id : set) sets[grounds.step_of(id) - 1].push_back(id);
  for (ElementSet& s : sets) std::sort(s.begin(), s.end());
  return SelectionSequence(std::move(sets));
}

}  // namespace rsm
