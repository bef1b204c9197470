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

#include "rsm/objective.hpp"

#include <cmath>

namespace rsm {

namespace {

// Tolerance below which a (necessarily rounding-induced) negative value is
// clamped to zero instead of raising a contract error.
constexpr double kNegativeTol = -1e-9;

}  // namespace

ObjectiveHandle::ObjectiveHandle(std::string name, const GroundSets* grounds,
                                 Evaluator raw, bool submodular,
                                 BaselineCost baseline) {
  impl_ = std::make_shared<Impl>();
  impl_->name = std::move(name);
  impl_->grounds = grounds;
  impl_->raw = std::move(raw);
  impl_->submodular = submodular;
  impl_->baseline = std::move(baseline);
  impl_->raw_empty = impl_->raw(SelectionSequence{});
  if (std::isnan(impl_->raw_empty)) {
    throw ContractError("objective '" + impl_->name +
                        "': raw evaluator returned NaN on the empty sequence");
  }
}

double ObjectiveHandle::evaluate(const SelectionSequence& seq) const {
  const GroundSets& g = grounds();
  if (seq.length() > g.horizon()) {
    throw StructuralError("sequence length " + std::to_string(seq.length()) +
                          " exceeds horizon " + std::to_string(g.horizon()));
  }
  for (int t = 1; t <= seq.length(); ++t) {
    for (GlobalId id : seq.set_at(t)) {
      if (!g.contains(id) || g.step_of(id) != t) {
        throw StructuralError("element " + std::to_string(id) +
                              " does not belong to V_" + std::to_string(t));
      }
    }
  }
  impl_->eval_count.fetch_add(1, std::memory_order_relaxed);
  double value = impl_->raw(seq) - impl_->raw_empty;
  if (std::isnan(value)) {
    throw ContractError("objective '" + impl_->name + "' returned NaN");
  }
  if (value < 0.0) {
    if (value < kNegativeTol) {
      throw ContractError("objective '" + impl_->name +
                          "' returned negative value " +
                          std::to_string(value));
    }
    value = 0.0;
  }
  return value;
}

double ObjectiveHandle::evaluate_set(const ElementSet& set) const {
  return evaluate(sequence_from_set(grounds(), set));
}

double ObjectiveHandle::singleton_value(GlobalId v) const {
  int step = grounds().step_of(v);
  SelectionSequence seq;
  seq = seq.padded_to(step - 1);
  seq.push_step(ElementSet{v});
  return evaluate(seq);
}

double ObjectiveHandle::marginal(const SelectionSequence& base, int step,
                                 const ElementSet& extra) const {
  for (GlobalId id : extra) {
    if (base.length() >= step && set_contains(base.set_at(step), id)) {
      throw StructuralError("marginal: element " + std::to_string(id) +
                            " already present in base at step " +
                            std::to_string(step));
    }
  }
  double with = evaluate(base.with_merged(step, extra));
  double without = evaluate(base);
  return with - without;
}

double ObjectiveHandle::baseline_cost(int step) const {
  if (!impl_->baseline) return 0.0;
  return impl_->baseline(step);
}

}  // namespace rsm
