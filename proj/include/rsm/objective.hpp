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
// The objective-oracle contract. An ObjectiveHandle wraps a deterministic
// raw evaluator over selection sequences, normalized at construction so
// f(empty) == 0 exactly, and tallies every logical oracle query. All
// argmax/argmin tie-breaking downstream relies on evaluation being
// bit-reproducible for identical input sequences.
//

#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>

#include "rsm/types.hpp"

namespace rsm {

class ObjectiveHandle {
 public:
  using Evaluator = std::function<double(const SelectionSequence&)>;
  // Cumulative cost of the empty selection through step t; used by the
  // harness to report errors as c(empty) - f.
  using BaselineCost = std::function<double(int)>;

  // Wraps `raw` as f(X) := raw(X) - raw(empty). `raw` must be deterministic;
  // `submodular` is a verified-by-tests claim, not enforced per call.
  ObjectiveHandle(std::string name, const GroundSets* grounds, Evaluator raw,
                  bool submodular, BaselineCost baseline = nullptr);

  const std::string& name() const { return impl_->name; }
  const GroundSets& grounds() const { return *impl_->grounds; }
  bool claims_submodular() const { return impl_->submodular; }
  long long eval_count() const {
    return impl_->eval_count.load(std::memory_order_relaxed);
  }

  // f(seq). One oracle call. Throws StructuralError on element/step
  // mismatches and ContractError if the evaluator output is NaN or negative.
  double evaluate(const SelectionSequence& seq) const;

  // f(set) with the set lifted to its padded horizon sequence. One call.
  double evaluate_set(const ElementSet& set) const;

  // f({v}) at v's own step. One call.
  double singleton_value(GlobalId v) const;

  // f(base with extra merged into step `step`) - f(base). Exactly two calls.
  double marginal(const SelectionSequence& base, int step,
                  const ElementSet& extra) const;

  // c(empty) through step t; zero when the objective has no cost baseline.
  double baseline_cost(int step) const;

 private:
  struct Impl {
    std::string name;
    const GroundSets* grounds;
    Evaluator raw;
    bool submodular;
    BaselineCost baseline;
    double raw_empty = 0.0;
    mutable std::atomic<long long> eval_count{0};
  };
  std::shared_ptr<Impl> impl_;
};

}  // namespace rsm
