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

#include "rsm/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

#include "rsm/errors.hpp"
#include "rsm/subsets.hpp"

namespace rsm {

namespace {

// f over all subsets of a small universe, memoized by bitmask.
class SubsetTable {
 public:
  SubsetTable(const ObjectiveHandle& obj, const ElementSet& universe)
      : universe_(universe) {
    const int n = static_cast<int>(universe.size());
    if (n > 24) throw CapacityError("subset table: universe too large");
    values_.resize(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < values_.size(); ++mask) {
      values_[mask] = obj.evaluate_set(set_of(mask));
    }
  }

  double value(std::size_t mask) const { return values_[mask]; }

  ElementSet set_of(std::size_t mask) const {
    ElementSet out;
    for (int i = 0; i < static_cast<int>(universe_.size()); ++i) {
      if (mask & (std::size_t{1} << i)) out.push_back(universe_[i]);
    }
    return out;
  }

  int size() const { return static_cast<int>(universe_.size()); }

 private:
  ElementSet universe_;
  std::vector<double> values_;
};

std::string pair_witness(const ElementSet& a, const ElementSet& b) {
  return "A=" + set_to_string(a) + " B=" + set_to_string(b);
}

void check_ge(std::vector<InequalityViolation>* out, const std::string& name,
              double lhs, double rhs, double tol, const std::string& witness) {
  if (lhs < rhs - tol) {
    out->push_back(InequalityViolation{name, witness, lhs, rhs});
  }
}

}  // namespace

CurvatureReport kappa(const ObjectiveHandle& obj, const ElementSet& universe) {
  if (!obj.claims_submodular()) {
    throw ArgumentError(
        "curvature is defined for submodular objectives; use total curvature");
  }
  if (universe.empty()) throw ArgumentError("curvature of an empty universe");
  const double full = obj.evaluate_set(universe);
  double min_ratio = 1.0;
  bool first = true;
  for (GlobalId v : universe) {
    double single = obj.evaluate_set(ElementSet{v});
    if (single <= 0.0) {
      throw DegenerateInstanceError(
          "curvature: f({" + std::to_string(v) +
          "}) = 0; drop zero-value elements from the universe first");
    }
    double without = obj.evaluate_set(set_without(universe, v));
    double ratio = (full - without) / single;
    if (first || ratio < min_ratio) {
      min_ratio = ratio;
      first = false;
    }
  }
  CurvatureReport report;
  report.value = std::clamp(1.0 - min_ratio, 0.0, 1.0);
  report.kind = CurvatureKind::kKappa;
  report.mode = CurvatureMode::kExact;
  report.certified = true;
  return report;
}

CurvatureReport total_curvature(const ObjectiveHandle& obj,
                                const ElementSet& universe, CurvatureMode mode,
                                std::int64_t sample_budget, Rng* rng,
                                int exact_cap) {
  if (universe.empty()) throw ArgumentError("curvature of an empty universe");
  CurvatureReport report;
  report.kind = CurvatureKind::kTotal;
  report.mode = mode;

  if (mode == CurvatureMode::kExact) {
    const int n = static_cast<int>(universe.size());
    if (n > exact_cap) {
      throw CapacityError("exact total curvature needs |V| <= " +
                          std::to_string(exact_cap) + ", got " +
                          std::to_string(n));
    }
    SubsetTable table(obj, universe);
    // min over (v, A, B) of marginal(v|A)/marginal(v|B) factors into
    // (min over A) / (max over B); zero-denominator pairs are skipped, and a
    // zero numerator against any positive denominator drives the value to 1.
    double min_ratio = 1.0;
    bool any_ratio = false;
    const std::size_t full = (std::size_t{1} << n) - 1;
    for (int i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      double min_num = 0.0, max_den = 0.0;
      bool first = true;
      for (std::size_t mask = 0; mask <= full; ++mask) {
        if (mask & bit) continue;
        double marg = std::max(table.value(mask | bit) - table.value(mask), 0.0);
        if (first) {
          min_num = max_den = marg;
          first = false;
        } else {
          min_num = std::min(min_num, marg);
          max_den = std::max(max_den, marg);
        }
      }
      if (max_den <= 0.0) continue;  // every pair has a zero denominator
      any_ratio = true;
      min_ratio = std::min(min_ratio, min_num / max_den);
    }
    report.value = any_ratio ? std::clamp(1.0 - min_ratio, 0.0, 1.0) : 0.0;
    report.certified = true;
    return report;
  }

  if (rng == nullptr) {
    throw ArgumentError("sampled total curvature needs a generator");
  }
  const int n = static_cast<int>(universe.size());
  double min_ratio = 1.0;
  bool any_ratio = false;
  for (std::int64_t s = 0; s < sample_budget; ++s) {
    int vi = static_cast<int>(rng->next_below(n));
    GlobalId v = universe[vi];
    ElementSet a, b;
    for (int i = 0; i < n; ++i) {
      if (i == vi) continue;
      std::uint64_t bits = rng->next_below(4);
      if (bits & 1) a.push_back(universe[i]);
      if (bits & 2) b.push_back(universe[i]);
    }
    double den = obj.evaluate_set(set_with(b, v)) - obj.evaluate_set(b);
    if (den <= 0.0) continue;
    double num =
        std::max(obj.evaluate_set(set_with(a, v)) - obj.evaluate_set(a), 0.0);
    any_ratio = true;
    min_ratio = std::min(min_ratio, num / den);
  }
  report.value = any_ratio ? std::clamp(1.0 - min_ratio, 0.0, 1.0) : 0.0;
  report.sample_count = sample_budget;
  report.certified = false;
  return report;
}

double bound_formula(BoundKind kind, const BoundComponents& c) {
  const double kappa = c.curvature_used;
  const double ratio = c.ratio_numerator / c.ratio_denominator;
  switch (kind) {
    case BoundKind::kAprioriSubmodular:
      if (c.horizon == 1) {
        if (kappa == 0.0) return 1.0;  // limit for kappa -> 0
        return (1.0 - std::exp(-kappa)) / kappa * (1.0 - kappa);
      }
      return std::pow(1.0 - kappa, 4);
    case BoundKind::kAprioriNonsubmodular:
      return c.horizon == 1 ? std::pow(1.0 - kappa, 3)
                            : std::pow(1.0 - kappa, 5);
    case BoundKind::kAposterioriSubmodular:
    case BoundKind::kPrefailureSubmodular:
      if (c.t == 1) {
        double factor = kappa == 0.0 ? 1.0 : (1.0 - std::exp(-kappa)) / kappa;
        return factor * ratio;
      }
      return ratio / (1.0 + kappa);
    case BoundKind::kAposterioriNonsubmodular:
    case BoundKind::kPrefailureNonsubmodular:
      return (1.0 - kappa) * ratio;
  }
  return 0.0;
}

BoundReport apriori_bound(BoundKind kind, const CurvatureReport& curvature,
                          int horizon) {
  if (kind != BoundKind::kAprioriSubmodular &&
      kind != BoundKind::kAprioriNonsubmodular) {
    throw ArgumentError("apriori_bound: wrong bound kind");
  }
  if (curvature.value < 0.0 || curvature.value > 1.0) {
    throw ArgumentError("apriori_bound: curvature outside [0, 1]");
  }
  if (horizon < 1) throw ArgumentError("apriori_bound: horizon must be >= 1");
  BoundReport report;
  report.kind = kind;
  report.components.curvature_used = curvature.value;
  report.components.t = horizon;
  report.components.horizon = horizon;
  report.value = bound_formula(kind, report.components);
  report.certified = curvature.certified;
  return report;
}

SelectionSequence greedy_reference(const ObjectiveHandle& obj,
                                   const GroundSets& grounds,
                                   const Budgets& budgets,
                                   const std::vector<ElementSet>& bait_sets,
                                   int upto_step) {
  budgets.validate(grounds);
  if (upto_step <= 0) upto_step = grounds.horizon();
  if (static_cast<int>(bait_sets.size()) < upto_step) {
    throw ArgumentError("greedy reference: missing bait sets");
  }
  SelectionSequence reference;
  for (int t = 1; t <= upto_step; ++t) {
    ElementSet pool = set_minus(grounds.ids_at(t), bait_sets[t - 1]);
    int delta = budgets.alpha[t - 1] - budgets.beta[t - 1];
    reference.push_step(greedy_step(obj, reference, pool, delta));
  }
  return reference;
}

namespace {

BoundReport ratio_bound(BoundKind kind, double numerator, double denominator,
                        const CurvatureReport& curvature, int t, int horizon) {
  if (denominator <= 0.0) {
    throw DegenerateInstanceError(
        "suboptimality bound: the greedy reference has value 0");
  }
  BoundReport report;
  report.kind = kind;
  report.components.curvature_used = curvature.value;
  report.components.ratio_numerator = numerator;
  report.components.ratio_denominator = denominator;
  report.components.t = t;
  report.components.horizon = horizon;
  report.value = bound_formula(kind, report.components);
  report.certified = curvature.certified;
  return report;
}

}  // namespace

BoundReport aposteriori_bound(const ObjectiveHandle& obj,
                              const EpisodeTrace& trace, int t,
                              const SelectionSequence& greedy_ref,
                              const CurvatureReport& curvature,
                              bool submodular) {
  if (t < 1 || t > static_cast<int>(trace.steps.size())) {
    throw ArgumentError("aposteriori bound: step out of range");
  }
  if (greedy_ref.length() < t) {
    throw ArgumentError("aposteriori bound: greedy reference too short");
  }
  double numerator = trace.steps[t - 1].value_after_removal;
  SelectionSequence ref_prefix(
      std::vector<ElementSet>(greedy_ref.sets().begin(),
                              greedy_ref.sets().begin() + t));
  double denominator = obj.evaluate(ref_prefix);
  return ratio_bound(submodular ? BoundKind::kAposterioriSubmodular
                                : BoundKind::kAposterioriNonsubmodular,
                     numerator, denominator, curvature, t,
                     static_cast<int>(trace.steps.size()));
}

RegularizedRemoval regularized_min_removal(
    const ObjectiveHandle& obj, const SelectionSequence& survivors_history,
    const ElementSet& selected, double lambda,
    std::int64_t enumeration_cap) {
  if (lambda < 0.0) {
    throw ArgumentError("regularized removal: lambda must be >= 0");
  }
  const int n = static_cast<int>(selected.size());
  if (n < 63 && (std::int64_t{1} << n) > enumeration_cap) {
    throw CapacityError("regularized removal: 2^" + std::to_string(n) +
                        " subsets exceed the cap");
  }
  const int step = survivors_history.length() + 1;
  RegularizedRemoval best;
  bool first = true;
  // Enumeration runs smallest-size-first and lexicographic within a size, so
  // keeping strict improvements realizes the tie rule.
  for_each_subset(selected, [&](const ElementSet& removal) {
    SelectionSequence seq =
        survivors_history.with_merged(step, set_minus(selected, removal));
    double surviving = obj.evaluate(seq);
    double objective = surviving + lambda * static_cast<double>(removal.size());
    if (first || objective < best.objective_value) {
      best.removal = removal;
      best.surviving_value = surviving;
      best.objective_value = objective;
      first = false;
    }
  });
  return best;
}

BisectionState bisection_lambda(const ObjectiveHandle& obj,
                                const SelectionSequence& survivors_history,
                                const ElementSet& selected, int beta,
                                double u0, double epsilon,
                                std::int64_t enumeration_cap) {
  if (beta < 1) throw ArgumentError("bisection: beta must be >= 1");
  if (epsilon <= 0.0) throw ArgumentError("bisection: epsilon must be > 0");
  if (u0 <= 0.0) throw ArgumentError("bisection: u0 must be > 0");
  auto solve = [&](double lambda) {
    return regularized_min_removal(obj, survivors_history, selected, lambda,
                                   enumeration_cap);
  };
  if (static_cast<int>(solve(u0).removal.size()) >= beta) {
    throw ArgumentError(
        "bisection: |B(u0)| >= beta; enlarge the initial upper bracket u0");
  }
  BisectionState state;
  state.epsilon = epsilon;
  state.initial_upper = u0;
  state.lower = 0.0;
  state.upper = u0;
  double lambda = 0.5 * (state.lower + state.upper);
  while (state.upper - state.lower > epsilon) {
    RegularizedRemoval probe = solve(lambda);
    state.visited.emplace_back(lambda, static_cast<int>(probe.removal.size()));
    if (static_cast<int>(probe.removal.size()) < beta) {
      state.upper = lambda;  // keeps |B(u)| < beta
    } else {
      state.lower = lambda;  // keeps |B(l)| >= beta
    }
    lambda = 0.5 * (state.lower + state.upper);
    ++state.iterations;
  }
  state.lambda = state.lower;
  RegularizedRemoval final_solve = solve(state.lambda);
  state.removal = final_solve.removal;
  state.surviving_value = final_solve.surviving_value;
  return state;
}

double default_bisection_upper(const ObjectiveHandle& obj,
                               const SelectionSequence& survivors_history,
                               const ElementSet& selected) {
  const int step = survivors_history.length() + 1;
  return obj.evaluate(survivors_history.with_merged(step, selected)) + 1.0;
}

BoundReport prefailure_bound(const ObjectiveHandle& obj,
                             const std::vector<BisectionState>& bisection,
                             int t, const SelectionSequence& greedy_ref,
                             const CurvatureReport& curvature,
                             bool submodular) {
  if (t < 1 || t > static_cast<int>(bisection.size())) {
    throw ArgumentError("prefailure bound: step out of range");
  }
  if (greedy_ref.length() < t) {
    throw ArgumentError("prefailure bound: greedy reference too short");
  }
  double numerator = bisection[t - 1].surviving_value;
  SelectionSequence ref_prefix(
      std::vector<ElementSet>(greedy_ref.sets().begin(),
                              greedy_ref.sets().begin() + t));
  double denominator = obj.evaluate(ref_prefix);
  return ratio_bound(submodular ? BoundKind::kPrefailureSubmodular
                                : BoundKind::kPrefailureNonsubmodular,
                     numerator, denominator, curvature, t,
                     static_cast<int>(bisection.size()));
}

namespace {

void check_pair_inequalities(std::vector<InequalityViolation>* out,
                             const SubsetTable& table,
                             const std::vector<double>& singleton_sum_cache,
                             double c, std::size_t mask_a, std::size_t mask_b,
                             double tol) {
  const double fa = table.value(mask_a);
  const double fb = table.value(mask_b);
  const double funion = table.value(mask_a | mask_b);
  if ((mask_a & mask_b) == 0) {
    const double singles = singleton_sum_cache[mask_b];
    const std::string witness =
        pair_witness(table.set_of(mask_a), table.set_of(mask_b));
    check_ge(out, "union_vs_sums", funion, (1.0 - c) * (fa + fb), tol, witness);
    check_ge(out, "union_vs_singletons", funion, (1.0 - c) * (fa + singles),
             tol, witness);
    check_ge(out, "union_lower", fa + singles, (1.0 - c) * funion, tol,
             witness);
  }
  if ((mask_a & ~mask_b) != 0) {
    const double finter = table.value(mask_a & mask_b);
    check_ge(out, "exchange", fa + (1.0 - c) * fb,
             (1.0 - c) * funion + finter, tol,
             pair_witness(table.set_of(mask_a), table.set_of(mask_b)));
  }
}

std::vector<double> singleton_sums(const SubsetTable& table) {
  const int n = table.size();
  std::vector<double> singles(n);
  for (int i = 0; i < n; ++i) singles[i] = table.value(std::size_t{1} << i);
  std::vector<double> sums(std::size_t{1} << n, 0.0);
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    int low = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + singles[low];
  }
  return sums;
}

}  // namespace

std::vector<InequalityViolation> check_curvature_inequalities(
    const ObjectiveHandle& obj, const ElementSet& universe, double c_exact,
    int trials, Rng& rng, double tol) {
  SubsetTable table(obj, universe);
  std::vector<double> sums = singleton_sums(table);
  std::vector<InequalityViolation> out;
  const int n = static_cast<int>(universe.size());
  for (int s = 0; s < trials; ++s) {
    // Disjoint pair draw for the three disjointness-conditioned checks.
    std::size_t mask_a = 0, mask_b = 0;
    for (int i = 0; i < n; ++i) {
      switch (rng.next_below(3)) {
        case 0: mask_a |= std::size_t{1} << i; break;
        case 1: mask_b |= std::size_t{1} << i; break;
        default: break;
      }
    }
    check_pair_inequalities(&out, table, sums, c_exact, mask_a, mask_b, tol);
    // Overlapping pair with A \ B nonempty for the exchange check.
    mask_a = mask_b = 0;
    for (int i = 0; i < n; ++i) {
      std::uint64_t bits = rng.next_below(4);
      if (bits & 1) mask_a |= std::size_t{1} << i;
      if (bits & 2) mask_b |= std::size_t{1} << i;
    }
    if ((mask_a & ~mask_b) != 0) {
      check_pair_inequalities(&out, table, sums, c_exact, mask_a, mask_b, tol);
    }
  }
  return out;
}

std::vector<InequalityViolation> check_curvature_inequalities_exhaustive(
    const ObjectiveHandle& obj, const ElementSet& universe, double c_exact,
    double tol) {
  const int n = static_cast<int>(universe.size());
  if (n > 12) {
    throw CapacityError("exhaustive inequality check: universe too large");
  }
  SubsetTable table(obj, universe);
  std::vector<double> sums = singleton_sums(table);
  std::vector<InequalityViolation> out;
  const std::size_t full = (std::size_t{1} << n) - 1;
  for (std::size_t mask_a = 0; mask_a <= full; ++mask_a) {
    for (std::size_t mask_b = 0; mask_b <= full; ++mask_b) {
      check_pair_inequalities(&out, table, sums, c_exact, mask_a, mask_b, tol);
    }
  }
  return out;
}

namespace {

// Enumerates, per step, every subset of pool[t] with size <= delta[t], and
// calls fn on each cross-step combination.
void for_each_feasible_sequence(
    const std::vector<ElementSet>& pools, const std::vector<int>& deltas,
    int t, std::vector<ElementSet>* prefix,
    const std::function<void(const SelectionSequence&)>& fn) {
  if (t == static_cast<int>(pools.size())) {
    fn(SelectionSequence(*prefix));
    return;
  }
  for_each_subset_up_to(pools[t], deltas[t], [&](const ElementSet& choice) {
    prefix->push_back(choice);
    for_each_feasible_sequence(pools, deltas, t + 1, prefix, fn);
    prefix->pop_back();
  });
}

}  // namespace

std::vector<InequalityViolation> check_selection_inequalities(
    const ObjectiveHandle& obj, const GroundSets& grounds,
    const Budgets& budgets, double c_exact, double tol) {
  EpisodeTrace trace = run_episode(obj, grounds, budgets, SelectorKind::kRam,
                                   AttackerKind::kWorstCase, /*seed=*/0);
  const int T = grounds.horizon();
  SelectionSequence greedy_parts;
  std::vector<ElementSet> baits;
  std::vector<ElementSet> pools;
  std::vector<int> deltas;
  for (int t = 1; t <= T; ++t) {
    greedy_parts.push_step(trace.steps[t - 1].greedy_part);
    baits.push_back(trace.steps[t - 1].bait);
    pools.push_back(set_minus(grounds.ids_at(t), trace.steps[t - 1].bait));
    deltas.push_back(budgets.alpha[t - 1] - budgets.beta[t - 1]);
  }
  const double f_greedy_parts = obj.evaluate(greedy_parts);
  const double one_minus_c = 1.0 - c_exact;

  std::vector<InequalityViolation> out;
  double best = 0.0;
  SelectionSequence best_seq;
  std::vector<ElementSet> prefix;
  for_each_feasible_sequence(
      pools, deltas, 0, &prefix, [&](const SelectionSequence& candidate) {
        double value = obj.evaluate(candidate);
        check_ge(&out, "greedy_parts_vs_feasible", f_greedy_parts,
                 one_minus_c * one_minus_c * value, tol,
                 "O=" + set_to_string(candidate.flatten()));
        if (value > best) {
          best = value;
          best_seq = candidate;
        }
      });
  check_ge(&out, "greedy_parts_vs_restricted_opt", f_greedy_parts,
           one_minus_c * one_minus_c * one_minus_c * best, tol,
           "P=" + set_to_string(best_seq.flatten()));

  SelectionSequence reference =
      greedy_reference(obj, grounds, budgets, baits);
  check_ge(&out, "greedy_reference_vs_restricted_opt",
           obj.evaluate(reference), one_minus_c * best, tol,
           "P=" + set_to_string(best_seq.flatten()));

  MinimaxResult minimax = optimal_value(obj, grounds, budgets);
  check_ge(&out, "restricted_opt_vs_minimax", best, minimax.value, tol,
           "P=" + set_to_string(best_seq.flatten()));
  return out;
}

std::vector<InequalityViolation> check_all_inequalities(const ObjectiveHandle& obj,
                                                  const GroundSets& grounds,
                                                  const Budgets& budgets,
                                                  double c_exact, int trials,
                                                  Rng& rng, double tol) {
  std::vector<InequalityViolation> out = check_curvature_inequalities(
      obj, grounds.all_ids(), c_exact, trials, rng, tol);
  if (grounds.all_ids().size() <= 8) {
    auto more = check_curvature_inequalities_exhaustive(obj, grounds.all_ids(),
                                                        c_exact, tol);
    out.insert(out.end(), more.begin(), more.end());
  }
  auto selection = check_selection_inequalities(obj, grounds, budgets,
                                                c_exact, tol);
  out.insert(out.end(), selection.begin(), selection.end());
  return out;
}

}  // namespace rsm
