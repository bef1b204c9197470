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
// Performance analysis for the robust selector: curvature and total
// curvature of the objective, the a priori / a posteriori / pre-failure
// suboptimality bounds, the regularized-removal bisection that approximates
// a posteriori bounds before a failure is observed, and executable checks of
// the curvature inequalities the guarantees rest on.
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsm/objective.hpp"
#include "rsm/rng.hpp"
#include "rsm/solver.hpp"
#include "rsm/types.hpp"

namespace rsm {

enum class CurvatureKind { kKappa, kTotal };
enum class CurvatureMode { kExact, kSampled };

struct CurvatureReport {
  double value = 0.0;  // in [0, 1]
  CurvatureKind kind = CurvatureKind::kKappa;
  CurvatureMode mode = CurvatureMode::kExact;
  std::int64_t sample_count = 0;
  // Only exact computations certify the value; a sampled total curvature can
  // only under-estimate (sampling a min over subsets misses small ratios).
  bool certified = false;
};

// Curvature of a submodular objective over the element set `universe`:
// 1 - min_v [f(V) - f(V \ {v})] / f({v}). Exact, 2|V|+1 evaluations.
// Requires f({v}) > 0 for every v (throws DegenerateInstanceError telling
// the caller to drop zero-value elements otherwise).
CurvatureReport kappa(const ObjectiveHandle& obj, const ElementSet& universe);

// Total curvature 1 - min_v min_{A,B subseteq V\{v}} marginal(v|A) /
// marginal(v|B). Exact mode enumerates and requires |V| <= exact_cap;
// sampled mode draws `sample_budget` random (v, A, B) triples and returns an
// uncertified lower bound. Zero-denominator ratios are skipped; a zero
// numerator against a positive denominator forces the value to 1.
CurvatureReport total_curvature(const ObjectiveHandle& obj,
                                const ElementSet& universe, CurvatureMode mode,
                                std::int64_t sample_budget, Rng* rng,
                                int exact_cap = 10);

enum class BoundKind {
  kAprioriSubmodular,
  kAprioriNonsubmodular,
  kAposterioriSubmodular,
  kAposterioriNonsubmodular,
  kPrefailureSubmodular,
  kPrefailureNonsubmodular,
};

struct BoundComponents {
  double curvature_used = 0.0;
  double ratio_numerator = 1.0;
  double ratio_denominator = 1.0;
  int t = 0;
  int horizon = 0;
};

struct BoundReport {
  BoundKind kind;
  double value = 0.0;
  BoundComponents components;
  bool certified = true;  // false when built from a sampled curvature
};

// Recomputes a bound value from its components; BoundReport.value is
// produced by this exact function, so the two always agree bit-for-bit.
double bound_formula(BoundKind kind, const BoundComponents& components);

// Closed-form guarantee available before the run. `t` in the components is
// set equal to the horizon.
BoundReport apriori_bound(BoundKind kind, const CurvatureReport& curvature,
                          int horizon);

// The greedy reference sequence M_{1:t}: failure-free greedy over
// V_t \ bait_t with alpha_t - beta_t picks per step, conditioned on its own
// prefix. `bait_sets` are the robust selector's per-step bait sets.
SelectionSequence greedy_reference(const ObjectiveHandle& obj,
                                   const GroundSets& grounds,
                                   const Budgets& budgets,
                                   const std::vector<ElementSet>& bait_sets,
                                   int upto_step = 0);

// Guarantee computable once the removals of steps 1..t have been observed:
// curvature factor times f(survivors_{1:t}) / f(M_{1:t}).
// Throws DegenerateInstanceError when f(M_{1:t}) == 0.
BoundReport aposteriori_bound(const ObjectiveHandle& obj,
                              const EpisodeTrace& trace, int t,
                              const SelectionSequence& greedy_ref,
                              const CurvatureReport& curvature,
                              bool submodular);

// Exact minimizer of f(history, selected \ B) + lambda |B| over all subsets
// B of `selected`. Ties prefer smaller |B|, then lexicographic order.
struct RegularizedRemoval {
  ElementSet removal;            // the minimizing B
  double surviving_value = 0.0;  // f(history, selected \ B)
  double objective_value = 0.0;  // surviving_value + lambda |B|
};

RegularizedRemoval regularized_min_removal(
    const ObjectiveHandle& obj, const SelectionSequence& survivors_history,
    const ElementSet& selected, double lambda,
    std::int64_t enumeration_cap = 1 << 20);

// State of the penalty bisection. The bracket keeps |B(u)| < beta and, once
// the lower end has been raised, |B(l)| >= beta; the returned lambda is the
// final lower end, whose surviving value lower-bounds the worst-case
// surviving value.
struct BisectionState {
  double lower = 0.0;
  double upper = 0.0;
  double lambda = 0.0;           // returned multiplier (== final lower)
  ElementSet removal;            // B(lambda)
  double surviving_value = 0.0;  // f-hat at lambda
  double epsilon = 0.0;
  double initial_upper = 0.0;    // u0
  int iterations = 0;
  // (lambda, |B(lambda)|) for every multiplier probed, in probe order.
  std::vector<std::pair<double, int>> visited;
};

// Penalty bisection: bracket [0, u0], halve while u - l > epsilon, moving u
// down when |B(lambda)| < beta and l up otherwise; returns lambda = l.
// Requires beta >= 1 and |B(u0)| < beta (ArgumentError asks for a larger u0
// otherwise). Iteration count is at most ceil(log2(u0 / epsilon)).
BisectionState bisection_lambda(const ObjectiveHandle& obj,
                                const SelectionSequence& survivors_history,
                                const ElementSet& selected, int beta,
                                double u0, double epsilon,
                                std::int64_t enumeration_cap = 1 << 20);

// Default initial upper bracket: f(history, selected) + 1, for which the
// empty removal is the unique regularized minimizer.
double default_bisection_upper(const ObjectiveHandle& obj,
                               const SelectionSequence& survivors_history,
                               const ElementSet& selected);

// Pre-failure counterpart of the a posteriori bound: the bisection's
// surviving value stands in for the (not yet observed) post-removal value.
BoundReport prefailure_bound(const ObjectiveHandle& obj,
                             const std::vector<BisectionState>& bisection,
                             int t, const SelectionSequence& greedy_ref,
                             const CurvatureReport& curvature,
                             bool submodular);

// A failed inequality check, with the witness that broke it.
struct InequalityViolation {
  std::string check;
  std::string witness;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Randomized checks of the curvature inequalities on (A, B) pairs drawn from
// the universe (disjointness or A\B != empty enforced per inequality):
//   union vs sums:        f(A u B) >= (1-c)[f(A) + f(B)]
//   union vs singletons:  f(A u B) >= (1-c)[f(A) + sum_b f(b)]
//   exchange:             f(A) + (1-c) f(B) >= (1-c) f(A u B) + f(A n B)
//   union lower:          f(A) + sum_b f(b) >= (1-c) f(A u B)
std::vector<InequalityViolation> check_curvature_inequalities(
    const ObjectiveHandle& obj, const ElementSet& universe, double c_exact,
    int trials, Rng& rng, double tol = 1e-9);

// Same four inequalities checked over every valid (A, B) pair; feasible for
// |universe| up to ~8.
std::vector<InequalityViolation> check_curvature_inequalities_exhaustive(
    const ObjectiveHandle& obj, const ElementSet& universe, double c_exact,
    double tol = 1e-9);

// Checks, on one exhaustively solvable instance, the chain tying the robust
// selector's greedy parts to the optimum: with S the bait/greedy split from
// a worst-case episode, K_t = V_t \ bait_t and delta_t = alpha_t - beta_t,
//   f(greedy parts) >= (1-c)^2 f(O)   for every feasible O (all enumerated),
//   f(greedy parts) >= (1-c)^3 f(P),
//   f(M)            >= (1-c)   f(P),
//   f(P)            >= f*,
// where P maximizes f over the feasible family and f* is the exact minimax
// value.
std::vector<InequalityViolation> check_selection_inequalities(
    const ObjectiveHandle& obj, const GroundSets& grounds,
    const Budgets& budgets, double c_exact, double tol = 1e-9);

// Runs both families of checks; empty result = all inequalities hold.
std::vector<InequalityViolation> check_all_inequalities(const ObjectiveHandle& obj,
                                                  const GroundSets& grounds,
                                                  const Budgets& budgets,
                                                  double c_exact, int trials,
                                                  Rng& rng, double tol = 1e-9);

}  // namespace rsm
