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
// Exhaustive desk-scale verification: sweeps small modular and coverage
// instances over all valid budget pairs, runs the robust selector against
// the exact worst-case attacker, and checks every guarantee against the
// brute-force minimax value. Also drives the curvature-inequality suite.
//

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsm/analysis.hpp"
#include "rsm/types.hpp"

namespace rsm {

struct GridOptions {
  std::vector<int> sizes = {3, 4, 5};   // |V_t|
  std::vector<int> horizons = {1, 2};   // T
  int instances_per_cell = 12;          // per (size, T, alpha, beta, family)
  std::uint64_t seed = 20260809;
  double tolerance = 1e-9;
  int workers = 0;  // 0 = worker_pool_size()
};

struct GridViolation {
  std::string check;
  std::string instance;
  std::string detail;
};

struct GridCounters {
  long long instances = 0;
  long long apriori_checks = 0;
  long long aposteriori_checks = 0;
  long long prefailure_checks = 0;
  long long bisection_checks = 0;
  long long modular_equality_checks = 0;
  long long skipped_degenerate = 0;
};

struct GridOutcome {
  GridCounters counters;
  std::vector<GridViolation> violations;
};

// Guarantee soundness sweep:
//  - f(survivors) >= apriori bound * f* (both curvature branches),
//  - f(survivors_{1:t}) >= a posteriori / pre-failure bound * f*_t,
//  - bisection surviving value <= worst-case surviving value,
//  - bisection multiplier within epsilon of the scan breakpoint,
//  - |B(lambda)| non-increasing over the probes, iteration count capped,
//  - on modular instances, robust value == f* exactly.
GridOutcome run_bound_soundness_grid(const GridOptions& options);

struct InequalitySuiteOptions {
  int instances = 25;
  int draws_per_instance = 400;  // randomized (A, B) draws per inequality
  std::uint64_t seed = 1113;
  double tolerance = 1e-9;
};

struct InequalitySuiteOutcome {
  long long instances = 0;
  long long randomized_draws = 0;
  long long exhaustive_instances = 0;
  std::vector<InequalityViolation> violations;
};

// Curvature-inequality suite over random coverage/modular instances with
// exact total curvature; exhaustive pair checks where the universe is small.
InequalitySuiteOutcome run_inequality_suite(const InequalitySuiteOptions& options);

}  // namespace rsm
