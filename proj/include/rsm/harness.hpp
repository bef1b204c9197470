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
// Monte Carlo orchestration and result persistence. Trials are independent
// work items; rows are merged in trial order regardless of completion order,
// so a fixed config yields a byte-identical CSV no matter the pool size
// (RSM_WORKERS selects it; default = available parallelism).
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsm/scenario.hpp"
#include "rsm/solver.hpp"
#include "rsm/types.hpp"

namespace rsm {

struct ResultRow {
  std::uint64_t trial_seed = 0;
  std::string selector;
  std::string attacker;
  int step = 0;
  double error = 0.0;    // c(survivors_{1:t}) = c(empty) - f
  double f_value = 0.0;  // f(survivors_{1:t})
  std::optional<double> bound_apriori;
  std::optional<double> bound_aposteriori;
  std::optional<double> bound_prefailure;
  long long oracle_calls = 0;  // selector calls at this step

  bool operator==(const ResultRow& other) const;
};

using ResultTable = std::vector<ResultRow>;

struct SummaryRow {
  std::string selector;
  std::string attacker;
  int step = 0;
  double mean_error = 0.0;
  double stderr_error = 0.0;  // standard error of the mean
  double mean_f = 0.0;
  int trials = 0;
};

struct MonteCarloOutput {
  ResultTable rows;
  std::vector<SummaryRow> summary;
  // (trial, selector, attacker, message) for capacity errors that skipped a
  // pair without failing the run.
  std::vector<std::string> skipped;
};

// Worker-pool size: RSM_WORKERS if set, hardware concurrency otherwise.
int worker_pool_size();

MonteCarloOutput run_monte_carlo(const ScenarioConfig& config);

// Summary recomputed from rows (deterministic order).
std::vector<SummaryRow> summarize(const ResultTable& rows);

// Fixed-schema CSV. Optional bounds are blank fields. Floats use
// shortest-round-trip formatting, so parse_results is an exact inverse.
extern const char kResultCsvHeader[];
void emit_results(const ResultTable& rows, const std::string& path);
std::string results_to_csv(const ResultTable& rows);
ResultTable parse_results_csv(const std::string& text);

// Per-(selector, attacker) plot data: "step mean_error" lines next to the
// main CSV, one file per pair.
void emit_plot_data(const std::vector<SummaryRow>& summary,
                    const std::string& csv_path);

}  // namespace rsm
