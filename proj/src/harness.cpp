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

#include "rsm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "rsm/analysis.hpp"
#include "rsm/attacks.hpp"
#include "rsm/errors.hpp"
#include "rsm/rng.hpp"

namespace rsm {

const char kResultCsvHeader[] =
    "trial,selector,attacker,step,error,f_value,bound_apriori,"
    "bound_aposteriori,bound_prefailure,oracle_calls";

bool ResultRow::operator==(const ResultRow& other) const {
  return trial_seed == other.trial_seed && selector == other.selector &&
         attacker == other.attacker && step == other.step &&
         error == other.error && f_value == other.f_value &&
         bound_apriori == other.bound_apriori &&
         bound_aposteriori == other.bound_aposteriori &&
         bound_prefailure == other.bound_prefailure &&
         oracle_calls == other.oracle_calls;
}

int worker_pool_size() {
  if (const char* env = std::getenv("RSM_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct TrialResult {
  ResultTable rows;
  std::vector<std::string> skipped;
};

TrialResult run_trial(const ScenarioConfig& config, int trial_index) {
  const std::uint64_t trial_seed = derive_seed(config.seed, trial_index);
  ScenarioInstance instance = generate_scenario(trial_seed, config);
  const ObjectiveHandle& obj = instance.objective;
  const GroundSets& grounds = *instance.grounds;
  const bool submodular = obj.claims_submodular();

  // One curvature report per trial when bounds are requested: exact kappa
  // for submodular objectives, sampled total curvature otherwise.
  std::optional<CurvatureReport> curvature;
  if (config.bounds) {
    if (submodular) {
      curvature = kappa(obj, grounds.all_ids());
    } else {
      Rng curvature_rng(derive_seed(trial_seed, hash_tag("curvature")));
      curvature = total_curvature(obj, grounds.all_ids(),
                                  CurvatureMode::kSampled,
                                  config.curvature_samples, &curvature_rng);
    }
  }

  EpisodeLimits limits;
  limits.removal_enumeration_cap = config.removal_cap;

  TrialResult result;
  for (const std::string& selector_name : config.selectors) {
    for (const std::string& attacker_name : config.attackers) {
      SelectorKind selector = selector_from_name(selector_name);
      AttackerKind attacker = attacker_from_name(attacker_name);
      const std::uint64_t episode_seed = derive_seed(
          trial_seed, hash_tag(selector_name) ^ hash_tag(attacker_name));
      EpisodeTrace trace;
      try {
        trace = run_episode(obj, grounds, instance.budgets, selector, attacker,
                            episode_seed, limits);
      } catch (const CapacityError& e) {
        result.skipped.push_back("trial " + std::to_string(trial_index) +
                                 " " + selector_name + "/" + attacker_name +
                                 ": " + e.what());
        continue;
      }

      std::optional<BoundReport> apriori;
      SelectionSequence reference;
      std::vector<BisectionState> bisections;
      if (config.bounds && curvature.has_value()) {
        apriori = apriori_bound(submodular ? BoundKind::kAprioriSubmodular
                                           : BoundKind::kAprioriNonsubmodular,
                                *curvature, grounds.horizon());
        std::vector<ElementSet> baits;
        for (const auto& s : trace.steps) baits.push_back(s.bait);
        reference = greedy_reference(obj, grounds, instance.budgets, baits);
        for (int t = 1; t <= grounds.horizon(); ++t) {
          if (instance.budgets.beta[t - 1] < 1) {
            bisections.emplace_back();  // no removal to pre-empt
            continue;
          }
          SelectionSequence history = trace.survivors_prefix(t - 1);
          const ElementSet& selected = trace.steps[t - 1].selected;
          double u0 = default_bisection_upper(obj, history, selected);
          bisections.push_back(bisection_lambda(obj, history, selected,
                                                instance.budgets.beta[t - 1],
                                                u0, 1e-6, config.removal_cap));
        }
      }

      for (int t = 1; t <= grounds.horizon(); ++t) {
        ResultRow row;
        row.trial_seed = trial_seed;
        row.selector = selector_name;
        row.attacker = attacker_name;
        row.step = t;
        row.f_value = trace.steps[t - 1].value_after_removal;
        row.error = obj.baseline_cost(t) - row.f_value;
        row.oracle_calls = trace.steps[t - 1].selector_oracle_calls;
        if (config.bounds && curvature.has_value()) {
          row.bound_apriori = apriori->value;
          try {
            row.bound_aposteriori =
                aposteriori_bound(obj, trace, t, reference, *curvature,
                                  submodular)
                    .value;
          } catch (const DegenerateInstanceError&) {
          }
          if (instance.budgets.beta[t - 1] >= 1) {
            try {
              row.bound_prefailure =
                  prefailure_bound(obj, bisections, t, reference, *curvature,
                                   submodular)
                      .value;
            } catch (const DegenerateInstanceError&) {
            }
          }
        }
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ArgumentError("bad number in CSV: '" + text + "'");
  }
  return value;
}

}  // namespace

MonteCarloOutput run_monte_carlo(const ScenarioConfig& config) {
  config.validate();
  const int trials = config.trials;
  std::vector<TrialResult> per_trial(trials);
  std::vector<std::string> errors;

  const int workers = std::min(worker_pool_size(), trials);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  auto work = [&]() {
    while (true) {
      int trial = next.fetch_add(1);
      if (trial >= trials) return;
      try {
        per_trial[trial] = run_trial(config, trial);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        errors.push_back("trial " + std::to_string(trial) + ": " + e.what());
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& thread : pool) thread.join();
  }
  if (!errors.empty()) throw Error(errors.front());

  MonteCarloOutput output;
  for (int trial = 0; trial < trials; ++trial) {
    auto& result = per_trial[trial];
    output.rows.insert(output.rows.end(), result.rows.begin(),
                       result.rows.end());
    output.skipped.insert(output.skipped.end(), result.skipped.begin(),
                          result.skipped.end());
  }
  output.summary = summarize(output.rows);
  return output;
}

std::vector<SummaryRow> summarize(const ResultTable& rows) {
  // Deterministic order: first appearance of (selector, attacker), then step.
  struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    double sum_f = 0.0;
    int count = 0;
  };
  std::vector<std::tuple<std::string, std::string, int>> keys;
  std::vector<Accumulator> accs;
  for (const ResultRow& row : rows) {
    std::tuple<std::string, std::string, int> key{row.selector, row.attacker,
                                                  row.step};
    std::size_t i = 0;
    for (; i < keys.size(); ++i) {
      if (keys[i] == key) break;
    }
    if (i == keys.size()) {
      keys.push_back(key);
      accs.emplace_back();
    }
    accs[i].sum += row.error;
    accs[i].sum_sq += row.error * row.error;
    accs[i].sum_f += row.f_value;
    accs[i].count += 1;
  }
  std::vector<SummaryRow> out;
  out.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    SummaryRow row;
    row.selector = std::get<0>(keys[i]);
    row.attacker = std::get<1>(keys[i]);
    row.step = std::get<2>(keys[i]);
    row.trials = accs[i].count;
    row.mean_error = accs[i].sum / accs[i].count;
    row.mean_f = accs[i].sum_f / accs[i].count;
    if (accs[i].count > 1) {
      double variance =
          (accs[i].sum_sq - accs[i].sum * accs[i].sum / accs[i].count) /
          (accs[i].count - 1);
      row.stderr_error = std::sqrt(std::max(variance, 0.0) / accs[i].count);
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string results_to_csv(const ResultTable& rows) {
  std::ostringstream os;
  os << kResultCsvHeader << '\n';
  for (const ResultRow& row : rows) {
    os << row.trial_seed << ',' << row.selector << ',' << row.attacker << ','
       << row.step << ',' << format_double(row.error) << ','
       << format_double(row.f_value) << ','
       << (row.bound_apriori ? format_double(*row.bound_apriori) : "") << ','
       << (row.bound_aposteriori ? format_double(*row.bound_aposteriori) : "")
       << ','
       << (row.bound_prefailure ? format_double(*row.bound_prefailure) : "")
       << ',' << row.oracle_calls << '\n';
  }
  return os.str();
}

void emit_results(const ResultTable& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << results_to_csv(rows);
  if (!out) throw Error("failed writing output file: " + path);
}

ResultTable parse_results_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line) || line != kResultCsvHeader) {
    throw ArgumentError("results CSV: missing or wrong header");
  }
  ResultTable rows;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream fs(line);
    std::string field;
    while (std::getline(fs, field, ',')) fields.push_back(field);
    while (fields.size() < 10) fields.push_back("");
    if (fields.size() != 10) {
      throw ArgumentError("results CSV: wrong field count in: " + line);
    }
    ResultRow row;
    row.trial_seed = std::stoull(fields[0]);
    row.selector = fields[1];
    row.attacker = fields[2];
    row.step = std::stoi(fields[3]);
    row.error = parse_double(fields[4]);
    row.f_value = parse_double(fields[5]);
    if (!fields[6].empty()) row.bound_apriori = parse_double(fields[6]);
    if (!fields[7].empty()) row.bound_aposteriori = parse_double(fields[7]);
    if (!fields[8].empty()) row.bound_prefailure = parse_double(fields[8]);
    row.oracle_calls = std::stoll(fields[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_plot_data(const std::vector<SummaryRow>& summary,
                    const std::string& csv_path) {
  std::string stem = csv_path;
  std::size_t dot = stem.rfind('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  // Group rows per (selector, attacker) preserving order.
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const SummaryRow& row : summary) {
    std::pair<std::string, std::string> key{row.selector, row.attacker};
    if (std::find(pairs.begin(), pairs.end(), key) == pairs.end()) {
      pairs.push_back(key);
    }
  }
  for (const auto& [selector, attacker] : pairs) {
    std::string path = stem + "." + selector + "." + attacker + ".dat";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open plot data file: " + path);
    out << "# step mean_error stderr\n";
    for (const SummaryRow& row : summary) {
      if (row.selector == selector && row.attacker == attacker) {
        out << row.step << ' ' << format_double(row.mean_error) << ' '
            << format_double(row.stderr_error) << '\n';
      }
    }
  }
}

}  // namespace rsm
