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

#include "rsm/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "rsm/errors.hpp"
#include "rsm/rng.hpp"
#include "rsm/solver.hpp"

namespace rsm {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class KeyValueReader {
 public:
  explicit KeyValueReader(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
      ++line_no;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": expected key = value");
      }
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty()) {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": empty key");
      }
      if (!entries_.emplace(key, value).second) {
        throw ConfigError("config: duplicate key '" + key + "'");
      }
    }
  }

  bool take_string(const std::string& key, std::string* out) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return false;
    *out = it->second;
    entries_.erase(it);
    return true;
  }

  template <typename T, typename Parse>
  void take(const std::string& key, T* out, Parse parse) {
    std::string raw;
    if (!take_string(key, &raw)) return;
    try {
      *out = parse(raw);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("config: bad value for '" + key + "': " + raw);
    }
  }

  void take_int(const std::string& key, int* out) {
    take(key, out, [](const std::string& s) { return std::stoi(s); });
  }
  void take_i64(const std::string& key, std::int64_t* out) {
    take(key, out, [](const std::string& s) { return std::stoll(s); });
  }
  void take_u64(const std::string& key, std::uint64_t* out) {
    take(key, out, [](const std::string& s) { return std::stoull(s); });
  }
  void take_double(const std::string& key, double* out) {
    take(key, out, [](const std::string& s) { return std::stod(s); });
  }
  void take_bool(const std::string& key, bool* out) {
    take(key, out, [](const std::string& s) {
      if (s == "true" || s == "1" || s == "yes") return true;
      if (s == "false" || s == "0" || s == "no") return false;
      throw ConfigError("expected a boolean");
    });
  }

  void reject_unknown() const {
    if (!entries_.empty()) {
      throw ConfigError("config: unknown key '" + entries_.begin()->first +
                        "'");
    }
  }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace

void ScenarioConfig::validate() const {
  if (horizon < 1) throw ConfigError("config: horizon must be >= 1");
  if (trials < 1) throw ConfigError("config: trials must be >= 1");
  if (!(0 <= beta && beta <= alpha)) {
    throw ConfigError("config: need 0 <= beta <= alpha");
  }
  if (selectors.empty()) throw ConfigError("config: empty selector list");
  if (attackers.empty()) throw ConfigError("config: empty attacker list");
  try {
    for (const auto& s : selectors) selector_from_name(s);
    for (const auto& a : attackers) attacker_from_name(a);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (kind == ScenarioKind::kSynthetic) {
    if (synthetic_objective != "coverage" && synthetic_objective != "modular") {
      throw ConfigError("config: synthetic_objective must be coverage|modular");
    }
    if (synthetic_per_step < 1 || synthetic_universe < 1 ||
        synthetic_max_cover < 1 || synthetic_weight_max < 1) {
      throw ConfigError("config: synthetic sizes must be >= 1");
    }
  }
}

ScenarioConfig parse_config_text(const std::string& text) {
  KeyValueReader reader(text);
  ScenarioConfig config;
  std::string kind;
  if (!reader.take_string("kind", &kind)) {
    throw ConfigError("config: missing required key 'kind'");
  }
  if (kind == "uav_navigation") {
    config.kind = ScenarioKind::kUavNavigation;
  } else if (kind == "wsn_tracking") {
    config.kind = ScenarioKind::kWsnTracking;
  } else if (kind == "synthetic") {
    config.kind = ScenarioKind::kSynthetic;
  } else {
    throw ConfigError("config: unknown kind '" + kind + "'");
  }
  reader.take_int("horizon", &config.horizon);
  reader.take_int("alpha", &config.alpha);
  reader.take_int("beta", &config.beta);
  reader.take_int("trials", &config.trials);
  reader.take_u64("seed", &config.seed);
  std::string list;
  if (reader.take_string("selectors", &list)) {
    config.selectors = split_csv(list);
  }
  if (reader.take_string("attackers", &list)) {
    config.attackers = split_csv(list);
  }
  reader.take_string("out", &config.output_path);
  reader.take_bool("bounds", &config.bounds);
  reader.take_int("curvature_samples", &config.curvature_samples);

  reader.take_int("uav_ground_sensors", &config.uav_ground_sensors);
  reader.take_double("uav_gps_cov", &config.uav_gps_cov);
  reader.take_double("uav_altimeter_var", &config.uav_altimeter_var);
  reader.take_double("uav_ground_r_min", &config.uav_ground_r_min);
  reader.take_double("uav_ground_r_max", &config.uav_ground_r_max);

  reader.take_int("wsn_sensors", &config.wsn_sensors);
  reader.take_double("wsn_cube_side", &config.wsn_cube_side);
  reader.take_double("wsn_sigma0", &config.wsn_sigma0);
  reader.take_double("wsn_gamma", &config.wsn_gamma);

  reader.take_string("synthetic_objective", &config.synthetic_objective);
  reader.take_int("synthetic_per_step", &config.synthetic_per_step);
  reader.take_int("synthetic_universe", &config.synthetic_universe);
  reader.take_int("synthetic_max_cover", &config.synthetic_max_cover);
  reader.take_int("synthetic_weight_max", &config.synthetic_weight_max);

  reader.take_i64("node_budget", &config.node_budget);
  reader.take_i64("removal_cap", &config.removal_cap);

  reader.reject_unknown();
  config.validate();
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

namespace {

// Double integrator [p; v] with unit time step.
LinearGaussianModel double_integrator_base() {
  LinearGaussianModel model;
  model.state_dim = 6;
  model.dynamics = Eigen::MatrixXd::Identity(6, 6);
  model.dynamics.topRightCorner(3, 3) = Eigen::MatrixXd::Identity(3, 3);
  model.process_noise = Eigen::MatrixXd::Identity(6, 6);
  model.prior_cov = Eigen::MatrixXd::Identity(6, 6);
  return model;
}

}  // namespace

ScenarioInstance generate_uav_scenario(std::uint64_t seed,
                                       const ScenarioConfig& config) {
  Rng rng(seed);
  LinearGaussianModel model = double_integrator_base();

  std::vector<Sensor> bank;
  Sensor gps;
  gps.C = Eigen::MatrixXd::Zero(3, 6);
  gps.C.leftCols(3) = Eigen::MatrixXd::Identity(3, 3);
  gps.R = config.uav_gps_cov * Eigen::MatrixXd::Identity(3, 3);
  bank.push_back(gps);

  Sensor altimeter;
  altimeter.C = Eigen::MatrixXd::Zero(1, 6);
  altimeter.C(0, 2) = 1.0;
  altimeter.R = Eigen::MatrixXd::Constant(1, 1, config.uav_altimeter_var);
  bank.push_back(altimeter);

  for (int g = 0; g < config.uav_ground_sensors; ++g) {
    Sensor s;
    s.C = Eigen::MatrixXd::Zero(1, 6);
    for (int j = 0; j < 6; ++j) s.C(0, j) = rng.next_normal();
    s.R = Eigen::MatrixXd::Constant(
        1, 1,
        rng.next_uniform(config.uav_ground_r_min, config.uav_ground_r_max));
    bank.push_back(s);
  }

  model.sensor_banks.assign(config.horizon, bank);
  auto grounds = std::make_unique<GroundSets>(
      GroundSets::uniform(config.horizon, static_cast<int>(bank.size())));
  ObjectiveHandle objective = make_batch_logdet(*grounds, model);
  Budgets budgets =
      Budgets::uniform(config.horizon, config.alpha, config.beta);
  budgets.validate(*grounds);
  return ScenarioInstance{std::move(grounds),
                          std::make_unique<LinearGaussianModel>(model),
                          std::move(objective), std::move(budgets)};
}

ScenarioInstance generate_wsn_scenario(std::uint64_t seed,
                                       const ScenarioConfig& config) {
  Rng rng(seed);
  LinearGaussianModel model = double_integrator_base();
  const double L = config.wsn_cube_side;

  std::vector<Eigen::Vector3d> positions(config.wsn_sensors);
  for (auto& p : positions) {
    p = Eigen::Vector3d(rng.next_uniform(0.0, L), rng.next_uniform(0.0, L),
                        rng.next_uniform(0.0, L));
  }
  // Straight-line crossing between the x = 0 and x = L faces at constant
  // altitude and speed.
  Eigen::Vector3d start(0.0, rng.next_uniform(0.0, L),
                        rng.next_uniform(0.0, L));
  Eigen::Vector3d finish(L, rng.next_uniform(0.0, L), start.z());

  Eigen::MatrixXd position_C = Eigen::MatrixXd::Zero(3, 6);
  position_C.leftCols(3) = Eigen::MatrixXd::Identity(3, 3);
  model.sensor_banks.resize(config.horizon);
  for (int t = 1; t <= config.horizon; ++t) {
    double fraction = config.horizon == 1
                          ? 0.5
                          : static_cast<double>(t - 1) / (config.horizon - 1);
    Eigen::Vector3d nominal = start + fraction * (finish - start);
    auto& bank = model.sensor_banks[t - 1];
    bank.reserve(positions.size());
    for (const auto& p : positions) {
      double d2 = (p - nominal).squaredNorm();
      Sensor s;
      s.C = position_C;
      s.R = (config.wsn_sigma0 * config.wsn_sigma0 + config.wsn_gamma * d2) *
            Eigen::MatrixXd::Identity(3, 3);
      bank.push_back(std::move(s));
    }
  }

  auto grounds = std::make_unique<GroundSets>(
      GroundSets::uniform(config.horizon, config.wsn_sensors));
  ObjectiveHandle objective = make_kalman_trace(*grounds, model);
  Budgets budgets =
      Budgets::uniform(config.horizon, config.alpha, config.beta);
  budgets.validate(*grounds);
  return ScenarioInstance{std::move(grounds),
                          std::make_unique<LinearGaussianModel>(model),
                          std::move(objective), std::move(budgets)};
}

ScenarioInstance generate_synthetic_scenario(std::uint64_t seed,
                                             const ScenarioConfig& config) {
  Rng rng(seed);
  auto grounds = std::make_unique<GroundSets>(
      GroundSets::uniform(config.horizon, config.synthetic_per_step));
  Budgets budgets =
      Budgets::uniform(config.horizon, config.alpha, config.beta);
  budgets.validate(*grounds);
  if (config.synthetic_objective == "modular") {
    ModularSpec spec;
    for (GlobalId id : grounds->all_ids()) {
      spec.weights[id] =
          1.0 + static_cast<double>(rng.next_below(config.synthetic_weight_max));
    }
    ObjectiveHandle objective = make_modular(*grounds, spec);
    return ScenarioInstance{std::move(grounds), nullptr, std::move(objective),
                            std::move(budgets)};
  }
  CoverageSpec spec;
  spec.universe_weights.resize(config.synthetic_universe);
  for (auto& w : spec.universe_weights) {
    w = 1.0 + static_cast<double>(rng.next_below(config.synthetic_weight_max));
  }
  for (GlobalId id : grounds->all_ids()) {
    int count = 1 + static_cast<int>(rng.next_below(config.synthetic_max_cover));
    std::vector<int> items;
    for (int k = 0; k < count; ++k) {
      int item = static_cast<int>(rng.next_below(config.synthetic_universe));
      if (std::find(items.begin(), items.end(), item) == items.end()) {
        items.push_back(item);
      }
    }
    spec.covers[id] = std::move(items);
  }
  ObjectiveHandle objective = make_coverage(*grounds, spec);
  return ScenarioInstance{std::move(grounds), nullptr, std::move(objective),
                          std::move(budgets)};
}

ScenarioInstance generate_scenario(std::uint64_t seed,
                                   const ScenarioConfig& config) {
  switch (config.kind) {
    case ScenarioKind::kUavNavigation:
      return generate_uav_scenario(seed, config);
    case ScenarioKind::kWsnTracking:
      return generate_wsn_scenario(seed, config);
    case ScenarioKind::kSynthetic:
      return generate_synthetic_scenario(seed, config);
  }
  throw ConfigError("unknown scenario kind");
}

}  // namespace rsm
