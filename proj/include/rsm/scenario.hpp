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
// Scenario configuration and generation. Config documents are flat
// `key = value` files (# comments); unknown keys are errors so that a config
// always means what it says.
//

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rsm/linear_gaussian.hpp"
#include "rsm/objective.hpp"
#include "rsm/objectives.hpp"
#include "rsm/types.hpp"

namespace rsm {

enum class ScenarioKind { kUavNavigation, kWsnTracking, kSynthetic };

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kSynthetic;
  int horizon = 1;
  int alpha = 1;   // applied uniformly across steps
  int beta = 0;    // applied uniformly across steps
  int trials = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> selectors = {"ram"};
  std::vector<std::string> attackers = {"worst"};
  std::string output_path;
  bool bounds = false;
  int curvature_samples = 2000;

  // uav_navigation
  int uav_ground_sensors = 10;
  double uav_gps_cov = 2.0;
  double uav_altimeter_var = 0.25;
  double uav_ground_r_min = 0.5;
  double uav_ground_r_max = 2.0;

  // wsn_tracking
  int wsn_sensors = 100;
  double wsn_cube_side = 100.0;
  double wsn_sigma0 = 0.5;
  double wsn_gamma = 0.01;

  // synthetic
  std::string synthetic_objective = "coverage";  // coverage | modular
  int synthetic_per_step = 5;
  int synthetic_universe = 8;
  int synthetic_max_cover = 3;
  int synthetic_weight_max = 9;

  // capacity limits
  std::int64_t node_budget = 20000000;
  std::int64_t removal_cap = 1000000;

  void validate() const;
};

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// A generated problem instance: ground sets plus an objective over them.
// The model is present for the two estimation scenarios.
struct ScenarioInstance {
  std::unique_ptr<GroundSets> grounds;
  std::unique_ptr<LinearGaussianModel> model;
  ObjectiveHandle objective;
  Budgets budgets;
};

// Double-integrator state [p; v] in 3D, unit time step, unit process noise
// and prior; a GPS, an altimeter, and `uav_ground_sensors` random linear
// sensors per step, replicated across the horizon with distinct ids.
ScenarioInstance generate_uav_scenario(std::uint64_t seed,
                                       const ScenarioConfig& config);

// The same double integrator crossing a cube on a straight line at constant
// altitude and speed; ground sensors at uniform positions measure position
// with noise growing with distance to the nominal track:
// R = (sigma0^2 + gamma d^2) I.
ScenarioInstance generate_wsn_scenario(std::uint64_t seed,
                                       const ScenarioConfig& config);

// A random coverage or modular instance for desk-scale experiments.
ScenarioInstance generate_synthetic_scenario(std::uint64_t seed,
                                             const ScenarioConfig& config);

ScenarioInstance generate_scenario(std::uint64_t seed,
                                   const ScenarioConfig& config);

}  // namespace rsm
