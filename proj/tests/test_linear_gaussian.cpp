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

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rsm/errors.hpp"
#include "rsm/linear_gaussian.hpp"
#include "rsm/rng.hpp"

using namespace rsm;
using rsm::testing::seq_of;

namespace {

// Scalar system: n = 1, F = Q = Sigma0 = 1, one unit sensor per step.
LinearGaussianModel scalar_model(int horizon) {
  LinearGaussianModel model;
  model.state_dim = 1;
  model.dynamics = Eigen::MatrixXd::Constant(1, 1, 1.0);
  model.process_noise = Eigen::MatrixXd::Constant(1, 1, 1.0);
  model.prior_cov = Eigen::MatrixXd::Constant(1, 1, 1.0);
  Sensor unit;
  unit.C = Eigen::MatrixXd::Constant(1, 1, 1.0);
  unit.R = Eigen::MatrixXd::Constant(1, 1, 1.0);
  model.sensor_banks.assign(horizon, {unit});
  return model;
}

// Random stable-ish model with a few sensors per step.
LinearGaussianModel random_model(Rng& rng, int n, int horizon, int sensors) {
  LinearGaussianModel model;
  model.state_dim = n;
  model.dynamics = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) model.dynamics(i, j) = 0.5 * rng.next_normal();
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.next_normal();
  }
  model.process_noise = a * a.transpose() + Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = rng.next_normal();
  }
  model.prior_cov = b * b.transpose() + Eigen::MatrixXd::Identity(n, n);
  model.sensor_banks.resize(horizon);
  for (int t = 0; t < horizon; ++t) {
    for (int s = 0; s < sensors; ++s) {
      Sensor sensor;
      sensor.C = Eigen::MatrixXd::Zero(1, n);
      for (int j = 0; j < n; ++j) sensor.C(0, j) = rng.next_normal();
      sensor.R = Eigen::MatrixXd::Constant(1, 1, rng.next_uniform(0.3, 2.0));
      model.sensor_banks[t].push_back(std::move(sensor));
    }
  }
  return model;
}

}  // namespace

TEST_CASE("model validation catches bad inputs") {
  GroundSets grounds = GroundSets::uniform(1, 1);
  LinearGaussianModel model = scalar_model(1);
  CHECK_NOTHROW(model.validate(grounds));

  LinearGaussianModel bad_r = model;
  bad_r.sensor_banks[0][0].R = Eigen::MatrixXd::Constant(1, 1, -1.0);
  CHECK_THROWS_AS(bad_r.validate(grounds), ArgumentError);

  LinearGaussianModel bad_bank = model;
  bad_bank.sensor_banks[0].push_back(bad_bank.sensor_banks[0][0]);
  CHECK_THROWS_AS(bad_bank.validate(grounds), ArgumentError);

  LinearGaussianModel bad_prior = model;
  bad_prior.prior_cov = Eigen::MatrixXd::Constant(1, 1, 0.0);
  CHECK_THROWS_AS(bad_prior.validate(grounds), ArgumentError);
}

TEST_CASE("batch log-det: scalar hand computation") {
  GroundSets grounds = GroundSets::uniform(1, 1);
  LinearGaussianModel model = scalar_model(1);
  ObjectiveHandle obj = make_batch_logdet(grounds, model);
  CHECK(obj.evaluate(SelectionSequence{}) == 0.0);
  // Prior variance of x_1 is F Sigma0 F + Q = 2, so J(empty) = 1/2 and
  // selecting the unit sensor gives J = 3/2: f = ln 3.
  CHECK(obj.evaluate(seq_of({{0}})) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  // Covariance-form oracle agrees.
  CHECK(rsm::testing::batch_logdet_oracle(model, grounds, seq_of({{0}}), 1) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("kalman trace: scalar hand computation") {
  GroundSets grounds = GroundSets::uniform(1, 1);
  LinearGaussianModel model = scalar_model(1);
  ObjectiveHandle obj = make_kalman_trace(grounds, model);
  CHECK(obj.evaluate(SelectionSequence{}) == 0.0);
  // Predicted variance 2; updated J = 1/2 + 1 so Sigma = 2/3; f = 2 - 2/3.
  CHECK(obj.evaluate(seq_of({{0}})) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(rsm::testing::kalman_trace_oracle(model, grounds, seq_of({{0}})) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("batch log-det agrees with the covariance-form oracle") {
  Rng rng(2026);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    int horizon = 1 + static_cast<int>(rng.next_below(3));
    int sensors = 2 + static_cast<int>(rng.next_below(3));
    LinearGaussianModel model = random_model(rng, n, horizon, sensors);
    GroundSets grounds = GroundSets::uniform(horizon, sensors);
    ObjectiveHandle obj = make_batch_logdet(grounds, model);
    // A few random selections.
    for (int pick = 0; pick < 5; ++pick) {
      std::vector<ElementSet> sets(horizon);
      for (int t = 1; t <= horizon; ++t) {
        for (GlobalId id : grounds.ids_at(t)) {
          if (rng.next_below(2) == 0) sets[t - 1].push_back(id);
        }
      }
      SelectionSequence seq{sets};
      double expected = rsm::testing::batch_logdet_oracle(model, grounds, seq,
                                                          horizon);
      CHECK(obj.evaluate(seq) == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("information-form and gain-form filters agree") {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    int horizon = 1 + static_cast<int>(rng.next_below(3));
    int sensors = 2 + static_cast<int>(rng.next_below(3));
    LinearGaussianModel model = random_model(rng, n, horizon, sensors);
    GroundSets grounds = GroundSets::uniform(horizon, sensors);
    std::vector<ElementSet> sets(horizon);
    for (int t = 1; t <= horizon; ++t) {
      for (GlobalId id : grounds.ids_at(t)) {
        if (rng.next_below(2) == 0) sets[t - 1].push_back(id);
      }
    }
    SelectionSequence seq{sets};
    EstimatorOutput info = run_information_filter(model, grounds, seq);
    auto gain = rsm::testing::kalman_gain_form(model, grounds, seq, horizon);
    REQUIRE(info.filtered_covariances.size() == gain.size());
    for (std::size_t s = 0; s < gain.size(); ++s) {
      CHECK((info.filtered_covariances[s] - gain[s]).cwiseAbs().maxCoeff() <
            1e-8);
      // Symmetric PSD within tolerance.
      Eigen::MatrixXd cov = info.filtered_covariances[s];
      CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() < 1e-9);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
      CHECK(es.eigenvalues().minCoeff() > -1e-9);
    }
  }
}

TEST_CASE("kalman trace objective agrees with the gain-form oracle") {
  Rng rng(5150);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    int horizon = 1 + static_cast<int>(rng.next_below(3));
    int sensors = 2 + static_cast<int>(rng.next_below(3));
    LinearGaussianModel model = random_model(rng, n, horizon, sensors);
    GroundSets grounds = GroundSets::uniform(horizon, sensors);
    ObjectiveHandle obj = make_kalman_trace(grounds, model);
    for (int pick = 0; pick < 4; ++pick) {
      int length = 1 + static_cast<int>(rng.next_below(horizon));
      std::vector<ElementSet> sets(length);
      for (int t = 1; t <= length; ++t) {
        for (GlobalId id : grounds.ids_at(t)) {
          if (rng.next_below(2) == 0) sets[t - 1].push_back(id);
        }
      }
      SelectionSequence seq{sets};
      double expected = rsm::testing::kalman_trace_oracle(model, grounds, seq);
      CHECK(obj.evaluate(seq) == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("batch log-det: exhaustive submodularity and normalization") {
  Rng rng(31337);
  for (int trial = 0; trial < 3; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    int horizon = 1 + static_cast<int>(rng.next_below(3));
    int sensors = 2 + static_cast<int>(rng.next_below(3));  // |V_t| <= 4
    LinearGaussianModel model = random_model(rng, n, horizon, sensors);
    GroundSets grounds = GroundSets::uniform(horizon, sensors);
    ObjectiveHandle obj = make_batch_logdet(grounds, model);
    CHECK(obj.evaluate(SelectionSequence{}) == 0.0);

    const ElementSet universe = grounds.all_ids();
    const int total = static_cast<int>(universe.size());
    std::vector<double> value(std::size_t{1} << total);
    for (std::size_t mask = 0; mask < value.size(); ++mask) {
      ElementSet set;
      for (int i = 0; i < total; ++i) {
        if (mask & (std::size_t{1} << i)) set.push_back(universe[i]);
      }
      value[mask] = obj.evaluate_set(set);
    }
    // Pairwise characterization of diminishing returns.
    for (std::size_t mask = 0; mask < value.size(); ++mask) {
      for (int v = 0; v < total; ++v) {
        if (mask & (std::size_t{1} << v)) continue;
        for (int w = v + 1; w < total; ++w) {
          if (mask & (std::size_t{1} << w)) continue;
          std::size_t with_v = mask | (std::size_t{1} << v);
          std::size_t with_w = mask | (std::size_t{1} << w);
          CHECK(value[with_v] + value[with_w] >=
                value[with_v | with_w] + value[mask] - 1e-8);
        }
      }
    }
  }
}

TEST_CASE("kalman trace: exhaustive monotonicity and duplicate marginals") {
  Rng rng(991);
  for (int trial = 0; trial < 3; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    int horizon = 1 + static_cast<int>(rng.next_below(3));
    int sensors = 2 + static_cast<int>(rng.next_below(3));
    LinearGaussianModel model = random_model(rng, n, horizon, sensors);
    GroundSets grounds = GroundSets::uniform(horizon, sensors);
    ObjectiveHandle obj = make_kalman_trace(grounds, model);
    CHECK(obj.evaluate(SelectionSequence{}) == 0.0);

    const ElementSet universe = grounds.all_ids();
    const int total = static_cast<int>(universe.size());
    std::vector<double> value(std::size_t{1} << total);
    for (std::size_t mask = 0; mask < value.size(); ++mask) {
      ElementSet set;
      for (int i = 0; i < total; ++i) {
        if (mask & (std::size_t{1} << i)) set.push_back(universe[i]);
      }
      value[mask] = obj.evaluate_set(set);
    }
    for (std::size_t mask = 0; mask < value.size(); ++mask) {
      for (int v = 0; v < total; ++v) {
        if (mask & (std::size_t{1} << v)) continue;
        CHECK(value[mask | (std::size_t{1} << v)] >= value[mask] - 1e-8);
      }
    }
  }
}

TEST_CASE("batch log-det: duplicated sensor marginal never beats singleton") {
  // Two identical sensors at one step; submodularity makes the second's
  // marginal no larger than its singleton value.
  GroundSets grounds = GroundSets::uniform(1, 2);
  LinearGaussianModel model = scalar_model(1);
  model.sensor_banks[0].push_back(model.sensor_banks[0][0]);
  ObjectiveHandle obj = make_batch_logdet(grounds, model);
  double singleton = obj.evaluate(seq_of({{1}}));
  double marginal = obj.marginal(seq_of({{0}}), 1, {1});
  CHECK(marginal <= singleton + 1e-12);
}
