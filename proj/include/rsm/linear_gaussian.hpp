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
// Linear-Gaussian sensor-scheduling objectives. A model is a discrete-time
// linear system x_{s+1} = F x_s + w, w ~ N(0, Q), x_0 ~ N(0, Sigma0), with
// one bank of candidate linear sensors y = C x + v, v ~ N(0, R) per step,
// mapped one-to-one (by local index) onto that step's ground set.
//
// Two objectives are built on top:
//  - batch log-det: f(A) = logdet J(A) - logdet J(empty), with J the
//    full-horizon batch information matrix (block-tridiagonal prior plus
//    C^T R^-1 C in the block of each selected sensor's step). Trailing empty
//    steps cancel in the normalization, so f is a set function on the union
//    of the ground sets.
//  - Kalman filtering trace: f of a length-l sequence sums, over steps
//    s = 1..l, the reduction in trace of the filtered covariance relative to
//    selecting nothing. Causal: step-s terms depend only on selections up to
//    s, which makes f well defined on prefixes.
//

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rsm/objective.hpp"
#include "rsm/types.hpp"

namespace rsm {

struct Sensor {
  Eigen::MatrixXd C;  // m x n measurement matrix
  Eigen::MatrixXd R;  // m x m positive-definite noise covariance
};

struct LinearGaussianModel {
  int state_dim = 0;
  Eigen::MatrixXd dynamics;       // F, n x n
  Eigen::MatrixXd process_noise;  // Q, n x n PSD (invertible for batch form)
  Eigen::MatrixXd prior_cov;      // Sigma0, n x n PD
  std::vector<std::vector<Sensor>> sensor_banks;  // one bank per step

  // Checks symmetry/PD/PSD (Cholesky pivot tolerance 1e-10) and that bank
  // sizes match the per-step ground sets.
  void validate(const GroundSets& grounds) const;
};

// Filtered covariances along a selection sequence, via the information-form
// recursion; exposed for diagnostics and for the oracle cross-checks.
struct EstimatorOutput {
  std::vector<Eigen::MatrixXd> filtered_covariances;  // Sigma_{s|s}, s=1..l
  double batch_logdet = 0.0;  // logdet of the l-step batch covariance
};

EstimatorOutput run_information_filter(const LinearGaussianModel& model,
                                       const GroundSets& grounds,
                                       const SelectionSequence& seq);

// logdet of a symmetric positive-definite matrix via Cholesky;
// NumericalError (mentioning `what`) if the factorization fails.
double logdet_spd(const Eigen::MatrixXd& m, const std::string& what);

ObjectiveHandle make_batch_logdet(const GroundSets& grounds,
                                  const LinearGaussianModel& model);
ObjectiveHandle make_kalman_trace(const GroundSets& grounds,
                                  const LinearGaussianModel& model);

}  // namespace rsm
