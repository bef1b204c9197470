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

#include "rsm/linear_gaussian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <memory>
#include <string>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

constexpr double kPivotTol = 1e-10;

void require_square(const Eigen::MatrixXd& m, int n, const std::string& what) {
  if (m.rows() != n || m.cols() != n) {
    throw ArgumentError(what + ": expected " + std::to_string(n) + "x" +
                        std::to_string(n) + " matrix");
  }
}

void require_symmetric(const Eigen::MatrixXd& m, const std::string& what) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw ArgumentError(what + ": matrix is not symmetric");
  }
}

void require_pd(const Eigen::MatrixXd& m, const std::string& what) {
  require_symmetric(m, what);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success ||
      llt.matrixL().toDenseMatrix().diagonal().minCoeff() <= kPivotTol) {
    throw ArgumentError(what + ": matrix is not positive definite "
                        "(smallest Cholesky pivot below 1e-10)");
  }
}

void require_psd(const Eigen::MatrixXd& m, const std::string& what) {
  require_symmetric(m, what);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() < -kPivotTol) {
    throw ArgumentError(what + ": matrix is not positive semidefinite");
  }
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd invert_spd(const Eigen::MatrixXd& m, const std::string& what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky inversion failed: " + what);
  }
  return symmetrize(
      llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols())));
}

// Shared precomputation for both objectives.
struct ModelCache {
  int n = 0;
  int horizon = 0;
  Eigen::MatrixXd F;
  Eigen::MatrixXd Q;
  Eigen::MatrixXd Q_inv;
  Eigen::MatrixXd first_prior_info;  // (F Sigma0 F^T + Q)^{-1}
  // Per step, per local sensor index: C^T R^{-1} C.
  std::vector<std::vector<Eigen::MatrixXd>> info_terms;
  // Local sensor index per global id, dense over the id range.
  const GroundSets* grounds = nullptr;

  ModelCache(const GroundSets& g, const LinearGaussianModel& model) {
    model.validate(g);
    n = model.state_dim;
    horizon = g.horizon();
    grounds = &g;
    F = model.dynamics;
    Q = model.process_noise;
    Q_inv = invert_spd(model.process_noise, "process noise covariance");
    Eigen::MatrixXd first_prior =
        symmetrize(F * model.prior_cov * F.transpose() + model.process_noise);
    first_prior_info = invert_spd(first_prior, "prior covariance of step 1");
    info_terms.resize(horizon);
    for (int t = 1; t <= horizon; ++t) {
      const auto& bank = model.sensor_banks[t - 1];
      info_terms[t - 1].reserve(bank.size());
      for (std::size_t i = 0; i < bank.size(); ++i) {
        const Sensor& s = bank[i];
        Eigen::MatrixXd R_inv =
            invert_spd(s.R, "sensor noise covariance at step " +
                                std::to_string(t));
        info_terms[t - 1].push_back(
            symmetrize(s.C.transpose() * R_inv * s.C));
      }
    }
  }

  const Eigen::MatrixXd& info_term(GlobalId id) const {
    const Element& e = grounds->element(id);
    return info_terms[e.step - 1][e.local_index];
  }

  // Batch information matrix over `steps` blocks with the given selections
  // (selections beyond `steps` are ignored by the caller's construction).
  Eigen::MatrixXd batch_information(const SelectionSequence& seq,
                                    int steps) const {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n * steps, n * steps);
    J.topLeftCorner(n, n) = first_prior_info;
    Eigen::MatrixXd FtQinv = F.transpose() * Q_inv;
    Eigen::MatrixXd FtQinvF = symmetrize(FtQinv * F);
    for (int tau = 0; tau + 1 < steps; ++tau) {
      J.block(n * tau, n * tau, n, n) += FtQinvF;
      J.block(n * tau, n * (tau + 1), n, n) -= FtQinv;
      J.block(n * (tau + 1), n * tau, n, n) -= FtQinv.transpose();
      J.block(n * (tau + 1), n * (tau + 1), n, n) += Q_inv;
    }
    for (int t = 1; t <= seq.length() && t <= steps; ++t) {
      for (GlobalId id : seq.set_at(t)) {
        J.block(n * (t - 1), n * (t - 1), n, n) += info_term(id);
      }
    }
    return symmetrize(J);
  }

  // Filtered covariances Sigma_{s|s} for s = 1..steps under `seq`.
  std::vector<Eigen::MatrixXd> filter_covariances(const SelectionSequence& seq,
                                                  int steps) const {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(steps);
    Eigen::MatrixXd predicted_info = first_prior_info;
    for (int s = 1; s <= steps; ++s) {
      Eigen::MatrixXd J = predicted_info;
      if (s <= seq.length()) {
        for (GlobalId id : seq.set_at(s)) J += info_term(id);
      }
      Eigen::MatrixXd cov =
          invert_spd(symmetrize(J), "filtered information at step " +
                                        std::to_string(s));
      out.push_back(cov);
      if (s < steps) {
        Eigen::MatrixXd predicted = symmetrize(F * cov * F.transpose() + Q);
        predicted_info =
            invert_spd(predicted, "predicted covariance at step " +
                                      std::to_string(s + 1));
      }
    }
    return out;
  }
};

}  // namespace

void LinearGaussianModel::validate(const GroundSets& grounds) const {
  if (state_dim <= 0) throw ArgumentError("model: state dimension must be positive");
  require_square(dynamics, state_dim, "dynamics F");
  require_square(process_noise, state_dim, "process noise Q");
  require_square(prior_cov, state_dim, "prior covariance Sigma0");
  require_psd(process_noise, "process noise Q");
  require_pd(prior_cov, "prior covariance Sigma0");
  if (static_cast<int>(sensor_banks.size()) != grounds.horizon()) {
    throw ArgumentError("model: sensor bank count != horizon");
  }
  for (int t = 1; t <= grounds.horizon(); ++t) {
    const auto& bank = sensor_banks[t - 1];
    if (bank.size() != grounds.elements_at(t).size()) {
      throw ArgumentError("model: sensor bank at step " + std::to_string(t) +
                          " has " + std::to_string(bank.size()) +
                          " sensors but |V_t| = " +
                          std::to_string(grounds.elements_at(t).size()));
    }
    for (std::size_t i = 0; i < bank.size(); ++i) {
      const Sensor& s = bank[i];
      if (s.C.cols() != state_dim || s.C.rows() < 1) {
        throw ArgumentError("model: sensor " + std::to_string(i) +
                            " at step " + std::to_string(t) +
                            " has a measurement matrix of wrong shape");
      }
      if (s.R.rows() != s.C.rows() || s.R.cols() != s.C.rows()) {
        throw ArgumentError("model: sensor " + std::to_string(i) +
                            " at step " + std::to_string(t) +
                            " has mismatched noise covariance shape");
      }
      require_pd(s.R, "sensor noise covariance R (step " + std::to_string(t) +
                          ", sensor " + std::to_string(i) + ")");
    }
  }
}

double logdet_spd(const Eigen::MatrixXd& m, const std::string& what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky factorization failed: " + what);
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

EstimatorOutput run_information_filter(const LinearGaussianModel& model,
                                       const GroundSets& grounds,
                                       const SelectionSequence& seq) {
  ModelCache cache(grounds, model);
  int steps = std::max(seq.length(), 1);
  EstimatorOutput out;
  out.filtered_covariances = cache.filter_covariances(seq, steps);
  out.batch_logdet = -logdet_spd(cache.batch_information(seq, steps),
                                 "batch information matrix");
  return out;
}

ObjectiveHandle make_batch_logdet(const GroundSets& grounds,
                                  const LinearGaussianModel& model) {
  auto cache = std::make_shared<ModelCache>(grounds, model);
  const int T = grounds.horizon();
  // Trailing empty steps cancel against the normalization, so all sequences
  // are evaluated on the full horizon for bit-identical canonical values.
  auto raw = [cache, T](const SelectionSequence& seq) {
    return logdet_spd(cache->batch_information(seq, T),
                      "batch information matrix");
  };
  auto baseline = [cache](int step) {
    // c(empty) through step t: logdet of the t-step batch covariance.
    return -logdet_spd(cache->batch_information(SelectionSequence{}, step),
                       "batch information matrix");
  };
  return ObjectiveHandle("batch_logdet", &grounds, std::move(raw),
                         /*submodular=*/true, std::move(baseline));
}

ObjectiveHandle make_kalman_trace(const GroundSets& grounds,
                                  const LinearGaussianModel& model) {
  auto cache = std::make_shared<ModelCache>(grounds, model);
  // trace Sigma_{s|s}(empty), s = 1..T, computed once.
  auto empty_traces = std::make_shared<std::vector<double>>();
  {
    auto covs = cache->filter_covariances(SelectionSequence{},
                                          grounds.horizon());
    for (const auto& cov : covs) empty_traces->push_back(cov.trace());
  }
  auto raw = [cache, empty_traces](const SelectionSequence& seq) {
    if (seq.length() == 0) return 0.0;
    auto covs = cache->filter_covariances(seq, seq.length());
    double total = 0.0;
    for (int s = 1; s <= seq.length(); ++s) {
      total += (*empty_traces)[s - 1] - covs[s - 1].trace();
    }
    return total;
  };
  auto baseline = [empty_traces](int step) {
    double total = 0.0;
    for (int s = 1; s <= step && s <= static_cast<int>(empty_traces->size());
         ++s) {
      total += (*empty_traces)[s - 1];
    }
    return total;
  };
  return ObjectiveHandle("kalman_trace", &grounds, std::move(raw),
                         /*submodular=*/false, std::move(baseline));
}

}  // namespace rsm
