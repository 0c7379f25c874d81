// Copyright 2026 The plmpc Authors
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

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "plmpc/estimator.hpp"
#include "plmpc/frit.hpp"
#include "plmpc/qp.hpp"
#include "plmpc/signals.hpp"

namespace plmpc {

struct MpcWeights {
  double q = 1.0;  ///< tracking error, i = 1..hp
  double r = 0.0;  ///< estimated input variation, i = 0..hp-1
  double v = 1.0;  ///< internal reference variation, i = 0..hp-1
  int hp = 5;

  void validate() const;
};

struct InputConstraints {
  double u_min = 0.0;
  double u_max = 1.0;

  void validate() const;
};

/// Affine maps of the decision vector dv:
///   u_hat = u0 + su dv,  du_hat = d0 + sd dv,  y_next = y0 + sy dv,
/// where y_next(i) is the PL output at k+i+1.
struct MpcPrediction {
  Eigen::VectorXd u0, d0, y0;
  Eigen::MatrixXd su, sd, sy;
};

MpcPrediction build_prediction(const ThetaFull& th, double ts, int hp,
                               const EstimatorState& est, double y_meas,
                               double v_prev);

/// Condensed QP in dv with the two-sided input bounds stacked as
/// [su; -su] dv <= [u_max - u0; u0 - u_min]. constant holds the cost at
/// dv = 0, so objective() is the full cost.
MpcProblem build_qp(const ThetaFull& th, double ts, const MpcWeights& w,
                    const InputConstraints& c, const EstimatorState& est,
                    double y_meas, double v_prev,
                    const std::vector<double>& r_preview,
                    MpcPrediction* prediction = nullptr);

/// r(k+1..k+hp), holding the last sample beyond the end.
std::vector<double> reference_preview(const TimeSeries& r, std::size_t k,
                                      int hp);

struct MpcController {
  ThetaFull theta;
  double ts = 1.0;
  MpcWeights weights;
  InputConstraints limits;
  double qp_tol = 1e-9;
  int qp_max_iter = 2000;

  EstimatorState estimator;
  double v_prev = 0.0;
  bool started = false;  ///< v_prev is set to the first measurement
};

MpcController make_mpc_controller(const ThetaFull& th, double ts,
                                  const MpcWeights& w,
                                  const InputConstraints& c);

struct MpcStepResult {
  double v = 0.0;  ///< applied internal reference
  double u = 0.0;  ///< inner PID output sent to the plant
  double cost = 0.0;
  QpStatus status = QpStatus::kOptimal;
  int qp_iterations = 0;
  std::vector<double> u_hat;  ///< predicted inner inputs k..k+hp-1
  std::vector<double> y_hat;  ///< predicted PL outputs k+1..k+hp
};

/// One receding-horizon step. Solver trouble is reported in the status;
/// on infeasible bounds the unconstrained move is applied instead.
MpcStepResult mpc_step(MpcController& ctrl, double y_meas,
                       const std::vector<double>& r_preview);

}  // namespace plmpc
