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

#include <string_view>

#include <Eigen/Dense>

namespace plmpc {

/// min 1/2 x'Hx + f'x + constant  s.t.  A x <= b.
struct MpcProblem {
  Eigen::MatrixXd hessian;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd a_ineq;
  Eigen::VectorXd b_ineq;
  double constant = 0.0;

  double objective(const Eigen::VectorXd& x) const {
    return 0.5 * x.dot(hessian * x) + gradient.dot(x) + constant;
  }
};

enum class QpStatus { kOptimal, kMaxIter, kInfeasible };

std::string_view qp_status_name(QpStatus s);

struct QpResult {
  Eigen::VectorXd x;
  QpStatus status = QpStatus::kOptimal;
  int iterations = 0;
  /// Natural KKT residual max_i |min(lambda_i, slack_i)| at the returned
  /// dual iterate.
  double kkt_residual = 0.0;
  bool repaired = false;  ///< x was projected back onto the constraints
};

/// Hildreth's dual coordinate ascent. Throws kNonConvex when H is not
/// positive definite and kInfeasibleConstraints when a two-sided bound
/// structure A = [M; -M] has an empty range.
///
/// If the sweeps stop at max_iter with a primal violation above tol and A
/// has the [M; -M] structure with M lower triangular, M x is clipped into
/// its bounds and solved back for x.
QpResult solve_qp(const MpcProblem& p, double tol = 1e-9, int max_iter = 2000);

}  // namespace plmpc
