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

#include "plmpc/qp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "plmpc/error.hpp"

namespace plmpc {

namespace {

struct TwoSidedBounds {
  Eigen::MatrixXd m;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

// Recognizes A = [M; -M] with M square lower triangular and a usable
// diagonal, i.e. lo <= M x <= hi.
std::optional<TwoSidedBounds> two_sided(const MpcProblem& p) {
  const Eigen::Index n = p.hessian.rows();
  if (p.a_ineq.rows() != 2 * n || p.a_ineq.cols() != n) return std::nullopt;
  const Eigen::MatrixXd top = p.a_ineq.topRows(n);
  const Eigen::MatrixXd bottom = p.a_ineq.bottomRows(n);
  if (!(top + bottom).isZero(0.0)) return std::nullopt;
  const double scale = std::max(1.0, top.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(top(i, i)) < 1e-12 * scale) return std::nullopt;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (top(i, j) != 0.0) return std::nullopt;
    }
  }
  return TwoSidedBounds{top, -p.b_ineq.tail(n), p.b_ineq.head(n)};
}

Eigen::VectorXd project(const TwoSidedBounds& tb, const Eigen::VectorXd& x) {
  const Eigen::VectorXd z =
      (tb.m * x).cwiseMax(tb.lo).cwiseMin(tb.hi);
  return tb.m.triangularView<Eigen::Lower>().solve(z);
}

}  // namespace

std::string_view qp_status_name(QpStatus s) {
  switch (s) {
    case QpStatus::kOptimal: return "optimal";
    case QpStatus::kMaxIter: return "max_iter";
    case QpStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

QpResult solve_qp(const MpcProblem& p, double tol, int max_iter) {
  const Eigen::Index n = p.hessian.rows();
  const Eigen::Index m = p.a_ineq.rows();
  if (p.hessian.cols() != n || p.gradient.size() != n ||
      (m > 0 && p.a_ineq.cols() != n) || p.b_ineq.size() != m) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent QP dimensions");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(p.hessian);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNonConvex, "hessian is not positive definite");
  }
  const auto bounds = two_sided(p);
  if (bounds && ((bounds->lo - bounds->hi).array() > tol).any()) {
    throw Error(ErrorCode::kInfeasibleConstraints,
                "lower bound exceeds upper bound");
  }

  QpResult res;
  const Eigen::VectorXd x_unc = -llt.solve(p.gradient);
  if (m == 0 || ((p.a_ineq * x_unc - p.b_ineq).array() <= tol).all()) {
    res.x = x_unc;
    return res;
  }

  const Eigen::MatrixXd hinv_at = llt.solve(p.a_ineq.transpose());
  const Eigen::MatrixXd pm = p.a_ineq * hinv_at;
  // d = b + A H^-1 f, and the slack b - A x equals P lambda + d.
  const Eigen::VectorXd d = p.b_ineq - p.a_ineq * x_unc;
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd w = d;

  auto residual = [&]() {
    double r = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      r = std::max(r, std::abs(std::min(lambda[i], w[i])));
    }
    return r;
  };

  res.status = QpStatus::kMaxIter;
  for (int it = 1; it <= max_iter; ++it) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const double pii = pm(i, i);
      if (!(pii > 0.0)) continue;
      const double wi = pm.row(i).dot(lambda) - pii * lambda[i] + d[i];
      lambda[i] = std::max(0.0, -wi / pii);
    }
    w.noalias() = pm * lambda + d;
    res.iterations = it;
    res.kkt_residual = residual();
    if (res.kkt_residual <= tol) {
      res.status = QpStatus::kOptimal;
      break;
    }
  }
  res.x = x_unc - hinv_at * lambda;

  if (res.status == QpStatus::kMaxIter && bounds) {
    const double viol = (p.a_ineq * res.x - p.b_ineq).maxCoeff();
    if (viol > tol) {
      res.x = project(*bounds, res.x);
      res.repaired = true;
    }
  }
  return res;
}

}  // namespace plmpc
