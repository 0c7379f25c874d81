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

#include "plmpc/mpc.hpp"

#include <cmath>

namespace plmpc {

void MpcWeights::validate() const {
  if (!(q >= 0.0) || !(r >= 0.0) || !std::isfinite(q) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidArgument, "q and r must be finite and >= 0");
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, "v must be > 0");
  }
  if (hp < 1) throw Error(ErrorCode::kInvalidArgument, "hp must be >= 1");
}

void InputConstraints::validate() const {
  if (!(u_min < u_max)) {
    throw Error(ErrorCode::kInvalidArgument, "u_min must be < u_max");
  }
}

namespace {

void rollout(const ThetaFull& th, double ts, const EstimatorState& est,
             double x0, const std::vector<double>& v, Eigen::VectorXd& u,
             Eigen::VectorXd& du, Eigen::VectorXd& y_next) {
  const HorizonEstimate h = estimate_horizon(th, ts, est, x0, v);
  const PlModel m = th.pl(ts);
  const Eigen::Index n = static_cast<Eigen::Index>(v.size());
  u.resize(n);
  du.resize(n);
  y_next.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    u[i] = h.u_hat[i];
    du[i] = h.du_hat[i];
    y_next[i] = m.a_p * h.y_hat[i] + m.b_p * v[i];
  }
}

}  // namespace

MpcPrediction build_prediction(const ThetaFull& th, double ts, int hp,
                               const EstimatorState& est, double y_meas,
                               double v_prev) {
  MpcPrediction p;
  rollout(th, ts, est, y_meas, std::vector<double>(hp, v_prev), p.u0, p.d0,
          p.y0);
  p.su.resize(hp, hp);
  p.sd.resize(hp, hp);
  p.sy.resize(hp, hp);
  const EstimatorState zero;
  Eigen::VectorXd u, du, y;
  for (int j = 0; j < hp; ++j) {
    // dv = e_j raises v by one from step j on.
    std::vector<double> step(hp, 0.0);
    for (int i = j; i < hp; ++i) step[i] = 1.0;
    rollout(th, ts, zero, 0.0, step, u, du, y);
    p.su.col(j) = u;
    p.sd.col(j) = du;
    p.sy.col(j) = y;
  }
  return p;
}

MpcProblem build_qp(const ThetaFull& th, double ts, const MpcWeights& w,
                    const InputConstraints& c, const EstimatorState& est,
                    double y_meas, double v_prev,
                    const std::vector<double>& r_preview,
                    MpcPrediction* prediction) {
  w.validate();
  c.validate();
  if (static_cast<int>(r_preview.size()) != w.hp) {
    throw Error(ErrorCode::kLengthMismatch, "reference preview length != hp");
  }
  const int n = w.hp;
  MpcPrediction pr = build_prediction(th, ts, n, est, y_meas, v_prev);
  const Eigen::VectorXd rp =
      Eigen::Map<const Eigen::VectorXd>(r_preview.data(), n);
  const Eigen::VectorXd ey = pr.y0 - rp;

  MpcProblem qp;
  qp.hessian = 2.0 * (w.q * pr.sy.transpose() * pr.sy +
                      w.r * pr.sd.transpose() * pr.sd +
                      w.v * Eigen::MatrixXd::Identity(n, n));
  qp.hessian = 0.5 * (qp.hessian + qp.hessian.transpose()).eval();
  qp.gradient = 2.0 * (w.q * pr.sy.transpose() * ey +
                       w.r * pr.sd.transpose() * pr.d0);
  qp.constant = w.q * ey.squaredNorm() + w.r * pr.d0.squaredNorm();
  qp.a_ineq.resize(2 * n, n);
  qp.a_ineq << pr.su, -pr.su;
  qp.b_ineq.resize(2 * n);
  qp.b_ineq << (c.u_max - pr.u0.array()).matrix(),
      (pr.u0.array() - c.u_min).matrix();

  const double min_eig =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(qp.hessian,
                                                     Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  if (!(min_eig > 0.0)) {
    throw Error(ErrorCode::kNonConvex, "condensed hessian lost definiteness");
  }
  if (prediction) *prediction = std::move(pr);
  return qp;
}

std::vector<double> reference_preview(const TimeSeries& r, std::size_t k,
                                      int hp) {
  if (r.empty()) throw Error(ErrorCode::kInvalidArgument, "empty reference");
  std::vector<double> out(hp);
  for (int i = 0; i < hp; ++i) {
    out[i] = r[std::min(k + 1 + static_cast<std::size_t>(i), r.size() - 1)];
  }
  return out;
}

MpcController make_mpc_controller(const ThetaFull& th, double ts,
                                  const MpcWeights& w,
                                  const InputConstraints& c) {
  th.validate(ts);
  w.validate();
  c.validate();
  MpcController ctrl;
  ctrl.theta = th;
  ctrl.ts = ts;
  ctrl.weights = w;
  ctrl.limits = c;
  return ctrl;
}

MpcStepResult mpc_step(MpcController& ctrl, double y_meas,
                       const std::vector<double>& r_preview) {
  if (!ctrl.started) {
    ctrl.v_prev = y_meas;
    ctrl.started = true;
  }
  MpcPrediction pr;
  const MpcProblem qp =
      build_qp(ctrl.theta, ctrl.ts, ctrl.weights, ctrl.limits, ctrl.estimator,
               y_meas, ctrl.v_prev, r_preview, &pr);

  MpcStepResult out;
  Eigen::VectorXd dv;
  try {
    const QpResult sol = solve_qp(qp, ctrl.qp_tol, ctrl.qp_max_iter);
    dv = sol.x;
    out.status = sol.status;
    out.qp_iterations = sol.iterations;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInfeasibleConstraints) throw;
    Eigen::LLT<Eigen::MatrixXd> llt(qp.hessian);
    dv = -llt.solve(qp.gradient);
    out.status = QpStatus::kInfeasible;
  }
  out.cost = qp.objective(dv);
  const Eigen::VectorXd u_hat = pr.u0 + pr.su * dv;
  const Eigen::VectorXd y_hat = pr.y0 + pr.sy * dv;
  out.u_hat.assign(u_hat.data(), u_hat.data() + u_hat.size());
  out.y_hat.assign(y_hat.data(), y_hat.data() + y_hat.size());

  out.v = ctrl.v_prev + dv[0];
  ctrl.estimator =
      advance_state(ctrl.theta, ctrl.ts, ctrl.estimator, out.v, y_meas);
  ctrl.v_prev = out.v;
  out.u = ctrl.estimator.last_u_hat;
  return out;
}

}  // namespace plmpc
