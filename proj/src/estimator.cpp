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

#include "plmpc/estimator.hpp"

#include <cmath>

namespace plmpc {

HorizonEstimate estimate_horizon(const ThetaFull& th, double ts,
                                 const EstimatorState& s, double x0,
                                 const std::vector<double>& v_seq) {
  if (v_seq.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty horizon");
  }
  const PidGains g = th.gains(ts);
  const PlModel m = th.pl(ts);
  HorizonEstimate out;
  out.u_hat.reserve(v_seq.size());
  out.du_hat.reserve(v_seq.size());
  out.y_hat.reserve(v_seq.size());
  double x = x0;
  PidState ps = s.pid_state;
  double prev_u = s.last_u_hat;
  for (double v : v_seq) {
    const PlStepResult pl = pl_step(m, x, v);
    const PidStepResult pid = pid_step(g, ps, v - pl.y);
    ps = pid.state;
    out.y_hat.push_back(pl.y);
    out.u_hat.push_back(pid.u);
    out.du_hat.push_back(pid.u - prev_u);
    prev_u = pid.u;
    x = pl.x_next;
  }
  if (!std::isfinite(out.u_hat.back()) || !std::isfinite(x)) {
    throw Error(ErrorCode::kNonFinite, "horizon estimate overflowed");
  }
  return out;
}

EstimatorState advance_state(const ThetaFull& th, double ts,
                             const EstimatorState& s, double v_applied,
                             double y_measured) {
  const PidStepResult pid =
      pid_step(th.gains(ts), s.pid_state, v_applied - y_measured);
  return {pid.state, pid.u};
}

}  // namespace plmpc
