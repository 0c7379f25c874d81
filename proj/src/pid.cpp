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

#include "plmpc/pid.hpp"

#include <cmath>

namespace plmpc {

void PidGains::validate() const {
  if (!(ts > 0.0) || !std::isfinite(ts)) {
    throw Error(ErrorCode::kInvalidArgument, "PID sampling time must be > 0");
  }
  if (!std::isfinite(kp) || !std::isfinite(ki) || !std::isfinite(kd)) {
    throw Error(ErrorCode::kNonFinite, "PID gains must be finite");
  }
}

RationalFilter pid_as_filter(const PidGains& g) {
  g.validate();
  return {{g.lead_coefficient(), -(g.kp * g.ts + 2.0 * g.kd), g.kd},
          {g.ts, -g.ts}};
}

RationalFilter pid_inverse_filter(const PidGains& g) {
  RationalFilter c = pid_as_filter(g);
  if (c.num[0] == 0.0) {
    throw Error(ErrorCode::kNonInvertibleController,
                "PID lead coefficient kp*ts + ki*ts^2 + kd is zero");
  }
  return {std::move(c.den), std::move(c.num)};
}

PidStepResult pid_step(const PidGains& g, const PidState& s, double err) {
  PidState next;
  next.integ = s.integ + g.ki * err * g.ts;
  next.prev_err = err;
  const double u = g.kp * err + next.integ + g.kd * (err - s.prev_err) / g.ts;
  return {u, next};
}

}  // namespace plmpc
