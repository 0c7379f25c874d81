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

#include "plmpc/signals.hpp"

namespace plmpc {

/// Discrete PID gains for
///   C(z) = kp + ki ts / (1 - z^-1) + kd (1 - z^-1) / ts.
/// The derivative acts on the error and is unfiltered.
struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double ts = 1.0;

  void validate() const;
  /// kp ts + ki ts^2 + kd: the z^0 numerator coefficient of C over ts(1-z^-1).
  double lead_coefficient() const { return kp * ts + ki * ts * ts + kd; }
};

struct PidState {
  double integ = 0.0;
  double prev_err = 0.0;
};

struct PidStepResult {
  double u;
  PidState state;
};

RationalFilter pid_as_filter(const PidGains& g);

/// C^-1. Throws kNonInvertibleController when the lead coefficient is zero.
RationalFilter pid_inverse_filter(const PidGains& g);

/// One sample of the online recursion; equals filter(pid_as_filter(g), e)
/// sample by sample when started from a zero state.
PidStepResult pid_step(const PidGains& g, const PidState& s, double err);

}  // namespace plmpc
