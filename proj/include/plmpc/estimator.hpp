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

#include <vector>

#include "plmpc/frit.hpp"
#include "plmpc/pid.hpp"

namespace plmpc {

/// Owned by one loop. In simulation the inner PID reads and writes the same
/// pid_state, so the estimate at i = 0 is the input actually applied.
struct EstimatorState {
  PidState pid_state;
  double last_u_hat = 0.0;
};

struct HorizonEstimate {
  std::vector<double> u_hat;
  std::vector<double> du_hat;
  std::vector<double> y_hat;  ///< PL output at k+i, read before the update
};

/// Rolls the PL model from x0 (the measured output) and the inner PID from
/// s.pid_state over v_seq. Affine in v_seq for a fixed state.
HorizonEstimate estimate_horizon(const ThetaFull& th, double ts,
                                 const EstimatorState& s, double x0,
                                 const std::vector<double>& v_seq);

/// Runs the inner PID on the real error v_applied - y_measured.
EstimatorState advance_state(const ThetaFull& th, double ts,
                             const EstimatorState& s, double v_applied,
                             double y_measured);

}  // namespace plmpc
