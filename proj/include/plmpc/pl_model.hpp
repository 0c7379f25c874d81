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

// First-order pseudo-linearization model
//   P_L(z) = (1 - a) z^-1 / (1 - a z^-1),  a = exp(-ts / tc)
// and its scalar state-space form x' = a x + b v, y = c x.
struct PlModel {
  double tc = 1.0;
  double ts = 1.0;
  double a_p = 0.0;
  double b_p = 1.0;
  double c_p = 1.0;

  RationalFilter as_filter() const { return {{0.0, b_p}, {1.0, -a_p}}; }
};

/// Throws kNonPositiveTimeConstant unless tc > 0 and ts > 0.
PlModel pl_from_tc(double tc, double ts);

struct PlStepResult {
  double x_next;
  double y;  ///< c_p * x, read before the update
};

inline PlStepResult pl_step(const PlModel& m, double x, double v) {
  return {m.a_p * x + m.b_p * v, m.c_p * x};
}

}  // namespace plmpc
