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

#include "plmpc/pl_model.hpp"

#include <cmath>

namespace plmpc {

PlModel pl_from_tc(double tc, double ts) {
  if (!(tc > 0.0) || !std::isfinite(tc)) {
    throw Error(ErrorCode::kNonPositiveTimeConstant,
                "PL time constant must be positive and finite");
  }
  if (!(ts > 0.0)) {
    throw Error(ErrorCode::kNonPositiveTimeConstant,
                "sampling time must be positive");
  }
  PlModel m;
  m.tc = tc;
  m.ts = ts;
  m.a_p = std::exp(-ts / tc);
  // 1 - exp(-r) without cancellation for large tc.
  m.b_p = -std::expm1(-ts / tc);
  m.c_p = 1.0;
  return m;
}

}  // namespace plmpc
