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

#include <functional>
#include <vector>

namespace plmpc {

struct NelderMeadOptions {
  int max_iterations = 5000;
  /// Stop when every vertex lies within this infinity-norm distance of the
  /// best vertex.
  double simplex_tolerance = 1e-10;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  /// Best value after each iteration; nonincreasing.
  std::vector<double> trace;
};

/// Minimizes f starting from the axis-aligned simplex x0 + step_i e_i.
/// f may return +inf to reject a point.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const std::vector<double>& step,
    const NelderMeadOptions& opt = {});

}  // namespace plmpc
