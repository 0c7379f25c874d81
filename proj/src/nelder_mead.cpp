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

#include "plmpc/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "plmpc/error.hpp"

namespace plmpc {

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const std::vector<double>& step,
    const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "simplex dimension mismatch");
  }
  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isnan(v) ? HUGE_VAL : v;
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto blend = [&](const std::vector<double>& from, double t,
                   std::vector<double>& out) {
    // centroid + t * (centroid - from)
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = centroid[i] + t * (centroid[i] - from[i]);
    }
  };

  for (res.iterations = 0; res.iterations < opt.max_iterations;
       ++res.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return vals[a] < vals[b];
                     });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double size = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        size = std::max(size, std::abs(pts[j][i] - pts[best][i]));
      }
    }
    if (size < opt.simplex_tolerance) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[j][i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    blend(pts[worst], opt.reflection, trial);
    const double f_r = eval(trial);
    if (f_r < vals[best]) {
      blend(pts[worst], opt.reflection * opt.expansion, trial2);
      const double f_e = eval(trial2);
      if (f_e < f_r) {
        pts[worst] = trial2;
        vals[worst] = f_e;
      } else {
        pts[worst] = trial;
        vals[worst] = f_r;
      }
    } else if (f_r < vals[second]) {
      pts[worst] = trial;
      vals[worst] = f_r;
    } else {
      const bool outside = f_r < vals[worst];
      if (outside) {
        blend(pts[worst], opt.reflection * opt.contraction, trial2);
      } else {
        blend(pts[worst], -opt.contraction, trial2);
      }
      const double f_c = eval(trial2);
      if (f_c < (outside ? f_r : vals[worst])) {
        pts[worst] = trial2;
        vals[worst] = f_c;
      } else {
        for (std::size_t j = 0; j <= n; ++j) {
          if (j == best) continue;
          for (std::size_t i = 0; i < n; ++i) {
            pts[j][i] = pts[best][i] + opt.shrink * (pts[j][i] - pts[best][i]);
          }
          vals[j] = eval(pts[j]);
        }
      }
    }
    res.trace.push_back(*std::min_element(vals.begin(), vals.end()));
  }

  const auto it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  res.value = *it;
  return res;
}

}  // namespace plmpc
