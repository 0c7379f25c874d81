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

// Problem builders shared by the unit tests and the acceptance binary.

#pragma once

#include <array>
#include <random>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "plmpc/frit.hpp"
#include "plmpc/qp.hpp"

namespace plmpc::testing {

// lo <= m x <= hi as the stacked [m; -m] x <= [hi; -lo]
inline MpcProblem two_sided(const Eigen::MatrixXd& h, const Eigen::VectorXd& f,
                            const Eigen::MatrixXd& m, const Eigen::VectorXd& lo,
                            const Eigen::VectorXd& hi) {
  MpcProblem p;
  p.hessian = h;
  p.gradient = f;
  p.a_ineq.resize(2 * m.rows(), m.cols());
  p.a_ineq << m, -m;
  p.b_ineq.resize(2 * m.rows());
  p.b_ineq << hi, -lo;
  return p;
}

inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  return a * a.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
}

// closed-loop record of g under the gains g0 driven by a random reference
inline IoRecord linear_record(std::mt19937_64& rng, const LinearPlant& g,
                              const std::array<double, 3>& g0, int n = 200) {
  const auto r = random_vector(rng, n, 0.0, 2.0);
  const auto run = simulate_linear_loop(g, g0[0], g0[1], g0[2], 1.0, r);
  return {TimeSeries(run.u, 1.0), TimeSeries(run.y, 1.0),
          {g0[0], g0[1], g0[2], 1.0}};
}

}  // namespace plmpc::testing
