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

#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "plmpc/estimator.hpp"
#include "plmpc/plants.hpp"

namespace plmpc {
namespace {

TEST(EstimateHorizon, ZeroStateZeroInput) {
  const HorizonEstimate h =
      estimate_horizon({0.3, 0.2, 0.1, 0.5}, 0.1, {}, 0.0, {0, 0, 0});
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(h.u_hat[i], 0.0);
    EXPECT_EQ(h.y_hat[i], 0.0);
    EXPECT_EQ(h.du_hat[i], 0.0);
  }
}

TEST(EstimateHorizon, ProportionalSingleStep) {
  const HorizonEstimate h =
      estimate_horizon({1.0, 0.0, 0.0, 0.5}, 0.1, {}, 0.0, {1.0});
  ASSERT_EQ(h.u_hat.size(), 1u);
  EXPECT_EQ(h.y_hat[0], 0.0);
  EXPECT_EQ(h.u_hat[0], 1.0);
  EXPECT_EQ(h.du_hat[0], 1.0);
}

TEST(EstimateHorizon, DifferencesUseLastEstimate) {
  EstimatorState s;
  s.pid_state = {0.4, 0.1};
  s.last_u_hat = 0.7;
  const HorizonEstimate h =
      estimate_horizon({0.3, 0.2, 0.1, 0.5}, 0.1, s, 0.2, {1.0, 1.5, 0.5});
  EXPECT_DOUBLE_EQ(h.du_hat[0], h.u_hat[0] - 0.7);
  EXPECT_DOUBLE_EQ(h.du_hat[2], h.u_hat[2] - h.u_hat[1]);
  EXPECT_EQ(h.y_hat[0], 0.2);
}

TEST(EstimateHorizon, Superposition) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> gain(0.0, 2.0);
  std::uniform_real_distribution<double> tc(0.02, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const ThetaFull th{gain(rng), gain(rng), gain(rng), tc(rng)};
    const double ts = 0.01 + 0.1 * gain(rng);
    const auto v = testing::random_vector(rng, 6);
    const auto w = testing::random_vector(rng, 6);
    const double a = gain(rng) - 1.0, b = gain(rng) - 1.0;
    std::vector<double> mix(6);
    for (int i = 0; i < 6; ++i) mix[i] = a * v[i] + b * w[i];
    const auto hv = estimate_horizon(th, ts, {}, 0.0, v);
    const auto hw = estimate_horizon(th, ts, {}, 0.0, w);
    const auto hm = estimate_horizon(th, ts, {}, 0.0, mix);
    for (int i = 0; i < 6; ++i) {
      const double u = a * hv.u_hat[i] + b * hw.u_hat[i];
      const double y = a * hv.y_hat[i] + b * hw.y_hat[i];
      EXPECT_NEAR(hm.u_hat[i], u, 1e-10 * std::max(1.0, std::abs(u)));
      EXPECT_NEAR(hm.y_hat[i], y, 1e-10 * std::max(1.0, std::abs(y)));
    }
  }
}

TEST(AdvanceState, ZeroErrorKeepsIntegral) {
  EstimatorState s;
  s.pid_state.integ = 1.25;
  const EstimatorState n = advance_state({0.5, 2.0, 0.1, 1.0}, 0.1, s, 3.0, 3.0);
  EXPECT_EQ(n.pid_state.integ, 1.25);
  EXPECT_EQ(n.pid_state.prev_err, 0.0);
}

TEST(AdvanceState, IntegralGrowsLinearly) {
  EstimatorState s;
  for (int k = 1; k <= 5; ++k) {
    s = advance_state({0.0, 2.0, 0.0, 1.0}, 0.5, s, 1.0, 0.0);
    EXPECT_DOUBLE_EQ(s.pid_state.integ, k * 1.0);
    EXPECT_DOUBLE_EQ(s.last_u_hat, k * 1.0);
  }
}

TEST(AdvanceState, TracksAppliedInputInClosedLoop) {
  const ThetaFull th{0.35, 0.16, 0.06, 0.5};
  const double ts = 1.0;
  EstimatorState est;
  PidState inner;
  HammersteinState plant;
  std::mt19937_64 rng(3);
  const auto v = testing::random_vector(rng, 100, 0.2, 1.5);
  for (double vk : v) {
    const double y = hammerstein_output(plant);
    // i = 0 estimate before committing
    const HorizonEstimate h = estimate_horizon(th, ts, est, y, {vk});
    const PidStepResult applied = pid_step(th.gains(ts), inner, vk - y);
    inner = applied.state;
    est = advance_state(th, ts, est, vk, y);
    EXPECT_EQ(est.last_u_hat, applied.u);
    EXPECT_EQ(h.u_hat[0], applied.u);
    plant = hammerstein_step(plant, applied.u).state;
  }
}

TEST(EstimateHorizon, ConsistentAfterOneStep) {
  const ThetaFull th{0.2, 0.5, 0.05, 0.3};
  const double ts = 0.1;
  EstimatorState s;
  s.pid_state = {0.3, -0.2};
  const std::vector<double> v = {1.0, 0.8, 1.2, 0.9, 1.1};
  const HorizonEstimate full = estimate_horizon(th, ts, s, 0.4, v);
  const PlModel m = th.pl(ts);
  // advance with the model's own output, then re-estimate the tail
  const EstimatorState s1 = advance_state(th, ts, s, v[0], full.y_hat[0]);
  const double x1 = m.a_p * 0.4 + m.b_p * v[0];
  const HorizonEstimate tail = estimate_horizon(
      th, ts, s1, x1, std::vector<double>(v.begin() + 1, v.end()));
  for (std::size_t i = 1; i < v.size(); ++i) {
    EXPECT_NEAR(tail.u_hat[i - 1], full.u_hat[i], 1e-12);
    EXPECT_NEAR(tail.y_hat[i - 1], full.y_hat[i], 1e-12);
    EXPECT_NEAR(tail.du_hat[i - 1], full.du_hat[i], 1e-12);
  }
}

TEST(EstimateHorizon, EmptyHorizon) {
  EXPECT_THROW(estimate_horizon({0.1, 0.1, 0.0, 1.0}, 1.0, {}, 0.0, {}), Error);
}

}  // namespace
}  // namespace plmpc
