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

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "plmpc/plants.hpp"

namespace plmpc {
namespace {

constexpr double kPi = 3.14159265358979323846;

TEST(Hammerstein, HandIteration) {
  EXPECT_EQ(hammerstein_step({}, 0.0).y, 0.0);
  const HammersteinStepResult a = hammerstein_step({}, 1.0);
  EXPECT_EQ(a.y, 0.0);
  EXPECT_DOUBLE_EQ(a.state.x1, 0.5);
  EXPECT_DOUBLE_EQ(hammerstein_step(a.state, 0.0).y, 0.6);
}

TEST(Hammerstein, SteadyStateGain) {
  for (double u : {0.3, 1.0, 1.7}) {
    HammersteinState s;
    double y = 0.0;
    for (int k = 0; k < 500; ++k) {
      const HammersteinStepResult r = hammerstein_step(s, u);
      s = r.state;
      y = r.y;
    }
    EXPECT_NEAR(y, 2.2 * hammerstein_nonlinearity(u), 1e-12);
  }
}

TEST(Hammerstein, MatchesBatchRecursion) {
  std::mt19937_64 rng(31);
  const auto u = testing::random_vector(rng, 300, 0.0, 2.0);
  std::vector<double> x(u.size()), y(u.size(), 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    x[k] = 1.5 * u[k] - 1.5 * u[k] * u[k] + 0.5 * u[k] * u[k] * u[k];
  }
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k >= 1) y[k] += 0.6 * y[k - 1] + 1.2 * x[k - 1];
    if (k >= 2) y[k] += -0.1 * y[k - 2] - 0.1 * x[k - 2];
  }
  HammersteinState s;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const HammersteinStepResult r = hammerstein_step(s, u[k]);
    EXPECT_NEAR(r.y, y[k], 1e-12);
    s = r.state;
  }
}

TEST(BoucWen, ZeroStaysZero) {
  const BoucWenParams p;
  BoucWenState s;
  for (int k = 0; k < 100; ++k) {
    const BoucWenStepResult r = boucwen_step(p, s, 0.0);
    EXPECT_EQ(r.y, 0.0);
    s = r.state;
  }
}

TEST(BoucWen, DefaultsAreTableValues) {
  const BoucWenParams p;
  EXPECT_EQ(p.a1, 9.95832e-1);
  EXPECT_EQ(p.b1, 1.19205e-2);
  EXPECT_EQ(p.gamma1, -8.00753e-1);
  EXPECT_EQ(p.c1, -3.34e-1);
  EXPECT_EQ(p.e2, 1.80024e-5);
}

TEST(BoucWen, LinearPartDcGain) {
  const BoucWenParams p = BoucWenParams().linear_part();
  const double gain = p.b1 / (1.0 - p.a1 - p.a2);
  EXPECT_NEAR(gain, 4.07, 0.01);
  BoucWenState s;
  double y = 0.0;
  for (int k = 0; k < 200000; ++k) {
    const BoucWenStepResult r = boucwen_step(p, s, 1.0);
    s = r.state;
    y = r.y;
  }
  EXPECT_NEAR(y, gain, 1e-3 * gain);
}

TEST(BoucWen, ZeroHysteresisIsArx) {
  std::mt19937_64 rng(32);
  const BoucWenParams p = BoucWenParams().linear_part();
  const auto u = testing::random_vector(rng, 500, 0.0, 10.0);
  std::vector<double> y(u.size(), 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k >= 1) y[k] += p.a1 * y[k - 1] + p.b1 * u[k - 1];
    if (k >= 2) y[k] += p.a2 * y[k - 2];
  }
  BoucWenState s;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const BoucWenStepResult r = boucwen_step(p, s, u[k]);
    EXPECT_NEAR(r.y, y[k], 1e-12);
    s = r.state;
  }
}

TEST(BoucWen, SinusoidEnclosesHysteresisLoop) {
  // open loop, last full period of a 0.2 Hz drive around the valve midpoint
  const BoucWenParams p;
  const int per = 500;
  BoucWenState s;
  std::vector<double> u, y;
  for (int k = 0; k < 20 * per; ++k) {
    const double uk = 2.0 + 1.5 * std::sin(2.0 * kPi * k / per);
    const BoucWenStepResult r = boucwen_step(p, s, uk);
    s = r.state;
    u.push_back(uk);
    y.push_back(r.y);
  }
  // shoelace area of the (u, y) trace over the last period
  double area = 0.0;
  const int start = 19 * per;
  for (int k = start; k < start + per; ++k) {
    const int j = k + 1 < start + per ? k + 1 : start;
    area += u[k] * y[j] - u[j] * y[k];
  }
  EXPECT_GT(std::abs(0.5 * area), 1e-3);
}

TEST(BoucWen, DivergenceIsReported) {
  BoucWenParams p;
  p.a1 = 1.5;
  BoucWenState s;
  try {
    for (int k = 0; k < 10000; ++k) s = boucwen_step(p, s, 1.0).state;
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivergence);
  }
}

TEST(BoucWen, ParamsFileParsing) {
  std::stringstream ss("# comment\na1 = 0.5\nbeta2 = -1e-3\n");
  const BoucWenParams p = BoucWenParams::parse(ss, "test");
  EXPECT_EQ(p.a1, 0.5);
  EXPECT_EQ(p.beta2, -1e-3);
  EXPECT_EQ(p.a2, BoucWenParams().a2);
  std::stringstream bad("zeta = 1\n");
  EXPECT_THROW(BoucWenParams::parse(bad, "test"), Error);
}

TEST(BoucWen, ShippedParamsFileMatchesDefaults) {
  const BoucWenParams p =
      BoucWenParams::load(std::string(PLMPC_SOURCE_DIR) +
                          "/configs/boucwen_params.txt");
  const BoucWenParams d;
  EXPECT_EQ(p.a1, d.a1);
  EXPECT_EQ(p.a2, d.a2);
  EXPECT_EQ(p.b1, d.b1);
  EXPECT_EQ(p.A1, d.A1);
  EXPECT_EQ(p.beta1, d.beta1);
  EXPECT_EQ(p.gamma1, d.gamma1);
  EXPECT_EQ(p.c1, d.c1);
  EXPECT_EQ(p.d1, d.d1);
  EXPECT_EQ(p.e1, d.e1);
  EXPECT_EQ(p.A2, d.A2);
  EXPECT_EQ(p.beta2, d.beta2);
  EXPECT_EQ(p.gamma2, d.gamma2);
  EXPECT_EQ(p.c2, d.c2);
  EXPECT_EQ(p.d2, d.d2);
  EXPECT_EQ(p.e2, d.e2);
}

TEST(Plant, ActuatorRangeClampsInput) {
  HammersteinPlant h;
  h.set_actuator_range(0.0, 1.0);
  h.apply(5.0);
  EXPECT_DOUBLE_EQ(h.output(), 1.2 * hammerstein_nonlinearity(1.0));
  const auto copy = h.clone();
  copy->reset();
  EXPECT_EQ(copy->output(), 0.0);
  EXPECT_NE(h.output(), 0.0);
  EXPECT_THROW(h.set_actuator_range(1.0, 1.0), Error);
}

TEST(References, Staircase) {
  const TimeSeries r =
      staircase_reference({{0.5, 50}, {1.0, 50}, {2.0, 50}, {1.5, 50}}, 1.0);
  ASSERT_EQ(r.size(), 200u);
  EXPECT_EQ(r[0], 0.5);
  EXPECT_EQ(r[49], 0.5);
  EXPECT_EQ(r[50], 1.0);
  EXPECT_EQ(r[99], 1.0);
  EXPECT_EQ(r[100], 2.0);
  EXPECT_EQ(r[150], 1.5);
  EXPECT_EQ(r[199], 1.5);
  const TimeSeries q = staircase_reference({{0, 10}, {15, 20}}, 0.01);
  EXPECT_EQ(q.size(), 3000u);
  EXPECT_EQ(q[999], 0.0);
  EXPECT_EQ(q[1000], 15.0);
  EXPECT_THROW(staircase_reference({{1.0, 0.0}}, 1.0), Error);
}

TEST(References, Sinusoid) {
  const TimeSeries r = sinusoid_reference(25.0, 30.0, 0.2, 5.0, 0.01);
  ASSERT_EQ(r.size(), 500u);
  EXPECT_EQ(r[0], 30.0);
  double lo = 1e9, hi = -1e9;
  for (double v : r.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_NEAR(hi, 55.0, 1e-12);
  EXPECT_NEAR(lo, 5.0, 1e-12);
  const TimeSeries again = sinusoid_reference(25.0, 30.0, 0.2, 5.0, 0.01);
  EXPECT_EQ(again.vector(), r.vector());
}

}  // namespace
}  // namespace plmpc
