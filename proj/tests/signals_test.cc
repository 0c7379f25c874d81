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
#include <complex>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "plmpc/pl_model.hpp"
#include "plmpc/signals.hpp"

namespace plmpc {
namespace {

constexpr double kPi = 3.14159265358979323846;

TEST(TimeSeries, RejectsBadSamplingAndSamples) {
  EXPECT_THROW(TimeSeries({1.0}, 0.0), Error);
  EXPECT_THROW(TimeSeries({1.0}, -1.0), Error);
  try {
    TimeSeries({1.0, NAN}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(TimeSeries, ArithmeticNeedsMatchingShape) {
  TimeSeries a({1, 2, 3}, 0.1);
  TimeSeries b({1, 2}, 0.1);
  TimeSeries c({1, 2, 3}, 0.2);
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  EXPECT_THROW((void)(a - c), Error);
  const TimeSeries s = a + a;
  EXPECT_EQ(s[2], 6.0);
  EXPECT_DOUBLE_EQ(a.time(2), 0.2);
}

TEST(Filter, Identity) {
  std::mt19937_64 rng(3);
  TimeSeries x(testing::random_vector(rng, 50), 0.01);
  const TimeSeries y = filter(RationalFilter::identity(), x);
  EXPECT_EQ(y.vector(), x.vector());
  EXPECT_EQ(y.ts(), x.ts());
}

TEST(Filter, PureDelay) {
  const TimeSeries y =
      filter(RationalFilter::delay(1), TimeSeries({1, 2, 3}, 1.0));
  EXPECT_EQ(y.vector(), (std::vector<double>{0, 1, 2}));
}

TEST(Filter, FirstOrderStepClosedForm) {
  const double tc = 0.81;
  const RationalFilter f = pl_from_tc(tc, 1.0).as_filter();
  const TimeSeries y = filter(f, TimeSeries(std::vector<double>(20, 1.0), 1.0));
  EXPECT_EQ(y[0], 0.0);
  EXPECT_NEAR(y[1], 0.7090, 1e-4);
  for (int k = 0; k < 20; ++k) {
    EXPECT_NEAR(y[k], 1.0 - std::exp(-k / tc), 1e-12);
  }
}

TEST(Filter, ZeroLeadingDenominator) {
  try {
    filter({{1.0}, {0.0, 1.0}}, TimeSeries({1.0}, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroLeadingDenominator);
  }
}

TEST(Filter, UnstableOverflowIsNonFinite) {
  const RationalFilter f{{1.0}, {1.0, -1e10}};
  try {
    filter(f, TimeSeries(std::vector<double>(200, 1.0), 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(Filter, EmptyInput) {
  EXPECT_THROW(filter(RationalFilter::identity(), TimeSeries({}, 1.0)), Error);
}

TEST(Filter, MatchesNaiveOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto num = testing::random_vector(rng, 3);
    std::vector<double> den = {2.0, 0.3 * testing::random_vector(rng, 1)[0],
                               0.2 * testing::random_vector(rng, 1)[0]};
    const auto x = testing::random_vector(rng, 200);
    const TimeSeries y = filter({num, den}, TimeSeries(x, 0.5));
    EXPECT_LT(testing::max_abs_diff(y.vector(),
                                    testing::naive_filter(num, den, x)),
              1e-12);
  }
}

TEST(Filter, Linearity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalFilter f{testing::random_vector(rng, 3),
                           {1.0, -0.5, 0.06}};
    const TimeSeries x(testing::random_vector(rng, 100), 1.0);
    const TimeSeries w(testing::random_vector(rng, 100), 1.0);
    const double a = 1.7, b = -0.4;
    const TimeSeries lhs = filter(f, a * x + b * w);
    const TimeSeries rhs = a * filter(f, x) + b * filter(f, w);
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      EXPECT_NEAR(lhs[k], rhs[k], 1e-10 * std::max(1.0, std::abs(rhs[k])));
    }
  }
}

TEST(Filter, Composition) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalFilter f{testing::random_vector(rng, 2), {1.0, -0.3}};
    const RationalFilter g{testing::random_vector(rng, 3), {1.0, 0.2, 0.05}};
    const TimeSeries x(testing::random_vector(rng, 150), 1.0);
    const TimeSeries a = filter(f, filter(g, x));
    const TimeSeries b = filter(f * g, x);
    EXPECT_LT(testing::max_abs_diff(a.vector(), b.vector()), 1e-9);
  }
}

TEST(FreqResponse, IdentityAndDelay) {
  const auto one = freq_response(RationalFilter::identity(), 3.0, 0.1);
  EXPECT_DOUBLE_EQ(one.real(), 1.0);
  EXPECT_DOUBLE_EQ(one.imag(), 0.0);
  const double ts = 0.01;
  const auto nyq = freq_response(RationalFilter::delay(1), kPi / ts, ts);
  EXPECT_NEAR(nyq.real(), -1.0, 1e-12);
  EXPECT_NEAR(nyq.imag(), 0.0, 1e-12);
}

TEST(FreqResponse, DelayHasUnitMagnitude) {
  const double ts = 0.01;
  for (std::size_t n : {1, 2, 5}) {
    for (double w = 0.0; w <= kPi / ts; w += 7.3) {
      EXPECT_NEAR(std::abs(freq_response(RationalFilter::delay(n), w, ts)),
                  1.0, 1e-12);
    }
  }
}

TEST(FreqResponse, FirstOrderLagNearAnalyticAtLowFrequency) {
  const double tc = 7.10e-2, ts = 0.01;
  const double w = 2.0 * kPi * 0.2;
  const auto g = freq_response(pl_from_tc(tc, ts).as_filter(), w, ts);
  const std::complex<double> analytic =
      1.0 / std::complex<double>(1.0, w * tc);
  EXPECT_NEAR(std::abs(g) / std::abs(analytic), 1.0, 0.02);
  EXPECT_NEAR(std::arg(g), std::arg(analytic), 0.02);
}

TEST(FreqResponse, PoleOnUnitCircle) {
  const RationalFilter integrator{{1.0}, {1.0, -1.0}};
  try {
    freq_response(integrator, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDenominatorZero);
  }
  EXPECT_THROW(freq_response(integrator, 4.0, 1.0), Error);
}

TEST(Metrics, Examples) {
  TimeSeries a({1, 2, 3}, 1.0);
  EXPECT_EQ(rmse(a, a), 0.0);
  TimeSeries b({0.5, 1.5, 2.5}, 1.0);
  EXPECT_DOUBLE_EQ(rmse(a, b), 0.5);
  EXPECT_NEAR(sd(a - b), 0.0, 1e-15);
  EXPECT_NEAR(rmse(TimeSeries({3, -4}, 1.0), TimeSeries({0, 0}, 1.0)),
              std::sqrt(12.5), 1e-12);
  // population divisor
  EXPECT_DOUBLE_EQ(sd(TimeSeries({1, 3}, 1.0)), 1.0);
  EXPECT_THROW(rmse(a, TimeSeries({1, 2}, 1.0)), Error);
}

TEST(Csv, RoundTripAndFormat) {
  TimeSeries x({0.123456789012, -2.0, 1e-20}, 0.01);
  std::stringstream ss;
  write_csv(ss, x);
  EXPECT_EQ(ss.str(), "t,value\n0.000000,0.123456789\n0.010000,-2\n"
                      "0.020000,1e-20\n");
  const TimeSeries back = read_csv(ss);
  EXPECT_DOUBLE_EQ(back.ts(), 0.01);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[0], quantize_value(x[0]));
}

}  // namespace
}  // namespace plmpc
