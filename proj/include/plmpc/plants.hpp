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

#include <array>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "plmpc/signals.hpp"

namespace plmpc {

// Hammerstein: x = 1.5u - 1.5u^2 + 0.5u^3 into a second-order ARX block.

struct HammersteinState {
  double y1 = 0.0, y2 = 0.0;  ///< y(k-1), y(k-2)
  double x1 = 0.0, x2 = 0.0;  ///< x(k-1), x(k-2)
};

double hammerstein_nonlinearity(double u);
/// y(k); depends only on stored regressors.
double hammerstein_output(const HammersteinState& s);

struct HammersteinStepResult {
  HammersteinState state;
  double y;
};

/// Emits y(k) and stores x(k) = nonlinearity(u(k)).
HammersteinStepResult hammerstein_step(const HammersteinState& s, double u);

// Asymmetric Bouc-Wen hysteresis on a second-order ARX part.

struct BoucWenParams {
  double a1 = 9.95832e-1;
  double a2 = 1.23972e-3;
  double b1 = 1.19205e-2;
  double A1 = 9.94593e-1;
  double beta1 = 4.93442e-1;
  double gamma1 = -8.00753e-1;
  double c1 = -3.34000e-1;
  double d1 = 2.34191e-3;
  double e1 = -1.84394e-5;
  double A2 = -1.13653e-1;
  double beta2 = -4.10528e-1;
  double gamma2 = 6.79071e-1;
  double c2 = 3.51356e-1;
  double d2 = -2.28465e-3;
  double e2 = 1.80024e-5;

  /// Key = value text with keys named as above. Missing keys keep defaults.
  static BoucWenParams load(const std::string& path);
  static BoucWenParams parse(std::istream& in, const std::string& source);
  void validate() const;
  /// Same parameters with A, beta, gamma, c, d, e all zero.
  BoucWenParams linear_part() const;
};

struct BoucWenState {
  std::array<double, 4> y_hist{};  ///< y(k-1) .. y(k-4)
  double h1 = 0.0, h2 = 0.0;       ///< i = 1, 2 terms of the last h
  std::array<double, 2> h_hist{};  ///< h(k-1), h(k-2)
  double u_prev = 0.0;             ///< u(k-1)
};

struct BoucWenOutput {
  double y;
  double h1, h2;
};

/// y(k) from stored history. Throws kDivergence when |y| > 1e6.
BoucWenOutput boucwen_output(const BoucWenParams& p, const BoucWenState& s);

struct BoucWenStepResult {
  BoucWenState state;
  double y;
};

BoucWenStepResult boucwen_step(const BoucWenParams& p, const BoucWenState& s,
                               double u);

/// Common view for the closed-loop simulators: read y(k), then apply u(k).
/// The actuator range clamps every input the plant receives.
class Plant {
 public:
  virtual ~Plant() = default;
  virtual std::unique_ptr<Plant> clone() const = 0;
  virtual std::string name() const = 0;
  virtual void reset() = 0;
  virtual double output() const = 0;
  virtual void apply(double u) = 0;

  void set_actuator_range(double lo, double hi);
  double saturate(double u) const;
  std::pair<double, double> actuator_range() const { return {lo_, hi_}; }

 private:
  double lo_ = -std::numeric_limits<double>::infinity();
  double hi_ = std::numeric_limits<double>::infinity();
};

class HammersteinPlant final : public Plant {
 public:
  std::unique_ptr<Plant> clone() const override;
  std::string name() const override { return "hammerstein"; }
  void reset() override { s_ = {}; }
  double output() const override { return hammerstein_output(s_); }
  void apply(double u) override;
  const HammersteinState& state() const { return s_; }

 private:
  HammersteinState s_;
};

class BoucWenPlant final : public Plant {
 public:
  explicit BoucWenPlant(BoucWenParams p = {});
  std::unique_ptr<Plant> clone() const override;
  std::string name() const override { return "boucwen"; }
  void reset() override { s_ = {}; }
  double output() const override { return boucwen_output(p_, s_).y; }
  void apply(double u) override;
  const BoucWenParams& params() const { return p_; }
  const BoucWenState& state() const { return s_; }

 private:
  BoucWenParams p_;
  BoucWenState s_;
};

struct ReferenceSegment {
  double value;
  double duration;  ///< seconds
};

/// Piecewise constant; each segment lasts round(duration / ts) samples.
TimeSeries staircase_reference(const std::vector<ReferenceSegment>& spec,
                               double ts);
/// offset + amp sin(2 pi freq t) for round(duration / ts) samples.
TimeSeries sinusoid_reference(double amp, double offset, double freq_hz,
                              double duration, double ts);

}  // namespace plmpc
