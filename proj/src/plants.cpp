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

#include "plmpc/plants.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "plmpc/config.hpp"

namespace plmpc {

double hammerstein_nonlinearity(double u) {
  return 1.5 * u - 1.5 * u * u + 0.5 * u * u * u;
}

double hammerstein_output(const HammersteinState& s) {
  return 0.6 * s.y1 - 0.1 * s.y2 + 1.2 * s.x1 - 0.1 * s.x2;
}

HammersteinStepResult hammerstein_step(const HammersteinState& s, double u) {
  const double y = hammerstein_output(s);
  return {{y, s.y1, hammerstein_nonlinearity(u), s.x1}, y};
}

namespace {

struct NamedField {
  const char* key;
  double BoucWenParams::*field;
};

constexpr NamedField kBoucWenFields[] = {
    {"a1", &BoucWenParams::a1},         {"a2", &BoucWenParams::a2},
    {"b1", &BoucWenParams::b1},         {"A1", &BoucWenParams::A1},
    {"beta1", &BoucWenParams::beta1},   {"gamma1", &BoucWenParams::gamma1},
    {"c1", &BoucWenParams::c1},         {"d1", &BoucWenParams::d1},
    {"e1", &BoucWenParams::e1},         {"A2", &BoucWenParams::A2},
    {"beta2", &BoucWenParams::beta2},   {"gamma2", &BoucWenParams::gamma2},
    {"c2", &BoucWenParams::c2},         {"d2", &BoucWenParams::d2},
    {"e2", &BoucWenParams::e2},
};

constexpr double kDivergenceLimit = 1e6;

}  // namespace

BoucWenParams BoucWenParams::parse(std::istream& in,
                                   const std::string& source) {
  const Config cfg = Config::parse(in, source);
  std::vector<std::string> known;
  BoucWenParams p;
  for (const auto& f : kBoucWenFields) {
    known.emplace_back(f.key);
    p.*f.field = cfg.get_double(f.key, p.*f.field);
  }
  cfg.require_known(known);
  p.validate();
  return p;
}

BoucWenParams BoucWenParams::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open " + path);
  return parse(in, path);
}

void BoucWenParams::validate() const {
  for (const auto& f : kBoucWenFields) {
    if (!std::isfinite(this->*f.field)) {
      throw Error(ErrorCode::kConfig,
                  std::string("Bouc-Wen parameter not finite: ") + f.key);
    }
  }
}

BoucWenParams BoucWenParams::linear_part() const {
  BoucWenParams p = *this;
  p.A1 = p.beta1 = p.gamma1 = p.c1 = p.d1 = p.e1 = 0.0;
  p.A2 = p.beta2 = p.gamma2 = p.c2 = p.d2 = p.e2 = 0.0;
  return p;
}

BoucWenOutput boucwen_output(const BoucWenParams& p, const BoucWenState& s) {
  const auto& y = s.y_hist;
  const double h_prev = s.h_hist[0];
  auto term = [&](int i, double A, double beta, double gamma, double c,
                  double d, double e) {
    const double dy = y[i - 1] - y[i];
    const double yi = y[i - 1];
    const double hi = s.h_hist[i - 1];
    return A * dy + beta * std::abs(dy) * hi + gamma * dy * std::abs(h_prev) +
           c * hi + d * yi * yi + e * yi * yi * yi;
  };
  BoucWenOutput out;
  out.h1 = term(1, p.A1, p.beta1, p.gamma1, p.c1, p.d1, p.e1);
  out.h2 = term(2, p.A2, p.beta2, p.gamma2, p.c2, p.d2, p.e2);
  out.y = p.a1 * y[0] + p.a2 * y[1] + p.b1 * s.u_prev + out.h1 + out.h2;
  if (!(std::abs(out.y) <= kDivergenceLimit)) {
    throw Error(ErrorCode::kDivergence, "Bouc-Wen output left |y| <= 1e6");
  }
  return out;
}

BoucWenStepResult boucwen_step(const BoucWenParams& p, const BoucWenState& s,
                               double u) {
  const BoucWenOutput o = boucwen_output(p, s);
  BoucWenState n;
  n.y_hist = {o.y, s.y_hist[0], s.y_hist[1], s.y_hist[2]};
  n.h1 = o.h1;
  n.h2 = o.h2;
  n.h_hist = {o.h1 + o.h2, s.h_hist[0]};
  n.u_prev = u;
  return {n, o.y};
}

void Plant::set_actuator_range(double lo, double hi) {
  if (!(lo < hi)) {
    throw Error(ErrorCode::kInvalidArgument, "actuator range must be lo < hi");
  }
  lo_ = lo;
  hi_ = hi;
}

double Plant::saturate(double u) const { return std::min(hi_, std::max(lo_, u)); }

std::unique_ptr<Plant> HammersteinPlant::clone() const {
  return std::make_unique<HammersteinPlant>(*this);
}

void HammersteinPlant::apply(double u) {
  s_ = hammerstein_step(s_, saturate(u)).state;
}

BoucWenPlant::BoucWenPlant(BoucWenParams p) : p_(p) { p_.validate(); }

std::unique_ptr<Plant> BoucWenPlant::clone() const {
  return std::make_unique<BoucWenPlant>(*this);
}

void BoucWenPlant::apply(double u) {
  s_ = boucwen_step(p_, s_, saturate(u)).state;
}

namespace {

std::size_t sample_count(double duration, double ts) {
  if (!(duration > 0.0) || !(ts > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "duration and ts must be > 0");
  }
  const double n = std::round(duration / ts);
  if (n < 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "segment shorter than one sample");
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

TimeSeries staircase_reference(const std::vector<ReferenceSegment>& spec,
                               double ts) {
  if (spec.empty()) throw Error(ErrorCode::kInvalidArgument, "empty staircase");
  std::vector<double> r;
  for (const auto& seg : spec) {
    r.insert(r.end(), sample_count(seg.duration, ts), seg.value);
  }
  return TimeSeries(std::move(r), ts);
}

TimeSeries sinusoid_reference(double amp, double offset, double freq_hz,
                              double duration, double ts) {
  constexpr double kTwoPi = 6.283185307179586476925;
  const std::size_t n = sample_count(duration, ts);
  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k) {
    r[k] = offset + amp * std::sin(kTwoPi * freq_hz * static_cast<double>(k) * ts);
  }
  return TimeSeries(std::move(r), ts);
}

}  // namespace plmpc
