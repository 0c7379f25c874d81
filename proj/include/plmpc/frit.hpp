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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "plmpc/nelder_mead.hpp"
#include "plmpc/pid.hpp"
#include "plmpc/pl_model.hpp"
#include "plmpc/signals.hpp"

namespace plmpc {

/// One closed-loop experiment logged with the gains theta0. The loop is
/// assumed to have been stabilizing; nothing here can check that.
struct IoRecord {
  TimeSeries u0;
  TimeSeries y0;
  PidGains theta0;

  double ts() const { return u0.ts(); }
  void validate() const;
};

/// PID gains plus the PL time constant, tuned jointly.
struct ThetaFull {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double tc = 1.0;

  PidGains gains(double ts) const { return {kp, ki, kd, ts}; }
  PlModel pl(double ts) const { return pl_from_tc(tc, ts); }
  /// Throws on tc <= 0 or a non-invertible controller.
  void validate(double ts) const;
};

struct EfritConfig {
  double lambda = 0.0;
  int starts = 8;
  std::uint64_t seed = 1;
  NelderMeadOptions optimizer;
  bool parallel = true;
};

struct FictitiousSignals {
  TimeSeries rtilde;
  TimeSeries ytilde;
  TimeSeries utilde;
  TimeSeries dutilde;
};

/// r~ = C^-1(g) u0 + y0.
TimeSeries fictitious_reference(const IoRecord& rec, const PidGains& g);

/// y~ = P_L r~, u~ = C (r~ - y~), du~(k) = u~(k) - u~(k-1) with u~(-1) = 0.
FictitiousSignals fictitious_outputs(const IoRecord& rec, const ThetaFull& th);

struct EfritCost {
  double matching = 0.0;   ///< sum (y0 - y~)^2
  double variation = 0.0;  ///< sum du~^2
  double total = 0.0;      ///< matching + lambda * variation
};

/// Unnormalized sums. Every component is +inf when the fictitious signals
/// cannot be formed (unstable inverse, overflow, invalid theta).
EfritCost efrit_cost_parts(const IoRecord& rec, const ThetaFull& th,
                           double lambda);
double efrit_cost(const IoRecord& rec, const ThetaFull& th, double lambda);

struct EfritStart {
  ThetaFull theta0;
  ThetaFull theta;
  double cost = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct EfritResult {
  ThetaFull theta;
  double cost = 0.0;
  double initial_cost = 0.0;
  int iterations = 0;  ///< of the winning start
  /// Set when no start met the simplex tolerance within the iteration cap;
  /// theta is still the best iterate found.
  bool stalled = false;
  std::size_t best_start = 0;
  std::vector<double> trace;  ///< best-so-far cost of the winning start
  std::vector<EfritStart> starts;
  /// Names of gains whose optimum is pinned within 1e-6 of zero.
  std::vector<std::string> near_zero;
};

/// Default initial time constant when none is configured: ten samples.
inline double default_tc0(double ts) { return 10.0 * ts; }

/// Multi-start Nelder-Mead over (kp, ki, kd, rho) with tc = ts * exp(rho).
EfritResult optimize_pl(const IoRecord& rec, const ThetaFull& th0,
                        const EfritConfig& cfg);

/// CSV with header t,u,y.
void write_record_csv(std::ostream& out, const IoRecord& rec);
IoRecord read_record_csv(std::istream& in, const PidGains& theta0);

/// key = value text with kp, ki, kd, tc, lambda, cost, iterations.
void write_tuning_result(std::ostream& out, const EfritResult& res,
                         double lambda);

}  // namespace plmpc
