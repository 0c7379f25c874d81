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

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "plmpc/frit.hpp"
#include "plmpc/mpc.hpp"
#include "plmpc/plants.hpp"
#include "plmpc/signals.hpp"

namespace plmpc {

struct ConventionalResult {
  TimeSeries y;
  TimeSeries u;          ///< PID output
  TimeSeries u_applied;  ///< after the actuator range
  TimeSeries y_m;        ///< P_L(tc) r, empty when no tc is given
};

/// Unity feedback e = r - y, u = PID(e) on a fresh copy of the plant.
/// tc > 0 also fills y_m.
ConventionalResult simulate_conventional(const Plant& plant,
                                         const PidGains& gains,
                                         const TimeSeries& r, double tc = 0.0);

struct ProposedResult {
  TimeSeries y;
  TimeSeries v;
  TimeSeries u;          ///< inner PID output
  TimeSeries u_applied;
  std::vector<double> cost;
  std::vector<QpStatus> status;
  std::vector<int> qp_iterations;
};

/// MPC-wrapped inner PID with the preview taken from r.
ProposedResult simulate_proposed(const Plant& plant, const ThetaFull& th,
                                 const MpcWeights& w,
                                 const InputConstraints& c,
                                 const TimeSeries& r);

enum class Alignment {
  kSame,  ///< r(k) against y(k)
  kNext,  ///< r(k) against y(k+1)
};

Alignment parse_alignment(std::string_view s);
std::string_view alignment_name(Alignment a);

struct TrackingMetrics {
  double rmse = 0.0;
  double sd = 0.0;  ///< of e = r - y
};

/// Drops the first settle samples, then pairs per alignment.
TrackingMetrics tracking_metrics(const TimeSeries& r, const TimeSeries& y,
                                 Alignment alignment = Alignment::kSame,
                                 std::size_t settle = 0);

/// For each constant segment of r: samples from the segment start until y
/// stays within band * |r| for the rest of that segment. A segment where
/// y never settles reports its full length.
std::vector<std::size_t> settling_samples(const TimeSeries& r,
                                          const TimeSeries& y,
                                          double band = 0.02);

/// (2/N) sum x(k) exp(-j 2 pi f t_k) with t_k = (first + k) ts; for
/// x = A sin(2 pi f t + phi) over whole periods this is A exp(j(phi - pi/2)).
std::complex<double> first_harmonic(std::span<const double> x, double freq_hz,
                                    double ts, std::size_t first = 0);

struct FreqPoint {
  double freq_hz = 0.0;
  double gain_db = 0.0;
  double phase_deg = 0.0;
};

using LoopSimulator = std::function<TimeSeries(const TimeSeries& r)>;

struct SweepOptions {
  double amp = 25.0;
  double offset = 30.0;
  int settle_periods = 10;
  int measure_periods = 10;
};

/// Nearest frequency with a whole number of samples per period.
double snap_frequency(double freq_hz, double ts);

/// Drives loop with offset + amp sin at each (snapped) frequency and
/// returns the first-harmonic response of y relative to the drive.
/// Throws kNoConvergence when the output harmonic power is < 1e-12.
std::vector<FreqPoint> empirical_freq_response(const LoopSimulator& loop,
                                               const std::vector<double>& freqs,
                                               double ts,
                                               const SweepOptions& opt = {});

FreqPoint filter_freq_point(const RationalFilter& f, double freq_hz,
                            double ts);

/// 15 log-spaced points over [0.02, 5] Hz, the nearest one replaced by 0.2.
std::vector<double> bode_grid();

}  // namespace plmpc
