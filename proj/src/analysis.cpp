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

#include "plmpc/analysis.hpp"

#include <cmath>
#include <future>
#include <memory>

namespace plmpc {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

ConventionalResult simulate_conventional(const Plant& plant,
                                         const PidGains& gains,
                                         const TimeSeries& r, double tc) {
  gains.validate();
  if (r.ts() != gains.ts) {
    throw Error(ErrorCode::kLengthMismatch, "reference ts differs from gains");
  }
  std::unique_ptr<Plant> p = plant.clone();
  p->reset();
  const std::size_t n = r.size();
  std::vector<double> y(n), u(n), ua(n);
  PidState s;
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = p->output();
    const PidStepResult step = pid_step(gains, s, r[k] - y[k]);
    s = step.state;
    u[k] = step.u;
    ua[k] = p->saturate(u[k]);
    p->apply(u[k]);
  }
  ConventionalResult out{TimeSeries(std::move(y), r.ts()),
                         TimeSeries(std::move(u), r.ts()),
                         TimeSeries(std::move(ua), r.ts()), {}};
  if (tc > 0.0) out.y_m = filter(pl_from_tc(tc, r.ts()).as_filter(), r);
  return out;
}

ProposedResult simulate_proposed(const Plant& plant, const ThetaFull& th,
                                 const MpcWeights& w,
                                 const InputConstraints& c,
                                 const TimeSeries& r) {
  MpcController ctrl = make_mpc_controller(th, r.ts(), w, c);
  std::unique_ptr<Plant> p = plant.clone();
  p->reset();
  const std::size_t n = r.size();
  std::vector<double> y(n), v(n), u(n), ua(n);
  ProposedResult out;
  out.cost.reserve(n);
  out.status.reserve(n);
  out.qp_iterations.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = p->output();
    const MpcStepResult step =
        mpc_step(ctrl, y[k], reference_preview(r, k, w.hp));
    v[k] = step.v;
    u[k] = step.u;
    ua[k] = p->saturate(u[k]);
    out.cost.push_back(step.cost);
    out.status.push_back(step.status);
    out.qp_iterations.push_back(step.qp_iterations);
    p->apply(u[k]);
  }
  out.y = TimeSeries(std::move(y), r.ts());
  out.v = TimeSeries(std::move(v), r.ts());
  out.u = TimeSeries(std::move(u), r.ts());
  out.u_applied = TimeSeries(std::move(ua), r.ts());
  return out;
}

Alignment parse_alignment(std::string_view s) {
  if (s == "same") return Alignment::kSame;
  if (s == "next") return Alignment::kNext;
  throw Error(ErrorCode::kConfig,
              "alignment must be same or next, got " + std::string(s));
}

std::string_view alignment_name(Alignment a) {
  return a == Alignment::kSame ? "same" : "next";
}

TrackingMetrics tracking_metrics(const TimeSeries& r, const TimeSeries& y,
                                 Alignment alignment, std::size_t settle) {
  require_compatible(r, y);
  const std::size_t shift = alignment == Alignment::kNext ? 1 : 0;
  if (settle + shift >= r.size()) {
    throw Error(ErrorCode::kLengthMismatch, "settle window covers the run");
  }
  const std::size_t n = r.size() - settle - shift;
  const TimeSeries rr = r.slice(settle, n);
  const TimeSeries yy = y.slice(settle + shift, n);
  return {rmse(rr, yy), sd(rr - yy)};
}

std::vector<std::size_t> settling_samples(const TimeSeries& r,
                                          const TimeSeries& y, double band) {
  require_compatible(r, y);
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start < r.size()) {
    std::size_t end = start + 1;
    while (end < r.size() && r[end] == r[start]) ++end;
    const double tol = band * std::abs(r[start]);
    std::size_t settled = 0;
    for (std::size_t k = end; k-- > start;) {
      if (std::abs(y[k] - r[start]) > tol) {
        settled = k + 1 - start;
        break;
      }
    }
    out.push_back(settled);
    start = end;
  }
  return out;
}

std::complex<double> first_harmonic(std::span<const double> x, double freq_hz,
                                    double ts, std::size_t first) {
  if (x.empty()) throw Error(ErrorCode::kInvalidArgument, "empty window");
  const double w = 2.0 * kPi * freq_hz * ts;
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    acc += x[k] * std::polar(1.0, -w * static_cast<double>(first + k));
  }
  return 2.0 / static_cast<double>(x.size()) * acc;
}

double snap_frequency(double freq_hz, double ts) {
  if (!(freq_hz > 0.0) || !(ts > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "frequency and ts must be > 0");
  }
  const double per = std::round(1.0 / (freq_hz * ts));
  if (per < 2.0) {
    throw Error(ErrorCode::kInvalidArgument, "frequency at or above Nyquist");
  }
  return 1.0 / (per * ts);
}

namespace {

FreqPoint to_point(double freq_hz, std::complex<double> g) {
  return {freq_hz, 20.0 * std::log10(std::abs(g)), std::arg(g) * 180.0 / kPi};
}

FreqPoint measure_one(const LoopSimulator& loop, double freq, double ts,
                      const SweepOptions& opt) {
  const double f = snap_frequency(freq, ts);
  const auto per = static_cast<std::size_t>(std::round(1.0 / (f * ts)));
  const std::size_t settle = per * opt.settle_periods;
  const std::size_t n = per * (opt.settle_periods + opt.measure_periods);
  const TimeSeries r =
      sinusoid_reference(opt.amp, opt.offset, f, static_cast<double>(n) * ts, ts);
  const TimeSeries y = loop(r);
  require_compatible(r, y);

  std::vector<double> yw(y.vector().begin() + settle, y.vector().end());
  std::vector<double> rw(r.vector().begin() + settle, r.vector().end());
  double ym = 0.0, rm = 0.0;
  for (double v : yw) ym += v;
  for (double v : rw) rm += v;
  ym /= static_cast<double>(yw.size());
  rm /= static_cast<double>(rw.size());
  for (double& v : yw) v -= ym;
  for (double& v : rw) v -= rm;
  const std::complex<double> cy = first_harmonic(yw, f, ts, settle);
  const std::complex<double> cr = first_harmonic(rw, f, ts, settle);
  if (std::norm(cy) < 1e-12) {
    throw Error(ErrorCode::kNoConvergence,
                "no output power at the drive frequency");
  }
  return to_point(f, cy / cr);
}

}  // namespace

std::vector<FreqPoint> empirical_freq_response(const LoopSimulator& loop,
                                               const std::vector<double>& freqs,
                                               double ts,
                                               const SweepOptions& opt) {
  if (opt.settle_periods < 2 || opt.measure_periods < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "need >= 2 settle and >= 1 measure periods");
  }
  std::vector<std::future<FreqPoint>> jobs;
  jobs.reserve(freqs.size());
  for (double f : freqs) {
    jobs.push_back(std::async(std::launch::async, measure_one, std::cref(loop),
                              f, ts, std::cref(opt)));
  }
  std::vector<FreqPoint> out;
  out.reserve(freqs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

FreqPoint filter_freq_point(const RationalFilter& f, double freq_hz,
                            double ts) {
  return to_point(freq_hz, freq_response(f, 2.0 * kPi * freq_hz, ts));
}

std::vector<double> bode_grid() {
  constexpr int kPoints = 15;
  const double lo = std::log10(0.02);
  const double hi = std::log10(5.0);
  std::vector<double> g(kPoints);
  std::size_t nearest = 0;
  for (int i = 0; i < kPoints; ++i) {
    g[i] = std::pow(10.0, lo + (hi - lo) * i / (kPoints - 1));
    if (std::abs(std::log(g[i] / 0.2)) < std::abs(std::log(g[nearest] / 0.2))) {
      nearest = static_cast<std::size_t>(i);
    }
  }
  g[nearest] = 0.2;
  return g;
}

}  // namespace plmpc
