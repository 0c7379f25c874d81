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

#include "plmpc/frit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <random>

namespace plmpc {

namespace {

constexpr double kRhoLimit = 20.0;

double tc_from_rho(double rho, double ts) {
  return ts * std::exp(std::clamp(rho, -kRhoLimit, kRhoLimit));
}

ThetaFull theta_from_vector(const std::vector<double>& z, double ts) {
  return {z[0], z[1], z[2], tc_from_rho(z[3], ts)};
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void IoRecord::validate() const {
  require_compatible(u0, y0);
  if (u0.empty()) throw Error(ErrorCode::kInvalidArgument, "empty record");
  theta0.validate();
  if (theta0.ts != u0.ts()) {
    throw Error(ErrorCode::kLengthMismatch,
                "record sampling time differs from theta0.ts");
  }
}

void ThetaFull::validate(double ts) const {
  if (!(tc > 0.0) || !std::isfinite(tc)) {
    throw Error(ErrorCode::kNonPositiveTimeConstant, "tc must be > 0");
  }
  if (gains(ts).lead_coefficient() == 0.0) {
    throw Error(ErrorCode::kNonInvertibleController,
                "controller lead coefficient is zero");
  }
}

TimeSeries fictitious_reference(const IoRecord& rec, const PidGains& g) {
  return filter(pid_inverse_filter(g), rec.u0) + rec.y0;
}

FictitiousSignals fictitious_outputs(const IoRecord& rec,
                                     const ThetaFull& th) {
  const double ts = rec.ts();
  th.validate(ts);
  const PidGains g = th.gains(ts);
  FictitiousSignals s;
  s.rtilde = fictitious_reference(rec, g);
  s.ytilde = filter(th.pl(ts).as_filter(), s.rtilde);
  s.utilde = filter(pid_as_filter(g), s.rtilde - s.ytilde);
  std::vector<double> du(s.utilde.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < du.size(); ++k) {
    du[k] = s.utilde[k] - prev;
    prev = s.utilde[k];
  }
  s.dutilde = TimeSeries(std::move(du), ts);
  return s;
}

EfritCost efrit_cost_parts(const IoRecord& rec, const ThetaFull& th,
                           double lambda) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  EfritCost c;
  try {
    const FictitiousSignals s = fictitious_outputs(rec, th);
    for (std::size_t k = 0; k < s.ytilde.size(); ++k) {
      const double e = rec.y0[k] - s.ytilde[k];
      c.matching += e * e;
      c.variation += s.dutilde[k] * s.dutilde[k];
    }
    c.total = c.matching + lambda * c.variation;
  } catch (const Error&) {
    return {kInf, kInf, kInf};
  }
  if (!std::isfinite(c.total)) return {kInf, kInf, kInf};
  return c;
}

double efrit_cost(const IoRecord& rec, const ThetaFull& th, double lambda) {
  return efrit_cost_parts(rec, th, lambda).total;
}

EfritResult optimize_pl(const IoRecord& rec, const ThetaFull& th0,
                        const EfritConfig& cfg) {
  rec.validate();
  const double ts = rec.ts();
  th0.validate(ts);
  if (!(cfg.lambda >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  }
  const int starts = std::max(1, cfg.starts);

  const std::vector<double> z0 = {th0.kp, th0.ki, th0.kd,
                                  std::log(th0.tc / ts)};
  std::vector<std::vector<double>> initial(starts, z0);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> decade(-1.0, 1.0);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  for (int s = 1; s < starts; ++s) {
    for (int i = 0; i < 3; ++i) initial[s][i] *= std::pow(10.0, decade(rng));
    initial[s][3] += shift(rng);
  }

  auto objective = [&](const std::vector<double>& z) {
    return efrit_cost(rec, theta_from_vector(z, ts), cfg.lambda);
  };
  auto run_start = [&](const std::vector<double>& z) {
    std::vector<double> step(4);
    for (int i = 0; i < 3; ++i) step[i] = std::max(0.5 * std::abs(z[i]), 1e-2);
    step[3] = 0.5;
    return nelder_mead(objective, z, step, cfg.optimizer);
  };

  std::vector<NelderMeadResult> runs(starts);
  if (cfg.parallel && starts > 1) {
    std::vector<std::future<NelderMeadResult>> jobs;
    jobs.reserve(starts);
    for (int s = 0; s < starts; ++s) {
      jobs.push_back(std::async(std::launch::async, run_start,
                                std::cref(initial[s])));
    }
    for (int s = 0; s < starts; ++s) runs[s] = jobs[s].get();
  } else {
    for (int s = 0; s < starts; ++s) runs[s] = run_start(initial[s]);
  }

  EfritResult res;
  res.initial_cost = efrit_cost(rec, th0, cfg.lambda);
  res.cost = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  for (int s = 0; s < starts; ++s) {
    EfritStart st;
    st.theta0 = theta_from_vector(initial[s], ts);
    st.theta = theta_from_vector(runs[s].x, ts);
    st.cost = runs[s].value;
    st.iterations = runs[s].iterations;
    st.converged = runs[s].converged;
    any_converged = any_converged || st.converged;
    // Strict < keeps the lowest start index on ties.
    if (st.cost < res.cost) {
      res.cost = st.cost;
      res.theta = st.theta;
      res.best_start = static_cast<std::size_t>(s);
    }
    res.starts.push_back(st);
  }
  if (!(res.cost <= res.initial_cost)) {
    // Only reachable when every start diverged to +inf.
    res.theta = th0;
    res.cost = res.initial_cost;
  }
  res.iterations = runs[res.best_start].iterations;
  res.trace = runs[res.best_start].trace;
  res.stalled = !any_converged;
  if (std::abs(res.theta.kp) < 1e-6) res.near_zero.push_back("kp");
  if (std::abs(res.theta.ki) < 1e-6) res.near_zero.push_back("ki");
  if (std::abs(res.theta.kd) < 1e-6) res.near_zero.push_back("kd");
  return res;
}

void write_record_csv(std::ostream& out, const IoRecord& rec) {
  require_compatible(rec.u0, rec.y0);
  out << "t,u,y\n";
  for (std::size_t k = 0; k < rec.u0.size(); ++k) {
    out << format_time(rec.u0.time(k)) << ',' << format_value(rec.u0[k])
        << ',' << format_value(rec.y0[k]) << '\n';
  }
}

IoRecord read_record_csv(std::istream& in, const PidGains& theta0) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,u,y", 0) != 0) {
    throw Error(ErrorCode::kIo, "expected header t,u,y");
  }
  std::vector<double> t, u, y;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw Error(ErrorCode::kIo, "malformed record row: " + line);
    }
    t.push_back(std::strtod(line.substr(0, c1).c_str(), nullptr));
    u.push_back(std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr));
    y.push_back(std::strtod(line.substr(c2 + 1).c_str(), nullptr));
  }
  if (t.size() < 2) throw Error(ErrorCode::kIo, "record needs two rows");
  const double ts = t[1] - t[0];
  IoRecord rec{TimeSeries(std::move(u), ts), TimeSeries(std::move(y), ts),
               theta0};
  rec.theta0.ts = ts;
  rec.validate();
  return rec;
}

void write_tuning_result(std::ostream& out, const EfritResult& res,
                         double lambda) {
  out << "kp = " << fmt17(res.theta.kp) << '\n'
      << "ki = " << fmt17(res.theta.ki) << '\n'
      << "kd = " << fmt17(res.theta.kd) << '\n'
      << "tc = " << fmt17(res.theta.tc) << '\n'
      << "lambda = " << fmt17(lambda) << '\n'
      << "cost = " << fmt17(res.cost) << '\n'
      << "iterations = " << res.iterations << '\n'
      << "stalled = " << (res.stalled ? "true" : "false") << '\n'
      << "best_start = " << res.best_start << '\n';
  if (!res.near_zero.empty()) {
    out << "near_zero = ";
    for (std::size_t i = 0; i < res.near_zero.size(); ++i) {
      out << (i ? "," : "") << res.near_zero[i];
    }
    out << '\n';
  }
}

}  // namespace plmpc
