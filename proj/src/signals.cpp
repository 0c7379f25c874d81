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

#include "plmpc/signals.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace plmpc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroLeadingDenominator: return "ZeroLeadingDenominator";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDenominatorZero: return "DenominatorZero";
    case ErrorCode::kNonInvertibleController: return "NonInvertibleController";
    case ErrorCode::kNonPositiveTimeConstant: return "NonPositiveTimeConstant";
    case ErrorCode::kNonConvex: return "NonConvex";
    case ErrorCode::kInfeasibleConstraints: return "InfeasibleConstraints";
    case ErrorCode::kDivergence: return "Divergence";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

TimeSeries::TimeSeries(std::vector<double> values, double ts)
    : values_(std::move(values)), ts_(ts) {
  if (!(ts_ > 0.0) || !std::isfinite(ts_)) {
    throw Error(ErrorCode::kInvalidArgument, "sampling time must be > 0");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "time series sample is not finite");
    }
  }
}

TimeSeries TimeSeries::zeros(std::size_t n, double ts) {
  return TimeSeries(std::vector<double>(n, 0.0), ts);
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
  if (first + count > values_.size()) {
    throw Error(ErrorCode::kLengthMismatch, "slice out of range");
  }
  return TimeSeries(std::vector<double>(values_.begin() + first,
                                        values_.begin() + first + count),
                    ts_);
}

void require_compatible(const TimeSeries& a, const TimeSeries& b) {
  if (a.size() != b.size() || a.ts() != b.ts()) {
    throw Error(ErrorCode::kLengthMismatch,
                "series differ in length or sampling time");
  }
}

TimeSeries operator+(const TimeSeries& a, const TimeSeries& b) {
  require_compatible(a, b);
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k];
  return TimeSeries(std::move(out), a.ts());
}

TimeSeries operator-(const TimeSeries& a, const TimeSeries& b) {
  require_compatible(a, b);
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] - b[k];
  return TimeSeries(std::move(out), a.ts());
}

TimeSeries operator*(double alpha, const TimeSeries& a) {
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = alpha * a[k];
  return TimeSeries(std::move(out), a.ts());
}

RationalFilter RationalFilter::delay(std::size_t samples) {
  RationalFilter f;
  f.num.assign(samples + 1, 0.0);
  f.num.back() = 1.0;
  return f;
}

void RationalFilter::validate() const {
  if (num.empty() || den.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty filter coefficients");
  }
  for (double c : num) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kNonFinite, "non-finite numerator coefficient");
    }
  }
  for (double c : den) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kNonFinite, "non-finite denominator coefficient");
    }
  }
  if (den[0] == 0.0) {
    throw Error(ErrorCode::kZeroLeadingDenominator, "den[0] must be nonzero");
  }
}

std::vector<double> poly_multiply(std::span<const double> a,
                                  std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

RationalFilter operator*(const RationalFilter& f, const RationalFilter& g) {
  return {poly_multiply(f.num, g.num), poly_multiply(f.den, g.den)};
}

TimeSeries filter(const RationalFilter& f, const TimeSeries& x) {
  f.validate();
  if (x.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot filter an empty series");
  }
  const std::size_t n = x.size();
  const std::size_t nb = f.num.size();
  const std::size_t na = f.den.size();
  const double inv_a0 = 1.0 / f.den[0];
  std::vector<double> y(n, 0.0);
  const auto in = x.values();
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    const std::size_t ib = std::min(nb, k + 1);
    for (std::size_t i = 0; i < ib; ++i) acc += f.num[i] * in[k - i];
    const std::size_t ia = std::min(na, k + 1);
    for (std::size_t j = 1; j < ia; ++j) acc -= f.den[j] * y[k - j];
    acc *= inv_a0;
    if (!std::isfinite(acc)) {
      throw Error(ErrorCode::kNonFinite,
                  "filter output overflowed at sample " + std::to_string(k));
    }
    y[k] = acc;
  }
  return TimeSeries(std::move(y), x.ts());
}

namespace {

std::complex<double> polyval_delay(const std::vector<double>& c,
                                   std::complex<double> zinv) {
  // Horner in z^-1.
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * zinv + *it;
  return acc;
}

}  // namespace

std::complex<double> freq_response(const RationalFilter& f, double omega,
                                   double ts) {
  f.validate();
  if (!(ts > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sampling time must be > 0");
  }
  constexpr double kPi = 3.14159265358979323846;
  if (omega < 0.0 || omega > kPi / ts * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kInvalidArgument,
                "omega must lie in [0, pi/ts]");
  }
  const std::complex<double> zinv = std::polar(1.0, -omega * ts);
  const std::complex<double> den = polyval_delay(f.den, zinv);
  if (std::abs(den) < 1e-12) {
    throw Error(ErrorCode::kDenominatorZero,
                "pole on the unit circle at this frequency");
  }
  return polyval_delay(f.num, zinv) / den;
}

double rmse(const TimeSeries& a, const TimeSeries& b) {
  require_compatible(a, b);
  if (a.empty()) {
    throw Error(ErrorCode::kLengthMismatch, "rmse of empty series");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(a.size()));
}

double sd(const TimeSeries& e) {
  if (e.empty()) {
    throw Error(ErrorCode::kLengthMismatch, "sd of empty series");
  }
  const double n = static_cast<double>(e.size());
  double mean = 0.0;
  for (double v : e.values()) mean += v;
  mean /= n;
  double acc = 0.0;
  for (double v : e.values()) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / n);
}

std::string format_time(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  return buf;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double quantize_value(double v) {
  return std::strtod(format_value(v).c_str(), nullptr);
}

void write_csv(std::ostream& out, const TimeSeries& x) {
  out << "t,value\n";
  for (std::size_t k = 0; k < x.size(); ++k) {
    out << format_time(x.time(k)) << ',' << format_value(x[k]) << '\n';
  }
}

void write_csv(const std::string& path, const TimeSeries& x) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  write_csv(out, x);
}

TimeSeries read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,value", 0) != 0) {
    throw Error(ErrorCode::kIo, "expected header t,value");
  }
  std::vector<double> t;
  std::vector<double> v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::kIo, "malformed csv row: " + line);
    }
    t.push_back(std::strtod(line.substr(0, comma).c_str(), nullptr));
    v.push_back(std::strtod(line.substr(comma + 1).c_str(), nullptr));
  }
  if (t.size() < 2) throw Error(ErrorCode::kIo, "need at least two rows");
  return TimeSeries(std::move(v), t[1] - t[0]);
}

}  // namespace plmpc
