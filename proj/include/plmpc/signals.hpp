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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "plmpc/error.hpp"

namespace plmpc {

/// Uniformly sampled scalar signal. Sample k sits at t = k * ts.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::vector<double> values, double ts);

  /// n zero samples.
  static TimeSeries zeros(std::size_t n, double ts);

  double ts() const noexcept { return ts_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator[](std::size_t k) const { return values_[k]; }
  double time(std::size_t k) const { return static_cast<double>(k) * ts_; }

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  /// Samples [first, first + count).
  TimeSeries slice(std::size_t first, std::size_t count) const;

  friend TimeSeries operator+(const TimeSeries& a, const TimeSeries& b);
  friend TimeSeries operator-(const TimeSeries& a, const TimeSeries& b);
  friend TimeSeries operator*(double alpha, const TimeSeries& a);

 private:
  std::vector<double> values_;
  double ts_ = 1.0;
};

/// Throws kLengthMismatch unless a and b share length and sampling time.
void require_compatible(const TimeSeries& a, const TimeSeries& b);

/// num(z^-1) / den(z^-1), coefficients ordered constant term first.
struct RationalFilter {
  std::vector<double> num{1.0};
  std::vector<double> den{1.0};

  static RationalFilter identity() { return {}; }
  static RationalFilter delay(std::size_t samples);

  /// Throws on empty or non-finite coefficients, or den[0] == 0.
  void validate() const;
};

/// Series connection: (f * g)(z) = f(z) g(z).
RationalFilter operator*(const RationalFilter& f, const RationalFilter& g);

std::vector<double> poly_multiply(std::span<const double> a,
                                  std::span<const double> b);

/// Direct-form difference equation with zero initial conditions.
///   y(k) = (sum_i num[i] x(k-i) - sum_{j>=1} den[j] y(k-j)) / den[0]
/// Throws kNonFinite as soon as an output sample overflows.
TimeSeries filter(const RationalFilter& f, const TimeSeries& x);

/// Evaluates num/den at z^-1 = exp(-j omega ts), omega in rad/s. Throws
/// kDenominatorZero when |den| < 1e-12 there.
std::complex<double> freq_response(const RationalFilter& f, double omega,
                                   double ts);

/// sqrt(mean((a - b)^2)).
double rmse(const TimeSeries& a, const TimeSeries& b);
/// Population standard deviation (divisor N) of an error series.
double sd(const TimeSeries& e);

/// Formatting used by every CSV this project writes: 6-decimal time and
/// 9 significant digits for values.
std::string format_time(double t);
std::string format_value(double v);
/// The value a reader recovers after format_value.
double quantize_value(double v);

/// Two-column CSV with header `t,value`.
void write_csv(std::ostream& out, const TimeSeries& x);
void write_csv(const std::string& path, const TimeSeries& x);
/// Reads the two-column format back; ts is taken from the first time step.
TimeSeries read_csv(std::istream& in);

}  // namespace plmpc
