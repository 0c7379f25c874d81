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

// Straight-line reference implementations shared by the tests. They avoid
// the library code paths on purpose.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace plmpc::testing {

// direct convolution form of num/den with zero initial conditions
inline std::vector<double> naive_filter(const std::vector<double>& num,
                                        const std::vector<double>& den,
                                        const std::vector<double>& x) {
  std::vector<double> y(x.size(), 0.0);
  for (int k = 0; k < static_cast<int>(x.size()); ++k) {
    double acc = 0.0;
    for (int i = 0; i < static_cast<int>(num.size()); ++i) {
      if (k - i >= 0) acc += num[i] * x[k - i];
    }
    for (int j = 1; j < static_cast<int>(den.size()); ++j) {
      if (k - j >= 0) acc -= den[j] * y[k - j];
    }
    y[k] = acc / den[0];
  }
  return y;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, int n,
                                         double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

// roots of c[0] + c[1] s + ... as eigenvalues of the companion matrix
inline std::vector<std::complex<double>> poly_roots(
    const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  const Eigen::VectorXcd ev = comp.eigenvalues();
  return {ev.data(), ev.data() + n};
}

// polynomial in z^-1 (constant first) has all its z-plane roots inside
// radius
inline bool stable_in_z(const std::vector<double>& p, double radius = 1.0) {
  // z^n p(z^-1) has coefficients p reversed: p[n] + p[n-1] z + ... + p[0] z^n
  std::vector<double> c(p.rbegin(), p.rend());
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  for (const auto& r : poly_roots(c)) {
    if (std::abs(r) >= radius) return false;
  }
  return true;
}

struct LinearPlant {
  std::vector<double> num;  // num[0] = 0, strictly proper
  std::vector<double> den;  // den[0] = 1
};

inline LinearPlant random_stable_plant(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rad(0.2, 0.9);
  std::uniform_real_distribution<double> ang(0.0, 1.5);
  std::uniform_real_distribution<double> zero(-0.5, 0.5);
  std::uniform_real_distribution<double> dc(0.5, 2.0);
  const double r = rad(rng), th = ang(rng), c = zero(rng);
  // complex pair r e^{+-j th}, zero at -c, scaled to a set DC gain
  const std::vector<double> den = {1.0, -2.0 * r * std::cos(th), r * r};
  const double b = dc(rng) * (den[0] + den[1] + den[2]) / (1.0 + c);
  return {{0.0, b, b * c}, den};
}

struct ClosedLoopRun {
  std::vector<double> u, y;
};

// unity feedback with the PID written out as e -> u difference equation
inline ClosedLoopRun simulate_linear_loop(const LinearPlant& g, double kp,
                                          double ki, double kd, double ts,
                                          const std::vector<double>& r) {
  const int n = static_cast<int>(r.size());
  ClosedLoopRun out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  std::vector<double> e(n, 0.0);
  const double c0 = kp * ts + ki * ts * ts + kd;
  const double c1 = -(kp * ts + 2.0 * kd);
  const double c2 = kd;
  for (int k = 0; k < n; ++k) {
    double y = 0.0;
    for (int i = 1; i < static_cast<int>(g.num.size()); ++i) {
      if (k - i >= 0) y += g.num[i] * out.u[k - i];
    }
    for (int j = 1; j < static_cast<int>(g.den.size()); ++j) {
      if (k - j >= 0) y -= g.den[j] * out.y[k - j];
    }
    out.y[k] = y;
    e[k] = r[k] - y;
    double u = c0 * e[k];
    if (k >= 1) u += c1 * e[k - 1] + ts * out.u[k - 1];
    if (k >= 2) u += c2 * e[k - 2];
    out.u[k] = u / ts;
  }
  return out;
}

// gains whose PID zeros sit inside the unit circle and that stabilize g
inline std::array<double, 3> random_gains(std::mt19937_64& rng,
                                          const LinearPlant& g, double ts) {
  std::uniform_real_distribution<double> gain(0.0, 1.0);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double kp = 0.05 + 0.5 * gain(rng);
    const double ki = 0.05 + 0.5 * gain(rng);
    const double kd = 0.05 * gain(rng);
    const std::vector<double> cn = {kp * ts + ki * ts * ts + kd,
                                    -(kp * ts + 2.0 * kd), kd};
    if (!stable_in_z(cn)) continue;
    // den_G * ts(1 - z^-1) + num_G * cn
    std::vector<double> ch(5, 0.0);
    const std::vector<double> cd = {ts, -ts};
    for (std::size_t i = 0; i < g.den.size(); ++i) {
      for (std::size_t j = 0; j < cd.size(); ++j) ch[i + j] += g.den[i] * cd[j];
    }
    for (std::size_t i = 0; i < g.num.size(); ++i) {
      for (std::size_t j = 0; j < cn.size(); ++j) ch[i + j] += g.num[i] * cn[j];
    }
    if (stable_in_z(ch, 0.98)) return {kp, ki, kd};
  }
  throw std::runtime_error("no stabilizing gains found");
}

// exact optimum of min 1/2 x'Hx + f'x s.t. lo <= M x <= hi by trying every
// lower/upper/free assignment of the rows (3^n active sets)
inline double enumerate_two_sided_qp(const Eigen::MatrixXd& h,
                                     const Eigen::VectorXd& f,
                                     const Eigen::MatrixXd& m,
                                     const Eigen::VectorXd& lo,
                                     const Eigen::VectorXd& hi,
                                     Eigen::VectorXd* best_x = nullptr) {
  const int n = static_cast<int>(h.rows());
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  double best = INFINITY;
  for (int code = 0; code < total; ++code) {
    std::vector<int> rows;
    std::vector<double> vals;
    int c = code;
    for (int i = 0; i < n; ++i, c /= 3) {
      if (c % 3 == 1) {
        rows.push_back(i);
        vals.push_back(lo[i]);
      } else if (c % 3 == 2) {
        rows.push_back(i);
        vals.push_back(hi[i]);
      }
    }
    const int na = static_cast<int>(rows.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + na, n + na);
    Eigen::VectorXd rhs(n + na);
    kkt.topLeftCorner(n, n) = h;
    rhs.head(n) = -f;
    for (int a = 0; a < na; ++a) {
      kkt.block(n + a, 0, 1, n) = m.row(rows[a]);
      kkt.block(0, n + a, n, 1) = m.row(rows[a]).transpose();
      rhs[n + a] = vals[a];
    }
    const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
    const Eigen::VectorXd x = sol.head(n);
    const Eigen::VectorXd z = m * x;
    if (((z - hi).array() > 1e-9).any() || ((lo - z).array() > 1e-9).any()) {
      continue;
    }
    const double v = 0.5 * x.dot(h * x) + f.dot(x);
    if (v < best) {
      best = v;
      if (best_x) *best_x = x;
    }
  }
  return best;
}

}  // namespace plmpc::testing
