// Copyright 2026 The cvbattery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvb/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>
#include <stdexcept>

#include <fmt/format.h>

namespace cvb::cf {

namespace {

double sq(double x) { return x * x; }

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument(fmt::format("parameter lists differ in length: {} vs {}", a, b));
  }
}

}  // namespace

TwoModeSqueeze two_mode_squeeze(double r, double tau, double delta1, double theta1, double delta2, double theta2) {
  const double sh2r = std::sinh(2 * r);
  const double ch2r = std::cosh(2 * r);
  TwoModeSqueeze out{};
  out.dE1 = std::sinh(delta1) *
            (std::sinh(delta1) * ch2r + (2 * tau - 1) * std::cosh(delta1) * std::cos(theta1) * sh2r);
  out.dE2 = std::sinh(delta2) *
            (std::sinh(delta2) * ch2r + (1 - 2 * tau) * std::cosh(delta2) * std::cos(theta2) * sh2r);
  out.anticomm = 2 * ((1 + 2 * ch2r) * (std::cosh(2 * delta1) + std::cosh(2 * delta2)) - 2) * sq(std::sinh(r)) +
                 (1 - 2 * tau) * (sh2r - std::sinh(4 * r)) *
                     (std::cos(theta1) * std::sinh(2 * delta1) - std::cos(theta2) * std::sinh(2 * delta2));
  return out;
}

TotalAndAnticomm two_mode_disp(double r, double /*tau*/, double amp1, double /*phi1*/, double amp2,
                               double /*phi2*/) {
  const double a2 = sq(amp1) + sq(amp2);
  return {a2, 4 * (a2 + 2 * std::cosh(2 * r)) * sq(std::sinh(r))};
}

std::array<double, 3> three_mode_squeeze(double r, double tau1, double tau2, std::span<const double, 3> deltas,
                                         std::span<const double, 3> thetas) {
  const double sh2r = std::sinh(2 * r);
  const double ch2r = std::cosh(2 * r);
  const double d1 = deltas[0], d2 = deltas[1], d3 = deltas[2];
  std::array<double, 3> out{};
  out[0] = std::sinh(d1) * ((2 * tau1 - 1) * std::cosh(d1) * std::cos(thetas[0]) * sh2r + std::sinh(d1) * ch2r);
  out[1] = std::sinh(d2) *
           (std::cosh(d2) * std::cos(thetas[1]) * sh2r * (1 - 2 * tau1 * tau2) + std::sinh(d2) * ch2r);
  const double e4 = std::exp(4 * r);
  out[2] = 0.25 * std::exp(-2 * r) *
           ((e4 - 1) * std::sinh(2 * d3) * std::cos(thetas[2]) * (2 * tau1 * (tau2 - 1) + 1) +
            2 * (e4 + 1) * sq(std::sinh(d3)));
  return out;
}

TotalAndAnticomm three_mode_disp(double r, double /*tau1*/, double /*tau2*/, std::span<const double, 3> amps,
                                 std::span<const double, 3> /*phis*/) {
  const double a2 = sq(amps[0]) + sq(amps[1]) + sq(amps[2]);
  return {a2, 3 * (2 * a2 + 5 * std::cosh(2 * r) - 1) * sq(std::sinh(r))};
}

double nmode_energy(double r, int n_modes) { return n_modes * sq(std::sinh(r)); }

double nmode_energy_sq(double r, int n_modes) {
  const double n = n_modes;
  return 0.5 * n * sq(std::sinh(r)) * (2 + (n + 2) * std::cosh(2 * r) - n);
}

double nmode_variance(double r, int n_modes) { return nmode_energy_sq(r, n_modes) - sq(nmode_energy(r, n_modes)); }

double nmode_variance_as_quoted(double r, int n_modes) {
  return n_modes * sq(std::cosh(r)) * sq(std::sinh(r));
}

double nmode_squeeze_dE(double r, double delta, double theta) {
  return std::sinh(delta) *
         (std::cosh(delta) * std::cos(theta) * std::sinh(2 * r) + std::sinh(delta) * std::cosh(2 * r));
}

double nmode_squeeze_N2(double r, double delta, double theta) {
  const double s2d = std::sinh(2 * delta);
  const double s2r = std::sinh(2 * r);
  const double c4d = std::cosh(4 * delta);
  const double ct = std::cos(theta);
  return (3 * c4d + 4 * s2d * s2r * (3 * s2d * std::cos(2 * theta) * s2r - 4 * ct) +
          12 * std::sinh(4 * delta) * ct * std::sinh(4 * r) - 16 * std::cosh(2 * delta) * std::cosh(2 * r) +
          (9 * c4d + 3) * std::cosh(4 * r) + 1) /
         32.0;
}

double nmode_squeeze_anticomm(double r, int n_modes, std::span<const double> deltas,
                              std::span<const double> thetas) {
  require_same_length(deltas.size(), thetas.size());
  const double n = n_modes;
  const double e0 = nmode_energy(r, n_modes);
  const double e0sq = nmode_energy_sq(r, n_modes);
  const double s2r = std::sinh(2 * r);
  double acc = 0.0;
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    const double d = deltas[j];
    const double ct = std::cos(thetas[j]);
    acc += (2 / n) * e0sq * std::cosh(2 * d) + 2 * e0 * sq(std::sinh(d)) +
           0.5 * ct * s2r * (3 * std::cosh(2 * r) - 1) * std::sinh(2 * d) +
           ((n - 1) / n) * e0 * s2r * ct * std::sinh(2 * d);
  }
  return acc;
}

NumberMoments nmode_disp_moments(double r, double amp, double phi) {
  const double a2 = sq(amp);
  NumberMoments m{};
  m.N1 = sq(std::sinh(r)) + a2;
  m.N2 = a2 * (a2 - 1 + std::cos(2 * phi) * std::sinh(2 * r)) + (2 * a2 - 0.5) * std::cosh(2 * r) +
         (3 * std::cosh(4 * r) + 1) / 8.0;
  return m;
}

double nmode_disp_anticomm(double r, int n_modes, std::span<const double> amps) {
  double a2 = 0.0;
  for (double a : amps) a2 += sq(a);
  return 2 * a2 * nmode_energy(r, n_modes) + 2 * nmode_energy_sq(r, n_modes);
}

double invert_energy_to_squeeze(double r, double theta, double dE) {
  if (dE < 0.0) {
    throw std::domain_error(fmt::format("cannot invert a negative energy change ({})", dE));
  }
  const double ch = std::cosh(2 * r);
  const double sh = std::sinh(2 * r);
  const double ct = std::cos(theta);
  const double num = std::sqrt(4 * dE * (dE + ch) + sq(ct) * sq(sh)) + 2 * dE + ch;
  const double den = ct * sh + ch;
  return 0.5 * std::log(num / den);
}

double global_two_mode_squeeze_dE(double r, double delta) { return 2 * sq(std::sinh(delta)) * std::cosh(2 * r); }

namespace {

// Separable modes: the energy variance is the sum of per-mode variances, and
// <H^2> expands as sum <N_j^2> + 2 sum_{j<k} <N_j><N_k>.
Merit assemble(double r, int n_modes, std::span<const double> n1, std::span<const double> n2, double anticomm) {
  double e1 = 0.0;
  double cross = 0.0;
  double sq_sum = 0.0;
  for (std::size_t j = 0; j < n1.size(); ++j) {
    sq_sum += n2[j];
    cross += e1 * n1[j];
    e1 += n1[j];
  }
  const double h2 = sq_sum + 2 * cross;
  Merit m{};
  m.V0 = nmode_variance(r, n_modes);
  m.V1 = h2 - sq(e1);
  m.cov = 0.5 * anticomm - e1 * nmode_energy(r, n_modes);
  m.delta_sigma = std::sqrt(m.V1) - std::sqrt(m.V0);
  m.work_fluctuation = std::sqrt(std::max(0.0, m.V1 + m.V0 - 2 * m.cov));
  return m;
}

}  // namespace

Merit nmode_squeeze_merit(double r, std::span<const double> deltas, std::span<const double> thetas) {
  require_same_length(deltas.size(), thetas.size());
  const int n = static_cast<int>(deltas.size());
  std::vector<double> n1(deltas.size()), n2(deltas.size());
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    n1[j] = sq(std::sinh(r)) + nmode_squeeze_dE(r, deltas[j], thetas[j]);
    n2[j] = nmode_squeeze_N2(r, deltas[j], thetas[j]);
  }
  return assemble(r, n, n1, n2, nmode_squeeze_anticomm(r, n, deltas, thetas));
}

Merit nmode_disp_merit(double r, std::span<const double> amps, std::span<const double> phis) {
  require_same_length(amps.size(), phis.size());
  const int n = static_cast<int>(amps.size());
  std::vector<double> n1(amps.size()), n2(amps.size());
  for (std::size_t j = 0; j < amps.size(); ++j) {
    const auto m = nmode_disp_moments(r, amps[j], phis[j]);
    n1[j] = m.N1;
    n2[j] = m.N2;
  }
  return assemble(r, n, n1, n2, nmode_disp_anticomm(r, n, amps));
}

}  // namespace cvb::cf
