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

#pragma once

// Analytic expressions for energy gains and energy second moments of the
// multimode battery, transcribed as plain scalar functions. They share no
// code with the phase-space engine and serve as a cross-check of it.
//
// Displacement amplitudes enter only through |alpha|^2.

#include <array>
#include <span>

namespace cvb::cf {

struct TwoModeSqueeze {
  double dE1;
  double dE2;
  double anticomm;  // <{H', H}> in the initial state
};

TwoModeSqueeze two_mode_squeeze(double r, double tau, double delta1, double theta1, double delta2, double theta2);

struct TotalAndAnticomm {
  double dE_total;
  double anticomm;
};

TotalAndAnticomm two_mode_disp(double r, double tau, double amp1, double phi1, double amp2, double phi2);

std::array<double, 3> three_mode_squeeze(double r, double tau1, double tau2, std::span<const double, 3> deltas,
                                         std::span<const double, 3> thetas);

TotalAndAnticomm three_mode_disp(double r, double tau1, double tau2, std::span<const double, 3> amps,
                                 std::span<const double, 3> phis);

// --- N-mode separable battery ----------------------------------------------

/// Initial energy N sinh^2 r.
double nmode_energy(double r, int n_modes);
/// Initial <H^2>: (1/2) N sinh^2 r (2 + (N+2) cosh 2r - N).
double nmode_energy_sq(double r, int n_modes);
/// Initial energy variance derived from the two moments above: 2N sinh^2 r cosh^2 r.
double nmode_variance(double r, int n_modes);
/// Variance as quoted alongside the moments, N cosh^2 r sinh^2 r. Kept only to
/// report the mismatch with nmode_variance.
double nmode_variance_as_quoted(double r, int n_modes);

/// Per-mode energy gain sinh d (cosh d cos t sinh 2r + sinh d cosh 2r).
double nmode_squeeze_dE(double r, double delta, double theta);
/// Per-mode <N^2> after the squeezer.
double nmode_squeeze_N2(double r, double delta, double theta);
/// <{H', H}> for local squeezers on all N modes.
double nmode_squeeze_anticomm(double r, int n_modes, std::span<const double> deltas, std::span<const double> thetas);

struct NumberMoments {
  double N1;
  double N2;
};

/// Per-mode <N> and <N^2> after D(amp e^{i phi}) on a squeezed vacuum.
NumberMoments nmode_disp_moments(double r, double amp, double phi);
/// <{H', H}> for local displacements: 2 sum|a|^2 E0 + 2 <H^2>_0.
double nmode_disp_anticomm(double r, int n_modes, std::span<const double> amps);

/// Squeezing strength that deposits dE in one mode at angle theta.
/// Throws std::domain_error for dE < 0.
double invert_energy_to_squeeze(double r, double theta, double dE);

/// Energy gained by a two-mode squeezer on two identical squeezed vacua.
double global_two_mode_squeeze_dE(double r, double delta);

// --- assembled figures of merit --------------------------------------------

struct Merit {
  double V0;
  double V1;
  double cov;
  double delta_sigma;
  double work_fluctuation;
};

/// Delta-sigma and Delta-W of the N-mode separable battery under local
/// squeezers, assembled from the moment expressions above.
Merit nmode_squeeze_merit(double r, std::span<const double> deltas, std::span<const double> thetas);

/// Same for local displacements.
Merit nmode_disp_merit(double r, std::span<const double> amps, std::span<const double> phis);

}  // namespace cvb::cf
