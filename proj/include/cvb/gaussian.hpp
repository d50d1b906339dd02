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

// Phase-space representation of N-mode Gaussian states and Gaussian unitaries.
//
// Conventions (fixed throughout the library):
//   * hbar = 1, x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)).
//   * Quadratures are mode-interleaved: R = (x_1, p_1, ..., x_N, p_N).
//   * Vacuum covariance is Identity/2.
//   * A SymplecticOp (S, shift) maps d -> S d + shift and cov -> S cov S^T,
//     i.e. S is the Heisenberg action U^dag R U = S R + shift.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cvb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// N-mode symplectic form, direct sum of [[0, 1], [-1, 0]].
Mat symplectic_form(int n_modes);

class GaussianState {
 public:
  /// Throws std::invalid_argument on dimension mismatch or a covariance
  /// matrix that is not symmetric to 1e-12.
  GaussianState(Vec mean, Mat cov);

  int num_modes() const { return static_cast<int>(mean_.size() / 2); }
  const Vec& mean() const { return mean_; }
  const Mat& cov() const { return cov_; }

  /// 2x2 covariance block of one mode.
  Eigen::Matrix2d mode_block(int mode) const;

  /// Symplectic eigenvalues, ascending. All >= 1/2 for a physical state.
  Vec symplectic_eigenvalues() const;

  /// Uncertainty relation cov + (i/2) Omega >= 0, checked through the
  /// symplectic spectrum.
  bool is_physical(double tol = 1e-9) const;

  /// Pure iff every symplectic eigenvalue equals 1/2.
  bool is_pure(double tol = 1e-9) const;

  /// Sum of mean photon numbers, <sum_j N_j>.
  double total_mean_photons() const;

 private:
  Vec mean_;
  Mat cov_;
};

struct SymplecticOp {
  Mat S;
  Vec shift;

  SymplecticOp(Mat s, Vec shift_vec);

  int num_modes() const { return static_cast<int>(shift.size() / 2); }
  bool is_symplectic(double tol = 1e-10) const;
  static SymplecticOp identity(int n_modes);
};

// --- state factories -------------------------------------------------------

GaussianState vacuum(int n_modes);

/// Product of N identical squeezed vacua, cov block (1/2) diag(e^{2r}, e^{-2r}).
/// Negative r squeezes the position quadrature instead.
GaussianState n_mode_separable(double r, int n_modes);

/// Two-mode family: +r and -r squeezed vacua mixed on a beam splitter of
/// transmittivity tau. tau = 0, 1 give product states, tau = 1/2 the TMSV.
GaussianState two_mode_family(double r, double tau);

/// Three-mode family from a tritter: (+r, -r, +r) squeezed inputs, splitter
/// on modes (1,2) with tau1 followed by splitter on (2,3) with tau2.
GaussianState three_mode_family(double r, double tau1, double tau2);

// --- Gaussian unitaries ----------------------------------------------------

/// Single-mode squeezer S(delta e^{i theta}) on `mode`. Heisenberg block
/// cosh(delta) I + sinh(delta) [[cos t, sin t], [sin t, -cos t]].
SymplecticOp squeezer(double delta, double theta, int mode, int n_modes);

/// Displacement D(amp e^{i phi}); shifts the mode by sqrt(2) amp (cos phi, sin phi).
SymplecticOp displacer(double amp, double phi, int mode, int n_modes);

/// Beam splitter with power transmittivity tau between two distinct modes.
/// x_a' = sqrt(tau) x_a - sqrt(1-tau) x_b, x_b' = sqrt(1-tau) x_a + sqrt(tau) x_b,
/// identically on the momenta.
SymplecticOp beam_splitter(double tau, int mode_a, int mode_b, int n_modes);

/// Two-mode squeezer exp(zeta a1^dag a2^dag - h.c.), zeta = delta e^{i theta}.
SymplecticOp global_two_mode_squeezer(double delta, double theta);

/// Apply `op` after nothing: d' = S d + shift, cov' = S cov S^T.
GaussianState apply(const SymplecticOp& op, const GaussianState& state);

/// `second` after `first`.
SymplecticOp compose(const SymplecticOp& second, const SymplecticOp& first);

/// Lift a k-mode op onto the listed modes of an N-mode system.
SymplecticOp embed(const SymplecticOp& op, std::span<const int> target_modes, int n_modes);

/// Gaussian Wigner function at a phase-space point.
double wigner_at(const GaussianState& state, const Vec& point);

}  // namespace cvb
