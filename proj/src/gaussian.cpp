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

#include "cvb/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace cvb {

namespace {

void require_modes(int n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument(fmt::format("mode count must be >= 1, got {}", n_modes));
  }
}

void require_mode_index(int mode, int n_modes) {
  if (mode < 0 || mode >= n_modes) {
    throw std::invalid_argument(fmt::format("mode index {} outside [0, {})", mode, n_modes));
  }
}

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(fmt::format("{} must lie in [0, 1], got {}", name, v));
  }
}

}  // namespace

Mat symplectic_form(int n_modes) {
  Mat omega = Mat::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

// --- GaussianState ---------------------------------------------------------

GaussianState::GaussianState(Vec mean, Mat cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto n = mean_.size();
  if (n == 0 || n % 2 != 0) {
    throw std::invalid_argument(fmt::format("mean vector length {} is not a positive even number", n));
  }
  if (cov_.rows() != n || cov_.cols() != n) {
    throw std::invalid_argument(
        fmt::format("covariance is {}x{}, expected {}x{}", cov_.rows(), cov_.cols(), n, n));
  }
  const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
  if (asym >= 1e-12) {
    throw std::invalid_argument(fmt::format("covariance not symmetric (max |C - C^T| = {:g})", asym));
  }
}

Eigen::Matrix2d GaussianState::mode_block(int mode) const {
  require_mode_index(mode, num_modes());
  return cov_.block<2, 2>(2 * mode, 2 * mode);
}

Vec GaussianState::symplectic_eigenvalues() const {
  // nu_k are the positive eigenvalues of the Hermitian C^{1/2} (i Omega) C^{1/2}.
  Eigen::SelfAdjointEigenSolver<Mat> es(cov_);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    // Not positive definite; no meaningful symplectic spectrum.
    return Vec::Zero(num_modes());
  }
  const Mat root = es.operatorSqrt();
  const Eigen::MatrixXcd herm =
      std::complex<double>(0.0, 1.0) * (root * symplectic_form(num_modes()) * root).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(herm);
  const Vec all = hs.eigenvalues();
  // Spectrum is +-nu_k, sorted ascending: the upper half holds the nu_k.
  return all.tail(num_modes());
}

bool GaussianState::is_physical(double tol) const {
  Eigen::SelfAdjointEigenSolver<Mat> es(cov_);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    return false;
  }
  return symplectic_eigenvalues().minCoeff() >= 0.5 - tol;
}

bool GaussianState::is_pure(double tol) const {
  const Vec nu = symplectic_eigenvalues();
  return (nu.array() - 0.5).abs().maxCoeff() <= tol;
}

double GaussianState::total_mean_photons() const {
  return 0.5 * (cov_.trace() + mean_.squaredNorm()) - 0.5 * num_modes();
}

// --- SymplecticOp ----------------------------------------------------------

SymplecticOp::SymplecticOp(Mat s, Vec shift_vec) : S(std::move(s)), shift(std::move(shift_vec)) {
  const auto n = shift.size();
  if (n == 0 || n % 2 != 0 || S.rows() != n || S.cols() != n) {
    throw std::invalid_argument(
        fmt::format("symplectic op shape mismatch: S {}x{}, shift {}", S.rows(), S.cols(), n));
  }
}

bool SymplecticOp::is_symplectic(double tol) const {
  const Mat omega = symplectic_form(num_modes());
  return (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff() < tol;
}

SymplecticOp SymplecticOp::identity(int n_modes) {
  require_modes(n_modes);
  return {Mat::Identity(2 * n_modes, 2 * n_modes), Vec::Zero(2 * n_modes)};
}

// --- factories -------------------------------------------------------------

GaussianState vacuum(int n_modes) {
  require_modes(n_modes);
  return {Vec::Zero(2 * n_modes), 0.5 * Mat::Identity(2 * n_modes, 2 * n_modes)};
}

GaussianState n_mode_separable(double r, int n_modes) {
  require_modes(n_modes);
  Mat cov = Mat::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    cov(2 * j, 2 * j) = 0.5 * std::exp(2.0 * r);
    cov(2 * j + 1, 2 * j + 1) = 0.5 * std::exp(-2.0 * r);
  }
  return {Vec::Zero(2 * n_modes), std::move(cov)};
}

GaussianState two_mode_family(double r, double tau) {
  require_unit_interval(tau, "tau");
  const double sh = std::sinh(2.0 * r);
  const double a = 0.5 * (std::exp(-2.0 * r) + 2.0 * tau * sh);
  const double b = 0.5 * (std::exp(2.0 * r) - 2.0 * tau * sh);
  const double c = std::sqrt(tau * (1.0 - tau)) * sh;
  Mat cov(4, 4);
  // clang-format off
  cov << a,  0,  c,  0,
         0,  b,  0, -c,
         c,  0,  b,  0,
         0, -c,  0,  a;
  // clang-format on
  return {Vec::Zero(4), std::move(cov)};
}

GaussianState three_mode_family(double r, double tau1, double tau2) {
  require_unit_interval(tau1, "tau1");
  require_unit_interval(tau2, "tau2");
  const double e2 = std::exp(2.0 * r);
  const double em2 = std::exp(-2.0 * r);
  const double e4m1 = std::exp(4.0 * r) - 1.0;
  const double sh = std::sinh(2.0 * r);
  const double ch = std::cosh(2.0 * r);

  const double A = 0.5 * em2 * (e4m1 * tau1 + 1.0);
  const double B = 0.5 * (em2 * tau1 + e2 * (1.0 - tau1));
  const double C = 0.5 * (sh * (1.0 - 2.0 * tau1 * tau2) + ch);
  const double D = 0.5 * em2 * (e4m1 * tau1 * tau2 + 1.0);
  const double E = 0.5 * (sh * (1.0 - 2.0 * tau1 * (1.0 - tau2)) + ch);
  const double F = 0.5 * em2 * (1.0 + tau1 * e4m1 * (1.0 - tau2));
  const double R = std::sqrt(tau1 * tau2 * (1.0 - tau1)) * sh;
  const double S = tau1 * std::sqrt(tau2 * (1.0 - tau2)) * sh;
  const double T = std::sqrt(tau1 * (1.0 - tau1) * (1.0 - tau2)) * sh;

  Mat cov(6, 6);
  // clang-format off
  cov << A,  0,  R,  0,  T,  0,
         0,  B,  0, -R,  0, -T,
         R,  0,  C,  0, -S,  0,
         0, -R,  0,  D,  0,  S,
         T,  0, -S,  0,  E,  0,
         0, -T,  0,  S,  0,  F;
  // clang-format on
  return {Vec::Zero(6), std::move(cov)};
}

// --- unitaries ---------------------------------------------------------------

SymplecticOp squeezer(double delta, double theta, int mode, int n_modes) {
  require_modes(n_modes);
  require_mode_index(mode, n_modes);
  if (!(delta >= 0.0)) {
    throw std::invalid_argument(
        fmt::format("squeezing strength must be >= 0 (got {}); rotate theta by pi instead", delta));
  }
  SymplecticOp op = SymplecticOp::identity(n_modes);
  const double ch = std::cosh(delta);
  const double sh = std::sinh(delta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const int i = 2 * mode;
  op.S(i, i) = ch + sh * c;
  op.S(i, i + 1) = sh * s;
  op.S(i + 1, i) = sh * s;
  op.S(i + 1, i + 1) = ch - sh * c;
  return op;
}

SymplecticOp displacer(double amp, double phi, int mode, int n_modes) {
  require_modes(n_modes);
  require_mode_index(mode, n_modes);
  if (!(amp >= 0.0)) {
    throw std::invalid_argument(fmt::format("displacement amplitude must be >= 0, got {}", amp));
  }
  SymplecticOp op = SymplecticOp::identity(n_modes);
  op.shift(2 * mode) = std::numbers::sqrt2 * amp * std::cos(phi);
  op.shift(2 * mode + 1) = std::numbers::sqrt2 * amp * std::sin(phi);
  return op;
}

SymplecticOp beam_splitter(double tau, int mode_a, int mode_b, int n_modes) {
  require_modes(n_modes);
  require_unit_interval(tau, "tau");
  require_mode_index(mode_a, n_modes);
  require_mode_index(mode_b, n_modes);
  if (mode_a == mode_b) {
    throw std::invalid_argument(fmt::format("beam splitter needs distinct modes, got {} twice", mode_a));
  }
  SymplecticOp op = SymplecticOp::identity(n_modes);
  const double t = std::sqrt(tau);
  const double u = std::sqrt(1.0 - tau);
  for (int q = 0; q < 2; ++q) {
    const int ia = 2 * mode_a + q;
    const int ib = 2 * mode_b + q;
    op.S(ia, ia) = t;
    op.S(ia, ib) = -u;
    op.S(ib, ia) = u;
    op.S(ib, ib) = t;
  }
  return op;
}

SymplecticOp global_two_mode_squeezer(double delta, double theta) {
  if (!(delta >= 0.0)) {
    throw std::invalid_argument(fmt::format("squeezing strength must be >= 0, got {}", delta));
  }
  const double A = std::cos(theta) * std::sinh(delta);
  const double B = std::sin(theta) * std::sinh(delta);
  const double C = std::cosh(delta);
  Mat s(4, 4);
  // clang-format off
  s << C,  0,  A,  B,
       0,  C,  B, -A,
       A,  B,  C,  0,
       B, -A,  0,  C;
  // clang-format on
  return {std::move(s), Vec::Zero(4)};
}

GaussianState apply(const SymplecticOp& op, const GaussianState& state) {
  if (op.num_modes() != state.num_modes()) {
    throw std::invalid_argument(fmt::format("op acts on {} modes, state has {}", op.num_modes(), state.num_modes()));
  }
  Mat cov = op.S * state.cov() * op.S.transpose();
  // Re-symmetrize: the product is symmetric only up to rounding.
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {op.S * state.mean() + op.shift, std::move(cov)};
}

SymplecticOp compose(const SymplecticOp& second, const SymplecticOp& first) {
  if (second.num_modes() != first.num_modes()) {
    throw std::invalid_argument(
        fmt::format("cannot compose ops on {} and {} modes", second.num_modes(), first.num_modes()));
  }
  return {second.S * first.S, second.S * first.shift + second.shift};
}

SymplecticOp embed(const SymplecticOp& op, std::span<const int> target_modes, int n_modes) {
  require_modes(n_modes);
  const int k = op.num_modes();
  if (static_cast<int>(target_modes.size()) != k) {
    throw std::invalid_argument(
        fmt::format("embedding a {}-mode op needs {} target modes, got {}", k, k, target_modes.size()));
  }
  for (std::size_t i = 0; i < target_modes.size(); ++i) {
    require_mode_index(target_modes[i], n_modes);
    for (std::size_t j = 0; j < i; ++j) {
      if (target_modes[i] == target_modes[j]) {
        throw std::invalid_argument(fmt::format("duplicate target mode {}", target_modes[i]));
      }
    }
  }
  SymplecticOp out = SymplecticOp::identity(n_modes);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out.S.block<2, 2>(2 * target_modes[a], 2 * target_modes[b]) = op.S.block<2, 2>(2 * a, 2 * b);
    }
    out.shift.segment<2>(2 * target_modes[a]) = op.shift.segment<2>(2 * a);
  }
  return out;
}

double wigner_at(const GaussianState& state, const Vec& point) {
  if (point.size() != state.mean().size()) {
    throw std::invalid_argument(
        fmt::format("phase-space point has length {}, expected {}", point.size(), state.mean().size()));
  }
  Eigen::LDLT<Mat> ldlt(state.cov());
  const double det = state.cov().determinant();
  if (ldlt.info() != Eigen::Success || !(det > 0.0)) {
    throw std::invalid_argument("Wigner function needs an invertible covariance matrix");
  }
  const Vec diff = point - state.mean();
  const double q = diff.dot(ldlt.solve(diff));
  const int n = state.num_modes();
  return std::exp(-0.5 * q) / (std::pow(2.0 * std::numbers::pi, n) * std::sqrt(det));
}

}  // namespace cvb
