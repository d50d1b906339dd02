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

#include "cvb/observables.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace cvb {

namespace {

void require_same_modes(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(fmt::format("{}: {} modes vs {} modes", what, a, b));
  }
}

}  // namespace

QuadraticObservable::QuadraticObservable(Mat quad, Vec lin, double constant)
    : A(std::move(quad)), a(std::move(lin)), c(constant) {
  const auto n = a.size();
  if (n == 0 || n % 2 != 0 || A.rows() != n || A.cols() != n) {
    throw std::invalid_argument(
        fmt::format("observable shape mismatch: A {}x{}, a {}", A.rows(), A.cols(), n));
  }
  if ((A - A.transpose()).cwiseAbs().maxCoeff() >= 1e-12) {
    throw std::invalid_argument("observable matrix A must be symmetric");
  }
}

QuadraticObservable number_op(int mode, int n_modes) {
  if (n_modes < 1 || mode < 0 || mode >= n_modes) {
    throw std::invalid_argument(fmt::format("mode index {} outside [0, {})", mode, n_modes));
  }
  Mat quad = Mat::Zero(2 * n_modes, 2 * n_modes);
  quad(2 * mode, 2 * mode) = 1.0;
  quad(2 * mode + 1, 2 * mode + 1) = 1.0;
  return {std::move(quad), Vec::Zero(2 * n_modes), -0.5};
}

QuadraticObservable hamiltonian(std::span<const double> omegas) {
  const int n = static_cast<int>(omegas.size());
  if (n < 1) {
    throw std::invalid_argument("hamiltonian needs at least one frequency");
  }
  Mat quad = Mat::Zero(2 * n, 2 * n);
  double c = 0.0;
  for (int j = 0; j < n; ++j) {
    quad(2 * j, 2 * j) = omegas[j];
    quad(2 * j + 1, 2 * j + 1) = omegas[j];
    c -= 0.5 * omegas[j];
  }
  return {std::move(quad), Vec::Zero(2 * n), c};
}

QuadraticObservable unit_hamiltonian(int n_modes) {
  std::vector<double> w(static_cast<std::size_t>(n_modes), 1.0);
  return hamiltonian(w);
}

double mean(const QuadraticObservable& obs, const GaussianState& state) {
  require_same_modes(obs.num_modes(), state.num_modes(), "mean");
  const Vec& d = state.mean();
  return 0.5 * (obs.A.cwiseProduct(state.cov())).sum() + 0.5 * d.dot(obs.A * d) + obs.a.dot(d) + obs.c;
}

double covariance(const QuadraticObservable& o1, const QuadraticObservable& o2, const GaussianState& state) {
  require_same_modes(o1.num_modes(), state.num_modes(), "covariance");
  require_same_modes(o2.num_modes(), state.num_modes(), "covariance");
  const Mat& C = state.cov();
  const Vec& d = state.mean();
  const Mat omega = symplectic_form(state.num_modes());

  const Mat AC = o1.A * C;
  const Mat BC = o2.A * C;
  // Tr[X Y] = sum_ij X_ij Y_ji
  const double quad_term = 0.5 * AC.cwiseProduct(BC.transpose()).sum();
  const Mat AO = o1.A * omega;
  const Mat BO = o2.A * omega;
  const double ordering_term = 0.125 * AO.cwiseProduct(BO.transpose()).sum();
  const Vec u1 = o1.A * d + o1.a;
  const Vec u2 = o2.A * d + o2.a;
  return quad_term + ordering_term + u1.dot(C * u2);
}

double variance(const QuadraticObservable& obs, const GaussianState& state) {
  return covariance(obs, obs, state);
}

double anticommutator_mean(const QuadraticObservable& o1, const QuadraticObservable& o2,
                           const GaussianState& state) {
  return 2.0 * covariance(o1, o2, state) + 2.0 * mean(o1, state) * mean(o2, state);
}

QuadraticObservable pullback(const QuadraticObservable& obs, const SymplecticOp& op) {
  require_same_modes(obs.num_modes(), op.num_modes(), "pullback");
  const Mat& S = op.S;
  const Vec& t = op.shift;
  Mat quad = S.transpose() * obs.A * S;
  quad = 0.5 * (quad + quad.transpose()).eval();
  Vec lin = S.transpose() * (obs.A * t + obs.a);
  const double c = obs.c + 0.5 * t.dot(obs.A * t) + obs.a.dot(t);
  return {std::move(quad), std::move(lin), c};
}

}  // namespace cvb
