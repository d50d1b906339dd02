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

#include <span>

#include "cvb/gaussian.hpp"

namespace cvb {

/// O = (1/2) R^T A R + a^T R + c, Weyl (symmetric) ordered.
///
/// The photon number of mode j is (x_j^2 + p_j^2 - 1)/2, so a battery
/// Hamiltonian sum_j w_j N_j has A = diag(w_j I_2), a = 0, c = -sum_j w_j / 2.
struct QuadraticObservable {
  Mat A;
  Vec a;
  double c = 0.0;

  QuadraticObservable(Mat quad, Vec lin, double constant);

  int num_modes() const { return static_cast<int>(a.size() / 2); }
};

QuadraticObservable number_op(int mode, int n_modes);

/// sum_j omegas[j] N_j. Zero-point energy is not included.
QuadraticObservable hamiltonian(std::span<const double> omegas);

/// Battery Hamiltonian with unit frequencies.
QuadraticObservable unit_hamiltonian(int n_modes);

double mean(const QuadraticObservable& obs, const GaussianState& state);

/// Symmetrized covariance (1/2)<{O1, O2}> - <O1><O2>:
///   (1/2) Tr[A C B C] + (1/8) Tr[A Omega B Omega] + u_A^T C u_B,  u_X = X d + x.
double covariance(const QuadraticObservable& o1, const QuadraticObservable& o2, const GaussianState& state);

double variance(const QuadraticObservable& obs, const GaussianState& state);

/// <{O1, O2}> = 2 Cov + 2 <O1><O2>.
double anticommutator_mean(const QuadraticObservable& o1, const QuadraticObservable& o2,
                           const GaussianState& state);

/// Heisenberg pullback U^dag O U of an observable under a Gaussian unitary.
/// mean(pullback(O, U), rho) == mean(O, apply(U, rho)).
QuadraticObservable pullback(const QuadraticObservable& obs, const SymplecticOp& op);

}  // namespace cvb
