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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cvb/observables.hpp"

namespace cvb {
namespace {

constexpr double kPi = std::numbers::pi;

double sh2(double r) { return std::pow(std::sinh(r), 2); }
double ch2(double r) { return std::pow(std::cosh(r), 2); }

TEST(NumberOp, Means) {
  EXPECT_NEAR(mean(number_op(0, 1), vacuum(1)), 0.0, 1e-15);
  EXPECT_NEAR(mean(number_op(0, 1), n_mode_separable(0.5, 1)), 0.271540, 5e-7);
  EXPECT_NEAR(mean(number_op(0, 1), apply(displacer(2.0, 1.1, 0, 1), vacuum(1))), 4.0, 1e-13);
}

TEST(NumberOp, RejectsBadMode) { EXPECT_THROW(number_op(2, 2), std::invalid_argument); }

TEST(Hamiltonian, Means) {
  const double unit[] = {1.0, 1.0};
  for (double tau : {0.0, 0.4, 1.0}) EXPECT_NEAR(mean(hamiltonian(unit), two_mode_family(1.0, tau)), 2.762196, 5e-7);
  const double w[] = {2.0, 3.0};
  EXPECT_NEAR(mean(hamiltonian(w), vacuum(2)), 0.0, 1e-15);
  for (int n : {1, 4, 7}) {
    EXPECT_NEAR(mean(unit_hamiltonian(n), n_mode_separable(0.7, n)), n * sh2(0.7), 1e-12);
  }
  EXPECT_NEAR(mean(unit_hamiltonian(3), n_mode_separable(1.0, 3)), 4.143293536625446, 1e-12);
}

TEST(Mean, DisplacedSqueezedNumber) {
  const double r = 0.8;
  const double amp = 1.7;
  const GaussianState s = apply(displacer(amp, 0.4, 0, 1), n_mode_separable(r, 1));
  EXPECT_NEAR(mean(number_op(0, 1), s), sh2(r) + amp * amp, 1e-12);
}

TEST(Mean, ConstantObservable) {
  const QuadraticObservable c(Mat::Zero(2, 2), Vec::Zero(2), 5.0);
  EXPECT_EQ(mean(c, n_mode_separable(0.3, 1)), 5.0);
}

TEST(Covariance, VacuumAndSqueezedVacuum) {
  const QuadraticObservable h = unit_hamiltonian(1);
  EXPECT_NEAR(covariance(h, h, vacuum(1)), 0.0, 1e-15);
  EXPECT_NEAR(variance(h, n_mode_separable(0.5, 1)), 0.690549, 5e-7);
  EXPECT_NEAR(variance(h, n_mode_separable(0.5, 1)), 2 * sh2(0.5) * ch2(0.5), 1e-14);
}

TEST(Covariance, DisplacementPullbackEqualsVariance) {
  const GaussianState s = n_mode_separable(0.9, 1);
  const QuadraticObservable h = unit_hamiltonian(1);
  const QuadraticObservable hp = pullback(h, displacer(1.3, 0.6, 0, 1));
  EXPECT_NEAR(covariance(hp, h, s), variance(h, s), 1e-12);
}

TEST(Covariance, TwoModeFamilyVariance) {
  // 4 sinh^2 r cosh^2 r at r = 0.5 equals sinh^2 1.
  EXPECT_NEAR(variance(unit_hamiltonian(2), two_mode_family(0.5, 0.5)), 1.3810978455418157, 1e-12);
}

TEST(Pullback, IdentityLeavesObservable) {
  const QuadraticObservable h = unit_hamiltonian(2);
  const QuadraticObservable p = pullback(h, SymplecticOp::identity(2));
  EXPECT_TRUE(p.A.isApprox(h.A, 0.0));
  EXPECT_TRUE(p.a.isApprox(h.a, 0.0));
  EXPECT_EQ(p.c, h.c);
}

// <U^dag O U>_rho = <O>_{U rho U^dag} on random ops and states.
TEST(Property, PullbackMeanConsistency) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const GaussianState s = three_mode_family(u(rng), u(rng), u(rng));
    SymplecticOp op = compose(squeezer(u(rng), 2 * kPi * u(rng), trial % 3, 3),
                              displacer(2 * u(rng), 2 * kPi * u(rng), (trial + 1) % 3, 3));
    op = compose(beam_splitter(u(rng), 0, 2, 3), op);
    const double w[] = {1.0, 0.5 + u(rng), 2.0 * u(rng)};
    const QuadraticObservable h = hamiltonian(w);
    worst = std::max(worst, std::abs(mean(pullback(h, op), s) - mean(h, apply(op, s))));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Anticommutator, DisplacedTwoModeFamily) {
  const double r = 1.0;
  for (double tau : {0.0, 0.5, 0.8}) {
    const GaussianState s = two_mode_family(r, tau);
    const SymplecticOp op = compose(displacer(1.0, 0.0, 0, 2), displacer(1.0, 0.0, 1, 2));
    const QuadraticObservable h = unit_hamiltonian(2);
    EXPECT_NEAR(anticommutator_mean(pullback(h, op), h, s), 52.61647, 5e-5) << tau;
  }
  EXPECT_NEAR(anticommutator_mean(unit_hamiltonian(2), unit_hamiltonian(2), vacuum(2)), 0.0, 1e-15);
}

TEST(Anticommutator, DisplacedThreeModeFamily) {
  SymplecticOp op = SymplecticOp::identity(3);
  for (int j = 0; j < 3; ++j) op = compose(displacer(1.0, 0.0, j, 3), op);
  const QuadraticObservable h = unit_hamiltonian(3);
  // Real amplitudes on this family; the phase-free closed form applies.
  const double expect = 3.0 * (6.0 + 5.0 * std::cosh(2.0) - 1.0) * sh2(1.0);
  EXPECT_NEAR(expect, 98.656, 5e-4);
  EXPECT_NEAR(anticommutator_mean(pullback(h, op), h, three_mode_family(1.0, 0.0, 0.0)), expect, 1e-9);
}

}  // namespace
}  // namespace cvb
