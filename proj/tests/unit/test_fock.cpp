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

#include <gtest/gtest.h>

#include "cvb/fock.hpp"
#include "cvb/kernels.hpp"

namespace cvb::fock {
namespace {

constexpr double kPi = std::numbers::pi;

double unitarity_defect(const CMatrix& u, int keep) {
  const CMatrix g = u.adjoint() * u;
  double worst = 0.0;
  for (int i = 0; i < keep; ++i) {
    for (int j = 0; j < keep; ++j) worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  }
  return worst;
}

TEST(Linalg, ExpmOfRotationGenerator) {
  CMatrix a(2, 2);
  a(0, 1) = -1.3;
  a(1, 0) = 1.3;
  const CMatrix e = expm(a);
  EXPECT_NEAR(e(0, 0).real(), std::cos(1.3), 1e-14);
  EXPECT_NEAR(e(1, 0).real(), std::sin(1.3), 1e-14);
}

TEST(Linalg, ExpmOfLargeDiagonal) {
  CMatrix a(2, 2);
  a(0, 0) = 20.0;
  a(1, 1) = cplx(0.0, 3.0);
  const CMatrix e = expm(a);
  EXPECT_NEAR(e(0, 0).real() / std::exp(20.0), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(cplx(0.0, 3.0))), 0.0, 1e-13);
}

TEST(Linalg, SolveRejectsSingular) { EXPECT_THROW(solve(CMatrix(2, 2), CMatrix::identity(2)), std::domain_error); }

TEST(Linalg, LadderEntries) {
  const CMatrix a = build_ladder(5);
  EXPECT_EQ(a(0, 1), cplx(1.0));
  EXPECT_NEAR(a(3, 4).real(), 2.0, 1e-15);
  EXPECT_EQ(a(1, 0), cplx(0.0));
}

TEST(Unitaries, DisplacedVacuum) {
  FockState s(1, 40);
  s.apply_local(u_displace(40, 2.0, 0.0), 0);
  EXPECT_NEAR(mean_number(s, 0), 4.0, 1e-8);
}

TEST(Unitaries, SqueezedVacuum) {
  FockState s(1, 40);
  s.apply_local(u_squeeze(40, 0.5, 0.0), 0);
  const double n = mean_number(s, 0);
  EXPECT_NEAR(n, 0.271540, 5e-7);
  EXPECT_NEAR(number_sq(s, 0) - n * n, 0.690549, 5e-7);
}

TEST(Unitaries, UnitaryOnRetainedBlock) {
  // Low columns stay inside the block when the cutoff is generous.
  const int n = 80;
  EXPECT_LT(unitarity_defect(u_squeeze(n, 0.5, 0.4), 8), 1e-12);
  EXPECT_LT(unitarity_defect(u_displace(n, 1.5, 2.0), 8), 1e-12);
  // Pair unitaries are exact on states with total number below the cutoff.
  const int m = 8;
  const CMatrix bs = u_beam_splitter(m, 0.3);
  const CMatrix gb = bs.adjoint() * bs;
  double worst_bs = 0.0;
  for (int i = 0; i < m * m; ++i) {
    for (int j = 0; j < m * m; ++j) {
      if (i / m + i % m >= m || j / m + j % m >= m) continue;
      worst_bs = std::max(worst_bs, std::abs(gb(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  EXPECT_LT(worst_bs, 1e-12);
  const int w = 40;
  const CMatrix tms = u_two_mode_squeeze(w, 0.3, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    const int col = k * w + k;
    double norm = 0.0;
    for (int i = 0; i < w * w; ++i) norm += std::norm(tms(i, col));
    worst = std::max(worst, std::abs(norm - 1.0));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Unitaries, BeamSplitterConservesTotalNumber) {
  FockState s(2, 40);
  s.apply_local(u_squeeze(40, 0.4, 0.0), 0);
  s.apply_local(u_displace(40, 0.8, 1.0), 1);
  const auto total_moments = [](const FockState& st) {
    const double m = mean_number(st, 0) + mean_number(st, 1);
    const double m2 = number_sq(st, 0) + number_sq(st, 1) + 2 * number_cross(st, 0, 1);
    return std::pair{m, m2 - m * m};
  };
  const auto before = total_moments(s);
  s.apply_beam_splitter(0.37, 0, 1);
  const auto after = total_moments(s);
  EXPECT_NEAR(before.first, after.first, 1e-11);
  EXPECT_NEAR(before.second, after.second, 1e-11);
}

TEST(Scenarios, TwoModeVariance) {
  Scenario sc;
  sc.prep = Prep::TwoModeFamily;
  sc.r = 0.5;
  sc.tau1 = 0.5;
  sc.charge = {ChargeKind::Squeeze, {0.0, 0.0}, {0.0, 0.0}};
  const Moments m = compute_moments(sc, 48);
  EXPECT_NEAR(m.v0 / 1.3810978455418157, 1.0, 1e-6);
}

TEST(Scenarios, DisplacementAnticommutatorBothRoutes) {
  Scenario sc;
  sc.prep = Prep::TwoModeFamily;
  sc.r = 1.0;
  sc.tau1 = 0.5;
  sc.charge = {ChargeKind::Displace, {1.0, 1.0}, {0.0, 0.0}};
  const Moments m = compute_moments(sc, 96, /*vector_route=*/true);
  EXPECT_NEAR(m.anticomm / 52.61647, 1.0, 1e-6);
  EXPECT_NEAR(m.anticomm, m.anticomm_vector, 1e-8 * m.anticomm);
}

TEST(Scenarios, TwoModeSqueezeChargeBothRoutes) {
  Scenario sc;
  sc.prep = Prep::Separable;
  sc.n_modes = 2;
  sc.r = 0.5;
  sc.charge = {ChargeKind::TwoModeSqueeze, {0.5}, {1.0}};
  const Moments m = compute_moments(sc, 48, true);
  EXPECT_NEAR(m.anticomm, 5.7623856699, 1e-8);
  EXPECT_NEAR(m.anticomm, m.anticomm_vector, 1e-8 * m.anticomm);
}

TEST(Scenarios, VacuumMomentsVanish) {
  Scenario sc;
  sc.n_modes = 2;
  sc.charge = {ChargeKind::Squeeze, {0.0, 0.0}, {0.0, 0.0}};
  const Moments m = compute_moments(sc, 8);
  EXPECT_EQ(m.e0, 0.0);
  EXPECT_EQ(m.v0, 0.0);
  EXPECT_EQ(m.anticomm, 0.0);
}

TEST(Scenarios, ChargeShapeChecked) {
  Scenario sc;
  sc.n_modes = 2;
  sc.charge = {ChargeKind::Squeeze, {0.1}, {0.0}};
  EXPECT_THROW(compute_moments(sc, 8), std::invalid_argument);
}

TEST(Sweep, CertifiedCutoffs) {
  const auto sweep = [](double r, double amp) {
    Scenario sc;
    sc.r = r;
    sc.charge = {ChargeKind::Displace, {amp}, {0.3}};
    return convergence_sweep(sc, 512);
  };
  const SweepReport vac = sweep(0.0, 0.0);
  EXPECT_TRUE(vac.converged);
  EXPECT_EQ(vac.cutoff, 8);
  const SweepReport lo = sweep(0.5, 0.0);
  const SweepReport hi = sweep(1.0, 0.0);
  EXPECT_TRUE(lo.converged);
  EXPECT_TRUE(hi.converged);
  EXPECT_LE(lo.cutoff, hi.cutoff);
  const SweepReport coh = sweep(0.0, 3.0);
  EXPECT_TRUE(coh.converged);
  EXPECT_LE(coh.cutoff, 64);
}

TEST(Sweep, BackendsAgree) {
  Scenario sc;
  sc.prep = Prep::ThreeModeFamily;
  sc.r = 0.3;
  sc.tau1 = 0.4;
  sc.tau2 = 0.7;
  sc.charge = {ChargeKind::Squeeze, {0.2, 0.1, 0.3}, {0.5, 1.5, 2.5}};
  const kernels::Backend saved = kernels::active_backend();
  kernels::set_backend(kernels::Backend::Scalar);
  const Moments a = compute_moments(sc, 16);
  kernels::set_backend(saved);
  const Moments b = compute_moments(sc, 16);
  EXPECT_NEAR(a.anticomm, b.anticomm, 1e-12 * a.anticomm);
  EXPECT_NEAR(a.v1, b.v1, 1e-12 * a.v1);
}

}  // namespace
}  // namespace cvb::fock
