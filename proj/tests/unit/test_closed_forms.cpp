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

#include "cvb/closed_forms.hpp"
#include "cvb/merit.hpp"
#include "cvb/observables.hpp"

namespace cvb {
namespace {

constexpr double kPi = std::numbers::pi;

double sh2(double r) { return std::pow(std::sinh(r), 2); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct EngineRun {
  std::vector<double> dE;
  double anticomm;
};

EngineRun engine(const GaussianState& s, const SymplecticOp& op) {
  const int n = s.num_modes();
  const GaussianState s1 = apply(op, s);
  EngineRun out;
  for (int j = 0; j < n; ++j) out.dE.push_back(mean(number_op(j, n), s1) - mean(number_op(j, n), s));
  const QuadraticObservable h = unit_hamiltonian(n);
  out.anticomm = anticommutator_mean(pullback(h, op), h, s);
  return out;
}

SymplecticOp local_squeezers(std::span<const double> d, std::span<const double> t) {
  const int n = static_cast<int>(d.size());
  SymplecticOp op = SymplecticOp::identity(n);
  for (int j = 0; j < n; ++j) op = compose(squeezer(d[j], t[j], j, n), op);
  return op;
}

SymplecticOp local_displacers(std::span<const double> a, std::span<const double> p) {
  const int n = static_cast<int>(a.size());
  SymplecticOp op = SymplecticOp::identity(n);
  for (int j = 0; j < n; ++j) op = compose(displacer(a[j], p[j], j, n), op);
  return op;
}

TEST(TwoModeSqueezeForm, ZeroCharge) {
  const double r = 0.7;
  const auto f = cf::two_mode_squeeze(r, 0.3, 0.0, 0.0, 0.0, 0.0);
  EXPECT_EQ(f.dE1, 0.0);
  EXPECT_EQ(f.dE2, 0.0);
  const GaussianState s = two_mode_family(r, 0.3);
  const QuadraticObservable h = unit_hamiltonian(2);
  const double e0 = mean(h, s);
  EXPECT_NEAR(f.anticomm, 2.0 * (variance(h, s) + e0 * e0), 1e-12);
}

TEST(TwoModeSqueezeForm, BalancedSplitIsPhaseFree) {
  for (double theta : {0.0, 1.0, 2.5}) {
    EXPECT_NEAR(cf::two_mode_squeeze(1.0, 0.5, 0.3, theta, 0.0, 0.0).dE1, 0.348878, 5e-7);
  }
}

TEST(TwoModeSqueezeForm, EnergyCanDecrease) {
  EXPECT_NEAR(cf::two_mode_squeeze(1.0, 0.0, 0.3, 0.0, 0.0, 0.0).dE1, -0.8056486128452454, 1e-12);
}

TEST(TwoModeDispForm, Baselines) {
  const double r = 0.9;
  EXPECT_NEAR(cf::two_mode_disp(r, 0.4, 0, 0, 0, 0).anticomm, 8 * sh2(r) * std::cosh(2 * r), 1e-12);
  EXPECT_NEAR(cf::two_mode_disp(1.0, 0.2, 1, 0, 1, 0).anticomm, 52.61647, 5e-5);
  EXPECT_EQ(cf::two_mode_disp(0.0, 0.2, 1, 0, 1, 0).anticomm, 0.0);
}

TEST(ThreeModeSqueezeForm, ZeroAndThirdMode) {
  const double zero[] = {0, 0, 0};
  const auto z = cf::three_mode_squeeze(0.8, 0.2, 0.6, zero, zero);
  for (double v : z) EXPECT_EQ(v, 0.0);
  const double d[] = {0, 0, 0.2};
  const double expect = 0.25 * std::exp(-2.0) *
                        ((std::exp(4.0) - 1) * std::sinh(0.4) * 0.6 + 2 * (std::exp(4.0) + 1) * sh2(0.2));
  EXPECT_NEAR(cf::three_mode_squeeze(1.0, 0.4, 0.5, d, zero)[2], expect, 1e-12);
}

TEST(ThreeModeDispForm, Baselines) {
  const double zero[] = {0, 0, 0};
  const double r = 0.6;
  EXPECT_NEAR(cf::three_mode_disp(r, 0.3, 0.3, zero, zero).anticomm, 3 * (5 * std::cosh(2 * r) - 1) * sh2(r), 1e-12);
  const double ones[] = {1, 1, 1};
  EXPECT_NEAR(cf::three_mode_disp(1.0, 0.5, 0.5, ones, zero).anticomm, 98.656, 5e-4);
  EXPECT_EQ(cf::three_mode_disp(0.0, 0.5, 0.5, ones, zero).anticomm, 0.0);
}

TEST(NModeForms, SqueezeLimits) {
  EXPECT_EQ(cf::nmode_squeeze_dE(0.8, 0.0, 1.0), 0.0);
  EXPECT_NEAR(cf::nmode_squeeze_N2(1.0, 0.0, 0.3), 8.484489467964, 1e-11);
  EXPECT_NEAR(cf::nmode_squeeze_N2(1.0, 0.0, 0.3),
              2 * sh2(1.0) * std::pow(std::cosh(1.0), 2) + std::pow(sh2(1.0), 2), 1e-12);
  EXPECT_NEAR(cf::nmode_squeeze_dE(0.0, 0.7, 2.0), sh2(0.7), 1e-14);
  const double zero[] = {0, 0, 0, 0};
  const double e0 = cf::nmode_energy(0.5, 4);
  const double h2 = cf::nmode_energy_sq(0.5, 4);
  EXPECT_NEAR(cf::nmode_squeeze_anticomm(0.5, 4, zero, zero), 2 * h2, 1e-12);
  EXPECT_NEAR(h2 - e0 * e0, cf::nmode_variance(0.5, 4), 1e-12);
}

TEST(NModeForms, DisplacementMoments) {
  EXPECT_NEAR(cf::nmode_disp_moments(0.7, 0.0, 1.0).N1, sh2(0.7), 1e-14);
  const auto m = cf::nmode_disp_moments(1.0, 1.0, kPi / 2);
  EXPECT_NEAR(m.N2 - m.N1 * m.N1, 6.712393, 5e-7);
  const double zero[] = {0, 0, 0};
  EXPECT_NEAR(cf::nmode_disp_anticomm(0.4, 3, zero), 2 * cf::nmode_energy_sq(0.4, 3), 1e-12);
}

TEST(NModeForms, QuotedVarianceIsHalfTheDerivedOne) {
  for (double r : {0.3, 1.0}) {
    EXPECT_NEAR(cf::nmode_variance(r, 5), 2 * cf::nmode_variance_as_quoted(r, 5), 1e-12);
    EXPECT_NEAR(cf::nmode_variance(r, 5), variance(unit_hamiltonian(5), n_mode_separable(r, 5)), 1e-11);
  }
}

TEST(Inversion, KnownValues) {
  EXPECT_EQ(cf::invert_energy_to_squeeze(1.0, 0.4, 0.0), 0.0);
  EXPECT_NEAR(cf::invert_energy_to_squeeze(1.0, kPi / 2, 2.5), 0.7444718923558, 1e-12);
  for (double dE : {0.1, 1.0, 7.0}) {
    EXPECT_NEAR(cf::invert_energy_to_squeeze(0.0, 1.2, dE), std::asinh(std::sqrt(dE)), 1e-12);
  }
  EXPECT_THROW(cf::invert_energy_to_squeeze(1.0, 0.0, -1.0), std::domain_error);
}

TEST(Inversion, RoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double r = 1.2 * u(rng);
    const double theta = 2 * kPi * u(rng);
    const double dE = 30 * u(rng);
    const double d = cf::invert_energy_to_squeeze(r, theta, dE);
    EXPECT_NEAR(cf::nmode_squeeze_dE(r, d, theta), dE, 1e-9) << r << " " << theta << " " << dE;
  }
}

TEST(GlobalSqueezeForm, Values) {
  EXPECT_EQ(cf::global_two_mode_squeeze_dE(1.0, 0.0), 0.0);
  EXPECT_NEAR(cf::global_two_mode_squeeze_dE(1.0, 0.5), 2.043175624212873, 1e-12);
  EXPECT_NEAR(cf::global_two_mode_squeeze_dE(0.0, 0.8), 2 * sh2(0.8), 1e-14);
}

// Every closed form against the engine on random points.
TEST(Property, ClosedFormsMatchEngine) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double r = u(rng);
    const double t1 = u(rng);
    const double t2 = u(rng);
    const double d[] = {u(rng), u(rng), u(rng)};
    const double th[] = {2 * kPi * u(rng), 2 * kPi * u(rng), 2 * kPi * u(rng)};
    const double a[] = {3 * u(rng), 3 * u(rng), 3 * u(rng)};

    const auto sq2 = cf::two_mode_squeeze(r, t1, d[0], th[0], d[1], th[1]);
    const auto e2 = engine(two_mode_family(r, t1), local_squeezers(std::span(d, 2), std::span(th, 2)));
    EXPECT_NEAR(sq2.dE1, e2.dE[0], 1e-9 * std::max(1.0, std::abs(e2.dE[0])));
    EXPECT_NEAR(sq2.dE2, e2.dE[1], 1e-9 * std::max(1.0, std::abs(e2.dE[1])));
    EXPECT_LT(rel(sq2.anticomm, e2.anticomm), 1e-9);

    const auto ds2 = cf::two_mode_disp(r, t1, a[0], th[0], a[1], th[1]);
    const auto f2 = engine(two_mode_family(r, t1), local_displacers(std::span(a, 2), std::span(th, 2)));
    EXPECT_LT(rel(ds2.dE_total, f2.dE[0] + f2.dE[1]), 1e-9);
    EXPECT_LT(rel(ds2.anticomm, f2.anticomm), 1e-9);

    const auto sq3 = cf::three_mode_squeeze(r, t1, t2, d, th);
    const auto e3 = engine(three_mode_family(r, t1, t2), local_squeezers(d, th));
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(sq3[j], e3.dE[j], 1e-9 * std::max(1.0, std::abs(e3.dE[j])));

    const auto ds3 = cf::three_mode_disp(r, t1, t2, a, th);
    const auto f3 = engine(three_mode_family(r, t1, t2), local_displacers(a, th));
    EXPECT_LT(rel(ds3.dE_total, f3.dE[0] + f3.dE[1] + f3.dE[2]), 1e-9);
    EXPECT_LT(rel(ds3.anticomm, f3.anticomm), 1e-9);

    const auto en = engine(n_mode_separable(r, 3), local_squeezers(d, th));
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(cf::nmode_squeeze_dE(r, d[j], th[j]), en.dE[j], 1e-9 * std::max(1.0, std::abs(en.dE[j])));
    }
    EXPECT_LT(rel(cf::nmode_squeeze_anticomm(r, 3, d, th), en.anticomm), 1e-9);
    const auto fn = engine(n_mode_separable(r, 3), local_displacers(a, th));
    EXPECT_LT(rel(cf::nmode_disp_anticomm(r, 3, a), fn.anticomm), 1e-9);
  }
}

TEST(Property, AssembledMeritMatchesEvaluate) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double r = u(rng);
    const std::vector<double> d = {u(rng), u(rng), u(rng), u(rng)};
    const std::vector<double> th = {2 * kPi * u(rng), 2 * kPi * u(rng), 2 * kPi * u(rng), 2 * kPi * u(rng)};
    const std::vector<double> a = {3 * u(rng), 3 * u(rng), 3 * u(rng), 3 * u(rng)};
    const GaussianState s = n_mode_separable(r, 4);
    const auto ms = cf::nmode_squeeze_merit(r, d, th);
    const auto es = evaluate(s, ChargingConfig::local_squeeze(d, th));
    EXPECT_NEAR(ms.delta_sigma, es.delta_sigma, 1e-9 * std::max(1.0, std::abs(es.delta_sigma)));
    EXPECT_LT(rel(ms.work_fluctuation, es.work_fluctuation), 1e-9);
    const auto md = cf::nmode_disp_merit(r, a, th);
    const auto ed = evaluate(s, ChargingConfig::local_displace(a, th));
    EXPECT_NEAR(md.delta_sigma, ed.delta_sigma, 1e-9 * std::max(1.0, std::abs(ed.delta_sigma)));
    EXPECT_LT(rel(md.work_fluctuation, ed.work_fluctuation), 1e-9);
  }
}

}  // namespace
}  // namespace cvb
