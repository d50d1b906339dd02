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

#include <atomic>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cvb/optimize.hpp"

namespace cvb {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double x) {
  x = std::fmod(x, 2 * kPi);
  return x < 0 ? x + 2 * kPi : x;
}

// Distance of an angle from a target, modulo 2 pi.
double angle_gap(double a, double b) {
  const double d = wrap(a - b);
  return std::min(d, 2 * kPi - d);
}

TEST(StrengthForEnergy, Values) {
  EXPECT_NEAR(strength_for_energy(ChargerKind::LocalSqueeze, 1.0, kPi / 2, 2.5), 0.7444718923558, 1e-12);
  EXPECT_NEAR(strength_for_energy(ChargerKind::LocalDisplace, 0.7, 1.3, 5.0), std::sqrt(5.0), 1e-14);
  EXPECT_EQ(strength_for_energy(ChargerKind::LocalSqueeze, 1.0, 0.2, 0.0), 0.0);
  EXPECT_THROW(strength_for_energy(ChargerKind::LocalSqueeze, 1.0, 0.2, -0.1), std::domain_error);
}

TEST(StrengthForEnergy, ForwardReproducesOnEntangledStates) {
  const GaussianState s = three_mode_family(0.8, 0.4, 0.7);
  for (auto kind : {ChargerKind::LocalSqueeze, ChargerKind::LocalDisplace}) {
    for (int mode = 0; mode < 3; ++mode) {
      for (double nu : {0.0, 1.0, 4.0}) {
        const double d = strength_for_energy(s, kind, mode, nu, 3.0);
        std::vector<double> st(3, 0.0), ph(3, 0.0);
        st[static_cast<std::size_t>(mode)] = d;
        ph[static_cast<std::size_t>(mode)] = nu;
        const auto dE = delta_e_per_mode(s, ChargingConfig(kind, st, ph));
        EXPECT_NEAR(dE[static_cast<std::size_t>(mode)], 3.0, 1e-9);
      }
    }
  }
}

TEST(Names, RoundTrip) {
  for (auto t : {Target::DeltaSigma, Target::WorkFluctuation}) EXPECT_EQ(target_from_string(to_string(t)), t);
  for (auto p : {SplitPolicy::Equal, SplitPolicy::Symmetric, SplitPolicy::Free}) {
    EXPECT_EQ(split_policy_from_string(to_string(p)), p);
  }
}

TEST(Minimize, TwoModeSqueezeFreeSplit) {
  const OptProblem p{BatterySpec::two_mode(1.0, 0.3), ChargerKind::LocalSqueeze, 10.0, Target::DeltaSigma,
                     SplitPolicy::Free};
  const OptResult res = minimize(p);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.value, 10.098955787909, 1e-9);
  EXPECT_NEAR(res.value, res.equal_split_value, 1e-8);
  EXPECT_NEAR(res.splits[0], 0.5, 1e-4);
  EXPECT_LT(angle_gap(res.phases[0] + res.phases[1], kPi), 1e-4);
}

TEST(Minimize, TwoModeSqueezeIsTauFlat) {
  double lo = 1e300, hi = -1e300;
  for (double tau : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const OptProblem p{BatterySpec::two_mode(1.0, tau), ChargerKind::LocalSqueeze, 10.0, Target::DeltaSigma,
                       SplitPolicy::Equal};
    const double v = minimize(p).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_LT(hi - lo, 1e-6);
}

TEST(Minimize, ThreeModeSqueezeOptimum) {
  const OptProblem p{BatterySpec::three_mode(0.5, 0.4, 0.6), ChargerKind::LocalSqueeze, 15.0, Target::DeltaSigma,
                     SplitPolicy::Free};
  const OptResult res = minimize(p);
  EXPECT_NEAR(res.value, 12.644856218865, 1e-9);
  for (double k : res.splits) EXPECT_NEAR(k, 1.0 / 3.0, 1e-4);
  const double third[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const double half_pi[] = {kPi / 2, kPi / 2, kPi / 2};
  EXPECT_NEAR(objective(p, third, half_pi), res.value, 1e-8);
}

TEST(Minimize, NModeWorkFluctuationAtZeroPhase) {
  const OptProblem p{BatterySpec::separable(1.0, 6), ChargerKind::LocalSqueeze, 5.0, Target::WorkFluctuation,
                     SplitPolicy::Symmetric};
  const OptResult res = minimize(p);
  const std::vector<double> eq(6, 1.0 / 6);
  const std::vector<double> zero(6, 0.0);
  EXPECT_NEAR(objective(p, eq, zero), res.value, 1e-8);
}

TEST(Minimize, NModeDeltaSigmaValues) {
  const std::pair<int, double> expect[] = {{2, 5.078084929652}, {10, 2.301267340268}};
  for (const auto& [n, v] : expect) {
    const OptProblem p{BatterySpec::separable(1.0, n), ChargerKind::LocalSqueeze, 5.0, Target::DeltaSigma,
                       SplitPolicy::Symmetric};
    EXPECT_NEAR(minimize(p).value, v, 1e-9) << n;
  }
}

TEST(Minimize, DeterministicAndRotationInvariant) {
  const OptProblem p{BatterySpec::two_mode(0.5, 0.4), ChargerKind::LocalDisplace, 20.0, Target::WorkFluctuation,
                     SplitPolicy::Equal};
  const OptResult a = minimize(p);
  const OptResult b = minimize(p);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.phases, b.phases);
  OptSettings rotated;
  rotated.grid_rotation = 0.37;
  EXPECT_NEAR(minimize(p, rotated).value, a.value, 1e-8);
}

TEST(Minimize, FreeDisplacementReportsDegeneracy) {
  const OptProblem p{BatterySpec::separable(0.8, 3), ChargerKind::LocalDisplace, 6.0, Target::DeltaSigma,
                     SplitPolicy::Free};
  const OptResult res = minimize(p);
  EXPECT_NEAR(res.value, res.equal_split_value, 1e-8);
}

TEST(Stationarity, PhaseIndependenceCases) {
  // Equal-split N-mode squeezing: charging precision does not depend on the angles.
  const OptProblem nm{BatterySpec::separable(1.0, 4), ChargerKind::LocalSqueeze, 5.0, Target::DeltaSigma,
                      SplitPolicy::Equal};
  const std::vector<double> eq(4, 0.25);
  EXPECT_LT(stationarity_check(nm, eq, std::vector<double>{0.3, 1.9, 4.0, 5.5}), 1e-8);
  // Product two-mode state.
  const OptProblem tm{BatterySpec::two_mode(1.0, 0.0), ChargerKind::LocalSqueeze, 10.0, Target::DeltaSigma,
                      SplitPolicy::Equal};
  const double half[] = {0.5, 0.5};
  const double th[] = {0.7, 2.9};
  EXPECT_LT(stationarity_check(tm, half, th), 1e-8);
  // Displacement at pi/2 is a stationary point.
  const OptProblem dp{BatterySpec::separable(1.0, 3), ChargerKind::LocalDisplace, 5.0, Target::DeltaSigma,
                      SplitPolicy::Equal};
  const std::vector<double> third(3, 1.0 / 3);
  EXPECT_LT(stationarity_check(dp, third, std::vector<double>(3, kPi / 2)), 1e-6);
}

TEST(ScalingFit, ExactPowerLaw) {
  const double n[] = {2, 3, 5, 8, 13, 21};
  std::vector<double> v;
  for (double x : n) v.push_back(3.0 * std::pow(x, -0.5));
  const ScalingFit f = scaling_fit(n, v);
  EXPECT_NEAR(f.exponent, -0.5, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(3.0), 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  const double bad[] = {1.0, 0.0, 1.0, 1.0, 1.0, 1.0};
  EXPECT_THROW(scaling_fit(n, bad), std::invalid_argument);
}

TEST(NelderMead, Rosenbrock) {
  const auto f = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  const NelderMeadResult r = nelder_mead(f, {-1.2, 1.0}, 0.5, 1e-14, 1e-10, 20000);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
}

TEST(ParallelFor, VisitsEveryIndexAndPropagatesErrors) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](int i) { hits[static_cast<std::size_t>(i)]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](int i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

}  // namespace
}  // namespace cvb
