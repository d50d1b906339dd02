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

namespace cvb {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(ChargingConfig, Validation) {
  EXPECT_THROW(ChargingConfig(ChargerKind::LocalSqueeze, {0.1}, {0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(ChargingConfig(ChargerKind::LocalSqueeze, {}, {}), std::invalid_argument);
  EXPECT_THROW(ChargingConfig(ChargerKind::LocalDisplace, {-1.0}, {0.0}), std::invalid_argument);
  EXPECT_THROW(ChargingConfig(ChargerKind::GlobalTwoModeSqueeze, {0.1, 0.2}, {0.0, 0.0}), std::invalid_argument);
}

TEST(ChargingConfig, PhasesReduced) {
  const auto c = ChargingConfig::local_squeeze({0.2}, {-kPi / 2});
  EXPECT_NEAR(c.phases()[0], 1.5 * kPi, 1e-15);
}

TEST(ChargingConfig, KindNames) {
  for (auto k : {ChargerKind::LocalSqueeze, ChargerKind::LocalDisplace, ChargerKind::GlobalTwoModeSqueeze}) {
    EXPECT_EQ(charger_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(charger_kind_from_string("laser"), std::invalid_argument);
}

TEST(Evaluate, ZeroStrengthChangesNothing) {
  const GaussianState s = two_mode_family(0.8, 0.3);
  const MeritReport m = evaluate(s, ChargingConfig::local_squeeze({0, 0}, {0.4, 1.0}));
  EXPECT_NEAR(m.delta_sigma, 0.0, 1e-12);
  EXPECT_NEAR(m.work_fluctuation, 0.0, 1e-6);  // sqrt of a roundoff-level difference
  EXPECT_NEAR(m.dE_total, 0.0, 1e-14);
}

TEST(Evaluate, DisplacedSeparablePair) {
  const GaussianState s = n_mode_separable(1.0, 2);
  const double a = std::sqrt(5.0);
  const MeritReport m = evaluate(s, ChargingConfig::local_displace({a, a}, {kPi / 2, kPi / 2}));
  EXPECT_NEAR(m.delta_sigma, std::sqrt(13.154117 + 1.353353) - std::sqrt(13.154117), 1e-6);
  EXPECT_NEAR(m.delta_sigma, 0.182006779, 1e-9);
  EXPECT_NEAR(m.work_fluctuation, std::sqrt(10.0 * std::exp(-2.0)), 1e-12);
  EXPECT_NEAR(m.work_fluctuation, 1.163336938, 1e-9);
  EXPECT_NEAR(m.cov, m.V0, 1e-12);
}

TEST(Evaluate, GlobalSqueezerSplitsEnergyEqually) {
  const double r = 0.7;
  const double d = 0.4;
  const MeritReport m = evaluate(n_mode_separable(r, 2), ChargingConfig::global_squeeze(d, 1.1));
  EXPECT_NEAR(m.dE_total, cf::global_two_mode_squeeze_dE(r, d), 1e-12);
  EXPECT_NEAR(m.dE_per_mode[0], m.dE_per_mode[1], 1e-12);
}

TEST(DeltaEPerMode, Displacement) {
  const GaussianState s = three_mode_family(0.6, 0.3, 0.8);
  const auto dE = delta_e_per_mode(s, ChargingConfig::local_displace({1.0, 0.5, 2.0}, {0.3, 2.0, 4.0}));
  EXPECT_NEAR(dE[0], 1.0, 1e-12);
  EXPECT_NEAR(dE[1], 0.25, 1e-12);
  EXPECT_NEAR(dE[2], 4.0, 1e-12);
  for (double v : delta_e_per_mode(s, ChargingConfig::local_squeeze({0, 0, 0}, {0, 0, 0}))) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(DeltaEPerMode, MatchesClosedForms) {
  const double d[] = {0.3, 0.7};
  const double t[] = {0.4, 2.2};
  const auto f = cf::two_mode_squeeze(0.9, 0.35, d[0], t[0], d[1], t[1]);
  const auto dE =
      delta_e_per_mode(two_mode_family(0.9, 0.35), ChargingConfig::local_squeeze({d[0], d[1]}, {t[0], t[1]}));
  EXPECT_NEAR(dE[0], f.dE1, 1e-12);
  EXPECT_NEAR(dE[1], f.dE2, 1e-12);
}

TEST(Evaluate, RejectsModeMismatch) {
  EXPECT_THROW(evaluate(vacuum(3), ChargingConfig::local_squeeze({0.1, 0.1}, {0, 0})), std::invalid_argument);
}

TEST(Property, ReportInvariants) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const GaussianState s = three_mode_family(u(rng), u(rng), u(rng));
    const bool disp = i % 2 == 1;
    const std::vector<double> st = {u(rng), u(rng), u(rng)};
    const std::vector<double> ph = {2 * kPi * u(rng), 2 * kPi * u(rng), 2 * kPi * u(rng)};
    const MeritReport m =
        evaluate(s, disp ? ChargingConfig::local_displace(st, ph) : ChargingConfig::local_squeeze(st, ph));
    EXPECT_NEAR(m.dE_total, m.dE_per_mode[0] + m.dE_per_mode[1] + m.dE_per_mode[2], 1e-10);
    EXPECT_GE(m.V0, 0.0);
    EXPECT_GE(m.V1, 0.0);
    EXPECT_GE(m.work_fluctuation, 0.0);
    if (disp) {
      EXPECT_GE(m.delta_sigma, 0.0);
    }
  }
}

// At a common phase pi/2 only the total displaced energy matters.
TEST(Property, DisplacementRedistributionInvariance) {
  const GaussianState s = n_mode_separable(0.8, 3);
  const double total = 6.0;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  double lo = 1e300, hi = -1e300, wlo = 1e300, whi = -1e300;
  for (int i = 0; i < 20; ++i) {
    std::vector<double> w = {u(rng), u(rng), u(rng)};
    const double sum = w[0] + w[1] + w[2];
    std::vector<double> amps;
    for (double x : w) amps.push_back(std::sqrt(total * x / sum));
    const MeritReport m = evaluate(s, ChargingConfig::local_displace(amps, {kPi / 2, kPi / 2, kPi / 2}));
    lo = std::min(lo, m.delta_sigma);
    hi = std::max(hi, m.delta_sigma);
    wlo = std::min(wlo, m.work_fluctuation);
    whi = std::max(whi, m.work_fluctuation);
  }
  EXPECT_LT(hi - lo, 1e-10);
  EXPECT_LT(whi - wlo, 1e-10);
}

}  // namespace
}  // namespace cvb
