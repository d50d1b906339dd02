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
#include <string_view>
#include <vector>

#include "cvb/gaussian.hpp"
#include "cvb/observables.hpp"

namespace cvb {

enum class ChargerKind { LocalSqueeze, LocalDisplace, GlobalTwoModeSqueeze };

std::string_view to_string(ChargerKind kind);
/// Accepts "squeeze", "displace", "global-squeeze" (and the enum names).
ChargerKind charger_kind_from_string(std::string_view name);

/// Charging unitary parameters. Strengths are delta_j or |alpha_j|; phases are
/// theta_j or phi_j, stored reduced to [0, 2 pi). The global two-mode squeezer
/// carries a single (delta, theta).
class ChargingConfig {
 public:
  ChargingConfig(ChargerKind kind, std::vector<double> strengths, std::vector<double> phases);

  static ChargingConfig local_squeeze(std::vector<double> deltas, std::vector<double> thetas);
  static ChargingConfig local_displace(std::vector<double> amps, std::vector<double> phis);
  static ChargingConfig global_squeeze(double delta, double theta);

  ChargerKind kind() const { return kind_; }
  const std::vector<double>& strengths() const { return strengths_; }
  const std::vector<double>& phases() const { return phases_; }

  /// Phase-space action of the full charging unitary on an n-mode battery.
  SymplecticOp unitary(int n_modes) const;

 private:
  ChargerKind kind_;
  std::vector<double> strengths_;
  std::vector<double> phases_;
};

struct MeritReport {
  std::vector<double> dE_per_mode;
  double dE_total = 0.0;
  double V0 = 0.0;   // energy variance before charging
  double V1 = 0.0;   // energy variance after charging
  double cov = 0.0;  // Cov(H', H) in the initial state
  double delta_sigma = 0.0;
  double work_fluctuation = 0.0;
};

/// Charging precision sqrt(V1) - sqrt(V0) and work fluctuation
/// sqrt(V1 + V0 - 2 Cov) for one charging scenario. Empty omegas means unit
/// frequencies.
MeritReport evaluate(const GaussianState& state, const ChargingConfig& config, std::span<const double> omegas = {});

std::vector<double> delta_e_per_mode(const GaussianState& state, const ChargingConfig& config,
                                     std::span<const double> omegas = {});

}  // namespace cvb
