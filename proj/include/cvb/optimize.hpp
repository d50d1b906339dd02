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

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "cvb/gaussian.hpp"
#include "cvb/merit.hpp"

namespace cvb {

enum class BatteryFamily { Separable, TwoMode, ThreeMode };

struct BatterySpec {
  BatteryFamily family = BatteryFamily::Separable;
  double r = 0.0;
  int n_modes = 2;  // only read for Separable
  double tau1 = 0.0;
  double tau2 = 0.0;

  int modes() const;
  GaussianState build() const;

  static BatterySpec separable(double r, int n_modes);
  static BatterySpec two_mode(double r, double tau);
  static BatterySpec three_mode(double r, double tau1, double tau2);
};

enum class Target { DeltaSigma, WorkFluctuation };

/// Equal: k_j = 1/N, one phase per mode. Symmetric: k_j = 1/N and one common
/// phase for all modes. Free: splits on the simplex jointly with phases.
enum class SplitPolicy { Equal, Symmetric, Free };

std::string_view to_string(Target target);
std::string_view to_string(SplitPolicy policy);
Target target_from_string(std::string_view name);
SplitPolicy split_policy_from_string(std::string_view name);

struct OptProblem {
  BatterySpec battery;
  ChargerKind kind = ChargerKind::LocalSqueeze;
  double total_energy = 0.0;
  Target target = Target::DeltaSigma;
  SplitPolicy policy = SplitPolicy::Equal;
};

struct OptSettings {
  int starts_per_phase = 8;
  int max_starts = 256;         // applied once the battery has more than 3 modes
  int random_split_starts = 32;  // extra simplex starts for the free policy
  double value_tol = 1e-10;
  double param_tol = 1e-8;
  int max_iterations = 20000;
  double grid_rotation = 0.0;  // added to every phase seed
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

struct OptResult {
  std::vector<double> splits;
  std::vector<double> phases;  // reduced to [0, 2 pi)
  double value = 0.0;
  int restarts = 0;
  bool converged = false;
  double stationarity = 0.0;
  // Free policy only: best equal-split value and whether a different split
  // reaches it within 1e-8.
  double equal_split_value = 0.0;
  bool degenerate = false;
};

/// Strength (delta or |alpha|) that deposits dE_mode into a single squeezed
/// vacuum of strength r at phase nu. Throws std::domain_error for dE_mode < 0.
double strength_for_energy(ChargerKind kind, double r, double nu, double dE_mode);

/// Same inversion for one mode of an arbitrary Gaussian state. For the global
/// two-mode squeezer `mode` is ignored and dE is the total gain.
double strength_for_energy(const GaussianState& state, ChargerKind kind, int mode, double nu, double dE);

/// Charging config realizing per-mode energies `splits[j] * total` at the
/// given phases. For the global charger `phases` has one entry and splits are
/// ignored.
ChargingConfig config_for(const GaussianState& state, ChargerKind kind, double total_energy,
                          std::span<const double> splits, std::span<const double> phases);

/// Value of the target at explicit splits and phases.
double objective(const OptProblem& problem, std::span<const double> splits, std::span<const double> phases);

OptResult minimize(const OptProblem& problem, const OptSettings& settings = {});

/// Max central finite-difference gradient component of the objective over the
/// phases (and split logits for the free policy) at the given point.
double stationarity_check(const OptProblem& problem, std::span<const double> splits,
                          std::span<const double> phases);

struct ScalingFit {
  double exponent;
  double intercept;
  double r_squared;
};

/// Least-squares line through (ln n, ln value). Throws on nonpositive values.
ScalingFit scaling_fit(std::span<const double> n_values, std::span<const double> values);

// --- downhill simplex ------------------------------------------------------

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             double step, double value_tol, double param_tol, int max_iterations);

/// Runs fn(i) for i in [0, count) on a small thread pool.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace cvb
