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

#include "cvb/merit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace cvb {

namespace {

double reduce_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double v = std::fmod(phase, two_pi);
  if (v < 0.0) v += two_pi;
  // fmod of a value just below 2 pi can round up to exactly 2 pi.
  if (v >= two_pi) v = 0.0;
  return v;
}

std::vector<double> unit_or(std::span<const double> omegas, int n_modes) {
  if (omegas.empty()) {
    return std::vector<double>(static_cast<std::size_t>(n_modes), 1.0);
  }
  if (static_cast<int>(omegas.size()) != n_modes) {
    throw std::invalid_argument(fmt::format("{} frequencies for {} modes", omegas.size(), n_modes));
  }
  return {omegas.begin(), omegas.end()};
}

}  // namespace

std::string_view to_string(ChargerKind kind) {
  switch (kind) {
    case ChargerKind::LocalSqueeze:
      return "squeeze";
    case ChargerKind::LocalDisplace:
      return "displace";
    case ChargerKind::GlobalTwoModeSqueeze:
      return "global-squeeze";
  }
  return "unknown";
}

ChargerKind charger_kind_from_string(std::string_view name) {
  if (name == "squeeze" || name == "LocalSqueeze") return ChargerKind::LocalSqueeze;
  if (name == "displace" || name == "LocalDisplace") return ChargerKind::LocalDisplace;
  if (name == "global-squeeze" || name == "GlobalTwoModeSqueeze") return ChargerKind::GlobalTwoModeSqueeze;
  throw std::invalid_argument(fmt::format("unknown charger kind '{}'", name));
}

ChargingConfig::ChargingConfig(ChargerKind kind, std::vector<double> strengths, std::vector<double> phases)
    : kind_(kind), strengths_(std::move(strengths)), phases_(std::move(phases)) {
  if (strengths_.size() != phases_.size()) {
    throw std::invalid_argument(
        fmt::format("{} strengths but {} phases", strengths_.size(), phases_.size()));
  }
  if (strengths_.empty()) {
    throw std::invalid_argument("charging config needs at least one strength");
  }
  if (kind_ == ChargerKind::GlobalTwoModeSqueeze && strengths_.size() != 1) {
    throw std::invalid_argument("global two-mode squeezer takes exactly one (delta, theta)");
  }
  for (double s : strengths_) {
    if (!(s >= 0.0)) {
      throw std::invalid_argument(fmt::format("charging strengths must be >= 0, got {}", s));
    }
  }
  for (double& p : phases_) p = reduce_phase(p);
}

ChargingConfig ChargingConfig::local_squeeze(std::vector<double> deltas, std::vector<double> thetas) {
  return {ChargerKind::LocalSqueeze, std::move(deltas), std::move(thetas)};
}

ChargingConfig ChargingConfig::local_displace(std::vector<double> amps, std::vector<double> phis) {
  return {ChargerKind::LocalDisplace, std::move(amps), std::move(phis)};
}

ChargingConfig ChargingConfig::global_squeeze(double delta, double theta) {
  return {ChargerKind::GlobalTwoModeSqueeze, {delta}, {theta}};
}

SymplecticOp ChargingConfig::unitary(int n_modes) const {
  if (kind_ == ChargerKind::GlobalTwoModeSqueeze) {
    if (n_modes != 2) {
      throw std::invalid_argument(fmt::format("global two-mode squeezer on a {}-mode battery", n_modes));
    }
    return global_two_mode_squeezer(strengths_[0], phases_[0]);
  }
  if (static_cast<int>(strengths_.size()) != n_modes) {
    throw std::invalid_argument(
        fmt::format("charger configured for {} modes, battery has {}", strengths_.size(), n_modes));
  }
  // Local ops act on disjoint modes, so they can be written straight into one
  // block-diagonal op.
  SymplecticOp total = SymplecticOp::identity(n_modes);
  for (int j = 0; j < n_modes; ++j) {
    const auto& s = strengths_[static_cast<std::size_t>(j)];
    const auto& p = phases_[static_cast<std::size_t>(j)];
    const SymplecticOp local =
        kind_ == ChargerKind::LocalSqueeze ? squeezer(s, p, 0, 1) : displacer(s, p, 0, 1);
    total.S.block<2, 2>(2 * j, 2 * j) = local.S;
    total.shift.segment<2>(2 * j) = local.shift;
  }
  return total;
}

namespace {

// <N_j> of a Gaussian state from its mode block: (Tr block + |d_j|^2 - 1) / 2.
double mode_photons(const GaussianState& s, int j) {
  const Eigen::Matrix2d blk = s.mode_block(j);
  return 0.5 * (blk.trace() + s.mean().segment<2>(2 * j).squaredNorm() - 1.0);
}

std::vector<double> per_mode_gain(const GaussianState& before, const GaussianState& after,
                                  const std::vector<double>& w) {
  std::vector<double> out(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const int m = static_cast<int>(j);
    out[j] = w[j] * (mode_photons(after, m) - mode_photons(before, m));
  }
  return out;
}

}  // namespace

std::vector<double> delta_e_per_mode(const GaussianState& state, const ChargingConfig& config,
                                     std::span<const double> omegas) {
  const auto w = unit_or(omegas, state.num_modes());
  return per_mode_gain(state, apply(config.unitary(state.num_modes()), state), w);
}

MeritReport evaluate(const GaussianState& state, const ChargingConfig& config, std::span<const double> omegas) {
  const int n = state.num_modes();
  const auto w = unit_or(omegas, n);
  const SymplecticOp u = config.unitary(n);
  const QuadraticObservable h = hamiltonian(w);
  const QuadraticObservable h_pulled = pullback(h, u);
  const GaussianState charged = apply(u, state);

  MeritReport rep;
  rep.dE_per_mode = per_mode_gain(state, charged, w);
  for (double e : rep.dE_per_mode) rep.dE_total += e;
  rep.V0 = variance(h, state);
  rep.V1 = variance(h, charged);
  rep.cov = covariance(h_pulled, h, state);
  rep.delta_sigma = std::sqrt(std::max(rep.V1, 0.0)) - std::sqrt(std::max(rep.V0, 0.0));
  // V1 + V0 - 2 Cov is a variance; clamp rounding noise around zero.
  rep.work_fluctuation = std::sqrt(std::max(rep.V1 + rep.V0 - 2.0 * rep.cov, 0.0));
  return rep;
}

}  // namespace cvb
