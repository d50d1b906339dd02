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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "fock_internal.hpp"

namespace cvb::fock {

namespace {

std::vector<double> unit_if_empty(const std::vector<double>& omegas, int modes) {
  if (omegas.empty()) return std::vector<double>(static_cast<std::size_t>(modes), 1.0);
  if (static_cast<int>(omegas.size()) != modes) {
    throw std::invalid_argument(fmt::format("{} frequencies for {} modes", omegas.size(), modes));
  }
  return omegas;
}

std::vector<double> energy_diagonal(const FockState& s, const std::vector<double>& omegas) {
  const auto w = unit_if_empty(omegas, s.num_modes());
  std::vector<double> e(s.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (int j = 0; j < s.num_modes(); ++j) e[i] += w[static_cast<std::size_t>(j)] * s.digit(i, j);
  }
  return e;
}

void require_mode(const FockState& s, int mode) {
  if (mode < 0 || mode >= s.num_modes()) {
    throw std::invalid_argument(fmt::format("mode {} outside [0, {})", mode, s.num_modes()));
  }
}

void check_charge(const Charge& c, int modes) {
  if (c.strengths.size() != c.phases.size()) throw std::invalid_argument("charge strengths/phases mismatch");
  const std::size_t want = c.kind == ChargeKind::TwoModeSqueeze ? 1 : static_cast<std::size_t>(modes);
  if (c.strengths.size() != want) {
    throw std::invalid_argument(fmt::format("charge has {} strengths, expected {}", c.strengths.size(), want));
  }
  if (c.kind == ChargeKind::TwoModeSqueeze && modes != 2) {
    throw std::invalid_argument("two-mode squeeze charge needs two modes");
  }
}

}  // namespace

double mean_number(const FockState& s, int mode) {
  require_mode(s, mode);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += std::norm(s.amplitudes()[i]) * s.digit(i, mode);
  return acc;
}

double number_sq(const FockState& s, int mode) { return number_cross(s, mode, mode); }

double number_cross(const FockState& s, int j, int k) {
  require_mode(s, j);
  require_mode(s, k);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += std::norm(s.amplitudes()[i]) * static_cast<double>(s.digit(i, j)) * s.digit(i, k);
  }
  return acc;
}

double energy_mean(const FockState& s, const std::vector<double>& omegas) {
  const auto e = energy_diagonal(s, omegas);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += std::norm(s.amplitudes()[i]) * e[i];
  return acc;
}

double energy_sq(const FockState& s, const std::vector<double>& omegas) {
  const auto e = energy_diagonal(s, omegas);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += std::norm(s.amplitudes()[i]) * e[i] * e[i];
  return acc;
}

int Scenario::modes() const {
  switch (prep) {
    case Prep::Separable:
      return n_modes;
    case Prep::TwoModeFamily:
      return 2;
    case Prep::ThreeModeFamily:
      return 3;
  }
  return 0;
}

FockState prepare(const Scenario& sc, int cutoff) {
  const int m = sc.modes();
  FockState s(m, cutoff);
  if (sc.r == 0.0 && sc.prep == Prep::Separable) return s;
  // +r squeezes momentum (theta = 0); -r is the same strength at theta = pi.
  const CMatrix plus = u_squeeze(cutoff, std::abs(sc.r), sc.r >= 0 ? 0.0 : std::numbers::pi);
  const CMatrix minus = u_squeeze(cutoff, std::abs(sc.r), sc.r >= 0 ? std::numbers::pi : 0.0);
  switch (sc.prep) {
    case Prep::Separable:
      for (int j = 0; j < m; ++j) s.apply_local(plus, j);
      break;
    case Prep::TwoModeFamily:
      s.apply_local(plus, 0);
      s.apply_local(minus, 1);
      s.apply_beam_splitter(sc.tau1, 0, 1);
      break;
    case Prep::ThreeModeFamily:
      s.apply_local(plus, 0);
      s.apply_local(minus, 1);
      s.apply_local(plus, 2);
      s.apply_beam_splitter(sc.tau1, 0, 1);
      s.apply_beam_splitter(sc.tau2, 1, 2);
      break;
  }
  return s;
}

void apply_charge(FockState& s, const Charge& c, bool inverse) {
  check_charge(c, s.num_modes());
  const int n = s.cutoff();
  const double flip = inverse ? std::numbers::pi : 0.0;
  switch (c.kind) {
    case ChargeKind::Squeeze:
      for (int j = 0; j < s.num_modes(); ++j) {
        const auto i = static_cast<std::size_t>(j);
        if (c.strengths[i] != 0.0) s.apply_local(u_squeeze(n, c.strengths[i], c.phases[i] + flip), j);
      }
      break;
    case ChargeKind::Displace:
      for (int j = 0; j < s.num_modes(); ++j) {
        const auto i = static_cast<std::size_t>(j);
        if (c.strengths[i] != 0.0) s.apply_local(u_displace(n, c.strengths[i], c.phases[i] + flip), j);
      }
      break;
    case ChargeKind::TwoModeSqueeze:
      s.apply_two_mode_squeeze(c.strengths[0], c.phases[0] + flip, 0, 1);
      break;
  }
}

namespace {

// Applies the charge to `psi1` and returns H' psi0 with H' = U^dag H U built
// as an operator on the retained levels. Each unitary is exponentiated once on
// the padded cutoff; its restriction drives the state and the padded copy
// builds H'.
FockState charge_and_build(const FockState& psi0, FockState& psi1, const Charge& c) {
  const int n = psi0.cutoff();
  const int m = padded_cutoff(n);
  if (c.kind == ChargeKind::TwoModeSqueeze) {
    auto blocks = two_mode_squeeze_blocks_full(n, c.strengths[0], c.phases[0], psi0.occupied_blocks(0, 1, true));
    std::vector<PairBlock> h_blocks = blocks;
    for (auto& b : h_blocks) {
      const int len = b.u.rows();
      CMatrix nu = b.u;
      for (int t = 0; t < len; ++t) {
        const auto [ka, kb] = b.basis[static_cast<std::size_t>(t)];
        for (int j = 0; j < len; ++j) nu(t, j) *= static_cast<double>(ka + kb);
      }
      b.u = b.u.adjoint() * nu;
    }
    psi1.apply_pair_blocks(restrict_blocks(std::move(blocks)), 0, 1);
    FockState out = psi0;
    out.apply_pair_blocks(restrict_blocks(std::move(h_blocks)), 0, 1);
    return out;
  }
  FockState total = psi0;
  total.amplitudes().assign(psi0.size(), cplx{});
  for (int j = 0; j < psi0.num_modes(); ++j) {
    const auto i = static_cast<std::size_t>(j);
    const CMatrix U = c.kind == ChargeKind::Squeeze ? squeeze_unitary_full(m, c.strengths[i], c.phases[i])
                                                    : displace_unitary_full(m, c.strengths[i], c.phases[i]);
    psi1.apply_local(U.block(0, 0, n, n), j);
    CMatrix nu = U;
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) nu(k, l) *= static_cast<double>(k);
    }
    const CMatrix Nj = (U.adjoint() * nu).block(0, 0, n, n);
    FockState term = psi0;
    term.apply_local(Nj, j);
    for (std::size_t k = 0; k < psi0.size(); ++k) total.amplitudes()[k] += term.amplitudes()[k];
  }
  return total;
}

}  // namespace

Moments compute_moments(const Scenario& sc, int cutoff, bool vector_route) {
  check_charge(sc.charge, sc.modes());
  const int modes = sc.modes();
  const FockState psi0 = prepare(sc, cutoff);
  FockState psi1 = psi0;
  const FockState hp_psi = charge_and_build(psi0, psi1, sc.charge);

  Moments mo;
  for (int j = 0; j < modes; ++j) {
    mo.n_initial.push_back(mean_number(psi0, j));
    mo.n_charged.push_back(mean_number(psi1, j));
    mo.n2_charged.push_back(number_sq(psi1, j));
  }
  mo.e0 = energy_mean(psi0);
  mo.e1 = energy_mean(psi1);
  mo.v0 = energy_sq(psi0) - mo.e0 * mo.e0;
  mo.v1 = energy_sq(psi1) - mo.e1 * mo.e1;

  FockState h_psi = psi0;
  h_psi.scale_diagonal(energy_diagonal(psi0, {}));
  mo.anticomm = 2.0 * inner(hp_psi, h_psi).real();

  if (vector_route) {
    // U^dag (H (U psi)) on a wider cutoff, truncated back.
    FockState wide = psi0.with_cutoff(padded_cutoff(cutoff));
    apply_charge(wide, sc.charge);
    wide.scale_diagonal(energy_diagonal(wide, {}));
    apply_charge(wide, sc.charge, /*inverse=*/true);
    mo.anticomm_vector = 2.0 * inner(wide.with_cutoff(cutoff), h_psi).real();
  }

  // <H'> in the initial state is <H> in the charged one.
  mo.cov = 0.5 * mo.anticomm - mo.e1 * mo.e0;
  mo.leakage = std::max(psi0.leakage(), psi1.leakage());
  return mo;
}

namespace {

std::vector<double> flatten(const Moments& m) {
  std::vector<double> v;
  v.insert(v.end(), m.n_initial.begin(), m.n_initial.end());
  v.insert(v.end(), m.n_charged.begin(), m.n_charged.end());
  v.insert(v.end(), m.n2_charged.begin(), m.n2_charged.end());
  for (double x : {m.e0, m.e1, m.v0, m.v1, m.cov, m.anticomm}) v.push_back(x);
  return v;
}

}  // namespace

SweepReport convergence_sweep(const Scenario& sc, int max_cutoff, double rel_tol, double leak_tol) {
  SweepReport rep;
  Moments prev;
  int prev_n = 0;
  for (int n = 8; n <= max_cutoff; n *= 2) {
    Moments cur = compute_moments(sc, n, false);
    rep.tried.push_back(n);
    if (prev_n > 0) {
      const auto a = flatten(prev);
      const auto b = flatten(cur);
      double change = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        change = std::max(change, std::abs(b[i] - a[i]) / std::max(std::abs(b[i]), 1e-6));
      }
      rep.rel_change = change;
      // The coarser cutoff is certified once doubling no longer moves it.
      if (change < rel_tol && prev.leakage < leak_tol) {
        rep.converged = true;
        rep.cutoff = prev_n;
        rep.moments = std::move(prev);
        return rep;
      }
    }
    rep.cutoff = n;
    rep.moments = cur;
    prev = std::move(cur);
    prev_n = n;
  }
  return rep;
}

}  // namespace cvb::fock
