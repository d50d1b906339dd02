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
#include <numbers>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "cvb/lab.hpp"
#include "cvb/observables.hpp"

namespace cvb::lab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Per-mode-count parameter ranges.
struct Ranges {
  double r_max;
  double delta_max;
  double amp_max;
  int cutoff;
};

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
};

ValidationCase draw_case(Draw& d, int modes, const Ranges& rg, int index) {
  ValidationCase c;
  c.max_cutoff = rg.cutoff;
  const double r = d.uniform(0.05, rg.r_max);
  const bool family = modes > 1 && d.pick(3) != 0;
  if (modes == 2 && family) {
    c.battery = BatterySpec::two_mode(r, d.uniform(0.0, 1.0));
  } else if (modes == 3 && family) {
    c.battery = BatterySpec::three_mode(r, d.uniform(0.0, 1.0), d.uniform(0.0, 1.0));
  } else {
    c.battery = BatterySpec::separable(r, modes);
  }
  const int kinds = modes == 2 ? 3 : 2;
  c.kind = static_cast<ChargerKind>(d.pick(kinds));
  if (c.kind == ChargerKind::GlobalTwoModeSqueeze) {
    // Global squeezing grows both modes at once; keep it inside the 2-mode cap.
    c.battery.r = std::min(c.battery.r, 0.5);
    c.strengths = {d.uniform(0.05, 0.5)};
    c.phases = {d.uniform(0.0, kTwoPi)};
  } else {
    for (int j = 0; j < modes; ++j) {
      c.strengths.push_back(c.kind == ChargerKind::LocalSqueeze ? d.uniform(0.05, rg.delta_max)
                                                                : d.uniform(0.1, rg.amp_max));
      c.phases.push_back(d.uniform(0.0, kTwoPi));
    }
  }
  c.id = fmt::format("m{}-{:03d}-{}", modes, index, to_string(c.kind));
  return c;
}

}  // namespace

std::vector<ValidationCase> random_cases(int count, std::uint64_t seed, int one_mode_cutoff) {
  if (count < 1) throw std::invalid_argument("random_cases needs count >= 1");
  const int n1 = (count * 45 + 99) / 100;
  const int n2 = std::min(count - n1, (count * 35 + 99) / 100);
  const int n3 = count - n1 - n2;
  const Ranges one{1.0, 1.0, 3.0, one_mode_cutoff};
  const Ranges two{0.7, 0.7, 3.0, 256};
  const Ranges three{0.4, 0.4, 1.5, 128};
  Draw d(seed);
  std::vector<ValidationCase> out;
  int index = 0;
  for (int i = 0; i < n1; ++i) out.push_back(draw_case(d, 1, one, index++));
  for (int i = 0; i < n2; ++i) out.push_back(draw_case(d, 2, two, index++));
  for (int i = 0; i < n3; ++i) out.push_back(draw_case(d, 3, three, index++));
  return out;
}

fock::Scenario to_scenario(const ValidationCase& c) {
  fock::Scenario sc;
  sc.id = c.id;
  sc.r = c.battery.r;
  sc.tau1 = c.battery.tau1;
  sc.tau2 = c.battery.tau2;
  switch (c.battery.family) {
    case BatteryFamily::Separable:
      sc.prep = fock::Prep::Separable;
      sc.n_modes = c.battery.n_modes;
      break;
    case BatteryFamily::TwoMode:
      sc.prep = fock::Prep::TwoModeFamily;
      break;
    case BatteryFamily::ThreeMode:
      sc.prep = fock::Prep::ThreeModeFamily;
      break;
  }
  switch (c.kind) {
    case ChargerKind::LocalSqueeze:
      sc.charge.kind = fock::ChargeKind::Squeeze;
      break;
    case ChargerKind::LocalDisplace:
      sc.charge.kind = fock::ChargeKind::Displace;
      break;
    case ChargerKind::GlobalTwoModeSqueeze:
      sc.charge.kind = fock::ChargeKind::TwoModeSqueeze;
      break;
  }
  sc.charge.strengths = c.strengths;
  sc.charge.phases = c.phases;
  return sc;
}

fock::Moments engine_moments(const ValidationCase& c) {
  const GaussianState psi0 = c.battery.build();
  const int n = psi0.num_modes();
  const SymplecticOp u = ChargingConfig(c.kind, c.strengths, c.phases).unitary(n);
  const GaussianState psi1 = apply(u, psi0);
  const QuadraticObservable h = unit_hamiltonian(n);
  const QuadraticObservable h_pulled = pullback(h, u);
  fock::Moments m;
  for (int j = 0; j < n; ++j) {
    const QuadraticObservable nj = number_op(j, n);
    m.n_initial.push_back(mean(nj, psi0));
    const double n1 = mean(nj, psi1);
    m.n_charged.push_back(n1);
    m.n2_charged.push_back(variance(nj, psi1) + n1 * n1);
  }
  m.e0 = mean(h, psi0);
  m.e1 = mean(h, psi1);
  m.v0 = variance(h, psi0);
  m.v1 = variance(h, psi1);
  m.cov = covariance(h_pulled, h, psi0);
  m.anticomm = anticommutator_mean(h_pulled, h, psi0);
  return m;
}

double relative_error(double engine, double oracle) {
  return std::abs(engine - oracle) / std::max(std::abs(oracle), kRelFloor);
}

std::vector<ValidationRow> validate_case(const ValidationCase& c) {
  const fock::Moments e = engine_moments(c);
  const fock::SweepReport rep = fock::convergence_sweep(to_scenario(c), c.max_cutoff);
  const fock::Moments& o = rep.moments;
  std::vector<ValidationRow> rows;
  auto add = [&](std::string quantity, double ev, double ov) {
    rows.push_back({c.id, std::move(quantity), ev, ov, rep.cutoff, relative_error(ev, ov), rep.converged});
  };
  for (std::size_t j = 0; j < e.n_initial.size(); ++j) {
    add(fmt::format("N{}_initial", j), e.n_initial[j], o.n_initial.at(j));
    add(fmt::format("N{}_charged", j), e.n_charged[j], o.n_charged.at(j));
  }
  add("V0", e.v0, o.v0);
  add("V1", e.v1, o.v1);
  add("Cov", e.cov, o.cov);
  add("anticomm", e.anticomm, o.anticomm);
  return rows;
}

std::vector<ValidationRow> validate_cases(const std::vector<ValidationCase>& cases, int threads) {
  std::vector<std::vector<ValidationRow>> per(cases.size());
  parallel_for(static_cast<int>(cases.size()), threads,
               [&](int i) { per[static_cast<std::size_t>(i)] = validate_case(cases[static_cast<std::size_t>(i)]); });
  std::vector<ValidationRow> out;
  for (auto& rows : per) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

Table validation_table(const std::vector<ValidationRow>& rows) {
  Table t;
  t.columns = {"scenario", "quantity", "engine", "oracle", "cutoff", "rel_err", "converged"};
  for (const auto& r : rows) {
    t.add({r.id, r.quantity, r.engine, r.oracle, static_cast<long long>(r.cutoff), r.rel_err, r.converged});
  }
  return t;
}

}  // namespace cvb::lab
