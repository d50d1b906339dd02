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

#include "cvb/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "cvb/observables.hpp"

namespace cvb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double phase) {
  double v = std::fmod(phase, kTwoPi);
  if (v < 0.0) v += kTwoPi;
  return v >= kTwoPi ? 0.0 : v;
}

// Larger root of (T+G) z^2 - 2(2 dE + T) z + (T - G) = 0 with z = e^{2 delta},
// from dE = ((cosh 2d - 1) T + sinh 2d G) / 2 for S = cosh d I + sinh d K.
double squeeze_root(double T, double G, double dE) {
  const double k = 2.0 * dE + T;
  const double disc = std::max(k * k - T * T + G * G, 0.0);
  const double z = (k + std::sqrt(disc)) / (T + G);
  return 0.5 * std::log(z);
}

void require_energy(double dE) {
  if (!(dE >= 0.0)) {
    throw std::domain_error(fmt::format("energy per mode must be >= 0, got {}", dE));
  }
}

}  // namespace

// --- battery spec ------------------------------------------------------------

int BatterySpec::modes() const {
  switch (family) {
    case BatteryFamily::Separable:
      return n_modes;
    case BatteryFamily::TwoMode:
      return 2;
    case BatteryFamily::ThreeMode:
      return 3;
  }
  return 0;
}

GaussianState BatterySpec::build() const {
  switch (family) {
    case BatteryFamily::Separable:
      return n_mode_separable(r, n_modes);
    case BatteryFamily::TwoMode:
      return two_mode_family(r, tau1);
    case BatteryFamily::ThreeMode:
      return three_mode_family(r, tau1, tau2);
  }
  throw std::invalid_argument("unknown battery family");
}

BatterySpec BatterySpec::separable(double r, int n_modes) {
  return {BatteryFamily::Separable, r, n_modes, 0.0, 0.0};
}

BatterySpec BatterySpec::two_mode(double r, double tau) { return {BatteryFamily::TwoMode, r, 2, tau, 0.0}; }

BatterySpec BatterySpec::three_mode(double r, double tau1, double tau2) {
  return {BatteryFamily::ThreeMode, r, 3, tau1, tau2};
}

std::string_view to_string(Target target) {
  return target == Target::DeltaSigma ? "delta_sigma" : "work_fluctuation";
}

std::string_view to_string(SplitPolicy policy) {
  switch (policy) {
    case SplitPolicy::Equal:
      return "equal";
    case SplitPolicy::Symmetric:
      return "symmetric";
    case SplitPolicy::Free:
      return "free";
  }
  return "unknown";
}

Target target_from_string(std::string_view name) {
  if (name == "delta_sigma") return Target::DeltaSigma;
  if (name == "work_fluctuation") return Target::WorkFluctuation;
  throw std::invalid_argument(fmt::format("unknown target '{}'", name));
}

SplitPolicy split_policy_from_string(std::string_view name) {
  if (name == "equal") return SplitPolicy::Equal;
  if (name == "symmetric") return SplitPolicy::Symmetric;
  if (name == "free") return SplitPolicy::Free;
  throw std::invalid_argument(fmt::format("unknown split policy '{}'", name));
}

// --- energy inversion --------------------------------------------------------

double strength_for_energy(ChargerKind kind, double r, double nu, double dE_mode) {
  return strength_for_energy(n_mode_separable(r, 1), kind, 0, nu, dE_mode);
}

double strength_for_energy(const GaussianState& state, ChargerKind kind, int mode, double nu, double dE) {
  require_energy(dE);
  if (dE == 0.0) return 0.0;
  const double c = std::cos(nu);
  const double s = std::sin(nu);
  switch (kind) {
    case ChargerKind::LocalSqueeze: {
      const Eigen::Matrix2d blk = state.mode_block(mode);
      const Eigen::Vector2d d = state.mean().segment<2>(2 * mode);
      Eigen::Matrix2d K;
      K << c, s, s, -c;
      const double T = blk.trace() + d.squaredNorm();
      const double G = (K * blk).trace() + d.dot(K * d);
      return squeeze_root(T, G, dE);
    }
    case ChargerKind::LocalDisplace: {
      // dE = |a|^2 + sqrt(2) |a| (d . u), u = (cos nu, sin nu).
      const Eigen::Vector2d d = state.mean().segment<2>(2 * mode);
      const double b = std::numbers::sqrt2 * (d.x() * c + d.y() * s);
      return 0.5 * (-b + std::sqrt(b * b + 4.0 * dE));
    }
    case ChargerKind::GlobalTwoModeSqueeze: {
      if (state.num_modes() != 2) {
        throw std::invalid_argument("global two-mode squeezer needs a two-mode battery");
      }
      Mat K = Mat::Zero(4, 4);
      Eigen::Matrix2d M;
      M << c, s, s, -c;
      K.block<2, 2>(0, 2) = M;
      K.block<2, 2>(2, 0) = M;
      const Vec& d = state.mean();
      const double T = state.cov().trace() + d.squaredNorm();
      const double G = (K * state.cov()).trace() + d.dot(K * d);
      return squeeze_root(T, G, dE);
    }
  }
  throw std::invalid_argument("unknown charger kind");
}

ChargingConfig config_for(const GaussianState& state, ChargerKind kind, double total_energy,
                          std::span<const double> splits, std::span<const double> phases) {
  require_energy(total_energy);
  if (kind == ChargerKind::GlobalTwoModeSqueeze) {
    if (phases.size() != 1) throw std::invalid_argument("global charger takes one phase");
    return ChargingConfig::global_squeeze(strength_for_energy(state, kind, 0, phases[0], total_energy), phases[0]);
  }
  const auto n = static_cast<std::size_t>(state.num_modes());
  if (splits.size() != n || phases.size() != n) {
    throw std::invalid_argument(
        fmt::format("{} splits and {} phases for {} modes", splits.size(), phases.size(), n));
  }
  std::vector<double> strengths(n);
  for (std::size_t j = 0; j < n; ++j) {
    strengths[j] = strength_for_energy(state, kind, static_cast<int>(j), phases[j], splits[j] * total_energy);
  }
  return {kind, std::move(strengths), {phases.begin(), phases.end()}};
}

// --- objective ---------------------------------------------------------------

namespace {

class Objective {
 public:
  explicit Objective(const OptProblem& p)
      : p_(p), state_(p.battery.build()), h_(unit_hamiltonian(state_.num_modes())) {
    if (!(p.total_energy >= 0.0)) {
      throw std::invalid_argument(fmt::format("total energy must be >= 0, got {}", p.total_energy));
    }
    if (p.kind == ChargerKind::GlobalTwoModeSqueeze && state_.num_modes() != 2) {
      throw std::invalid_argument("global two-mode squeezer needs a two-mode battery");
    }
    v0_ = variance(h_, state_);
  }

  int modes() const { return state_.num_modes(); }
  bool global() const { return p_.kind == ChargerKind::GlobalTwoModeSqueeze; }
  const OptProblem& problem() const { return p_; }

  double operator()(std::span<const double> splits, std::span<const double> phases) const {
    const ChargingConfig cfg = config_for(state_, p_.kind, p_.total_energy, splits, phases);
    const SymplecticOp u = cfg.unitary(modes());
    const QuadraticObservable hp = pullback(h_, u);
    const double v1 = variance(hp, state_);
    if (p_.target == Target::DeltaSigma) {
      return std::sqrt(std::max(v1, 0.0)) - std::sqrt(std::max(v0_, 0.0));
    }
    const double cov = covariance(hp, h_, state_);
    return std::sqrt(std::max(v1 + v0_ - 2.0 * cov, 0.0));
  }

 private:
  OptProblem p_;
  GaussianState state_;
  QuadraticObservable h_;
  double v0_ = 0.0;
};

// Variable layout: phase variables first, then N-1 split logits (free policy).
struct Layout {
  int n_modes;
  int n_phase;
  int n_logit;
  bool symmetric;
  bool global;

  static Layout of(const Objective& obj, SplitPolicy policy) {
    Layout l{obj.modes(), 0, 0, false, obj.global()};
    if (l.global) {
      l.n_phase = 1;
    } else if (policy == SplitPolicy::Symmetric) {
      l.n_phase = 1;
      l.symmetric = true;
    } else {
      l.n_phase = l.n_modes;
      if (policy == SplitPolicy::Free) l.n_logit = l.n_modes - 1;
    }
    return l;
  }

  int size() const { return n_phase + n_logit; }

  std::vector<double> splits(std::span<const double> x) const {
    const auto n = static_cast<std::size_t>(n_modes);
    if (n_logit == 0) return std::vector<double>(n, 1.0 / n_modes);
    // Softmax with the last logit pinned at zero.
    std::vector<double> y(n, 0.0);
    for (int j = 0; j < n_logit; ++j) y[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(n_phase + j)];
    const double m = *std::max_element(y.begin(), y.end());
    double sum = 0.0;
    for (double& v : y) {
      v = std::exp(v - m);
      sum += v;
    }
    for (double& v : y) v /= sum;
    return y;
  }

  std::vector<double> phases(std::span<const double> x) const {
    if (global) return {x[0]};
    if (symmetric) return std::vector<double>(static_cast<std::size_t>(n_modes), x[0]);
    return {x.begin(), x.begin() + n_phase};
  }
};

std::vector<std::vector<double>> phase_seeds(int dims, int n_modes, const OptSettings& s) {
  const int levels = std::max(1, s.starts_per_phase);
  auto level_value = [&](int i) { return wrap(s.grid_rotation + kTwoPi * i / levels); };
  double full = std::pow(static_cast<double>(levels), dims);
  std::vector<std::vector<double>> out;
  if (n_modes <= 3 || full <= s.max_starts) {
    const auto count = static_cast<std::size_t>(full);
    out.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::vector<double> x(static_cast<std::size_t>(dims));
      std::size_t rem = idx;
      for (int d = dims - 1; d >= 0; --d) {
        x[static_cast<std::size_t>(d)] = level_value(static_cast<int>(rem % levels));
        rem /= levels;
      }
      out.push_back(std::move(x));
    }
    return out;
  }
  // Latin-hypercube style: every level appears equally often per dimension.
  const int count = std::max(1, s.max_starts);
  std::mt19937_64 rng(s.seed);
  out.assign(static_cast<std::size_t>(count), std::vector<double>(static_cast<std::size_t>(dims)));
  std::vector<int> column(static_cast<std::size_t>(count));
  for (int d = 0; d < dims; ++d) {
    for (int i = 0; i < count; ++i) column[static_cast<std::size_t>(i)] = i % levels;
    std::shuffle(column.begin(), column.end(), rng);
    for (int i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] = level_value(column[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

struct Candidate {
  std::vector<double> splits;
  std::vector<double> phases;
  double value;
  bool converged;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.splits != b.splits) return a.splits < b.splits;
  return a.phases < b.phases;
}

std::vector<double> wrapped(std::vector<double> phases) {
  for (double& p : phases) p = wrap(p);
  return phases;
}

double phase_step(const OptSettings& s) { return std::numbers::pi / std::max(1, s.starts_per_phase); }

std::vector<Candidate> run_starts(const Objective& obj, const Layout& lay, const std::vector<std::vector<double>>& starts,
                                  const OptSettings& s) {
  std::vector<Candidate> out(starts.size());
  auto f = [&](std::span<const double> x) { return obj(lay.splits(x), lay.phases(x)); };
  parallel_for(static_cast<int>(starts.size()), s.threads, [&](int i) {
    const auto& x0 = starts[static_cast<std::size_t>(i)];
    const NelderMeadResult nm = nelder_mead(f, x0, phase_step(s), s.value_tol, s.param_tol, s.max_iterations);
    out[static_cast<std::size_t>(i)] = {lay.splits(nm.x), wrapped(lay.phases(nm.x)), nm.value, nm.converged};
  });
  return out;
}

// All energy in one mode; only that mode's phase matters.
Candidate boundary_candidate(const Objective& obj, int mode, const OptSettings& s) {
  const auto n = static_cast<std::size_t>(obj.modes());
  std::vector<double> k(n, 0.0);
  k[static_cast<std::size_t>(mode)] = 1.0;
  auto phases_for = [&](double nu) {
    std::vector<double> ph(n, 0.0);
    ph[static_cast<std::size_t>(mode)] = nu;
    return ph;
  };
  auto f = [&](std::span<const double> x) { return obj(k, phases_for(x[0])); };
  Candidate best{k, {}, std::numeric_limits<double>::infinity(), false};
  for (int i = 0; i < std::max(1, s.starts_per_phase); ++i) {
    const double nu0 = wrap(s.grid_rotation + kTwoPi * i / std::max(1, s.starts_per_phase));
    const auto nm = nelder_mead(f, {nu0}, phase_step(s), s.value_tol, s.param_tol, s.max_iterations);
    Candidate c{k, wrapped(phases_for(nm.x[0])), nm.value, nm.converged};
    if (better(c, best)) best = c;
  }
  return best;
}

OptResult finish(const Objective& obj, const std::vector<Candidate>& cands, const OptProblem& problem) {
  const Candidate* best = &cands.front();
  for (const auto& c : cands) {
    if (better(c, *best)) best = &c;
  }
  OptResult res;
  res.splits = best->splits;
  res.phases = best->phases;
  res.value = best->value;
  res.restarts = static_cast<int>(cands.size());
  res.converged = best->converged;
  res.stationarity = stationarity_check(problem, res.splits, res.phases);
  (void)obj;
  return res;
}

}  // namespace

double objective(const OptProblem& problem, std::span<const double> splits, std::span<const double> phases) {
  return Objective(problem)(splits, phases);
}

OptResult minimize(const OptProblem& problem, const OptSettings& settings) {
  const Objective obj(problem);
  const Layout lay = Layout::of(obj, problem.policy);
  if (problem.policy != SplitPolicy::Free || lay.n_logit == 0) {
    auto starts = phase_seeds(lay.n_phase, obj.modes(), settings);
    return finish(obj, run_starts(obj, lay, starts, settings), problem);
  }

  OptProblem equal_problem = problem;
  equal_problem.policy = SplitPolicy::Equal;
  const OptResult equal = minimize(equal_problem, settings);

  auto starts = phase_seeds(lay.n_phase, obj.modes(), settings);
  for (auto& x : starts) x.resize(static_cast<std::size_t>(lay.size()), 0.0);
  std::mt19937_64 rng(settings.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> phase_dist(0.0, kTwoPi);
  std::normal_distribution<double> logit_dist(0.0, 1.5);
  for (int i = 0; i < settings.random_split_starts; ++i) {
    std::vector<double> x(static_cast<std::size_t>(lay.size()));
    for (int d = 0; d < lay.n_phase; ++d) x[static_cast<std::size_t>(d)] = phase_dist(rng);
    for (int d = 0; d < lay.n_logit; ++d) x[static_cast<std::size_t>(lay.n_phase + d)] = logit_dist(rng);
    starts.push_back(std::move(x));
  }
  auto cands = run_starts(obj, lay, starts, settings);
  for (int j = 0; j < obj.modes(); ++j) cands.push_back(boundary_candidate(obj, j, settings));
  cands.push_back({equal.splits, equal.phases, equal.value, equal.converged});

  OptResult res = finish(obj, cands, problem);
  res.restarts += equal.restarts;
  res.equal_split_value = equal.value;
  double split_gap = 0.0;
  for (double k : res.splits) split_gap = std::max(split_gap, std::abs(k - 1.0 / obj.modes()));
  res.degenerate = split_gap > 1e-4 && std::abs(res.value - equal.value) <= 1e-8;
  return res;
}

double stationarity_check(const OptProblem& problem, std::span<const double> splits, std::span<const double> phases) {
  const Objective obj(problem);
  std::vector<double> k(splits.begin(), splits.end());
  std::vector<double> ph(phases.begin(), phases.end());
  double worst = 0.0;
  auto probe = [&](double& x, const std::function<double()>& eval) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    const double x0 = x;
    x = x0 + h;
    const double fp = eval();
    x = x0 - h;
    const double fm = eval();
    x = x0;
    worst = std::max(worst, std::abs(fp - fm) / (2.0 * h));
  };

  if (problem.policy == SplitPolicy::Symmetric && !obj.global()) {
    double common = ph.empty() ? 0.0 : ph[0];
    probe(common, [&] { return obj(k, std::vector<double>(ph.size(), common)); });
    return worst;
  }
  for (auto& p : ph) probe(p, [&] { return obj(k, ph); });
  if (problem.policy == SplitPolicy::Free && !obj.global() && k.size() > 1) {
    // Log-ratio coordinates against the last mode, matching the optimizer's
    // softmax parameterization. Skipped at the simplex boundary.
    if (std::all_of(k.begin(), k.end(), [](double v) { return v > 0.0; })) {
      std::vector<double> y(k.size() - 1);
      for (std::size_t j = 0; j + 1 < k.size(); ++j) y[j] = std::log(k[j] / k.back());
      auto eval = [&] {
        std::vector<double> kk(k.size());
        double sum = 1.0;
        for (std::size_t j = 0; j < y.size(); ++j) sum += std::exp(y[j]);
        for (std::size_t j = 0; j < y.size(); ++j) kk[j] = std::exp(y[j]) / sum;
        kk.back() = 1.0 / sum;
        return obj(kk, ph);
      };
      for (auto& v : y) probe(v, eval);
    }
  }
  return worst;
}

ScalingFit scaling_fit(std::span<const double> n_values, std::span<const double> values) {
  if (n_values.size() != values.size() || n_values.size() < 2) {
    throw std::invalid_argument("scaling fit needs two or more matched points");
  }
  const auto m = static_cast<double>(values.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(n_values[i] > 0.0) || !(values[i] > 0.0)) {
      throw std::invalid_argument(fmt::format("scaling fit needs positive data, got ({}, {})", n_values[i], values[i]));
    }
    const double x = std::log(n_values[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("scaling fit needs distinct n values");
  ScalingFit fit{};
  fit.exponent = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.exponent * sx) / m;
  const double mean_y = sy / m;
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double y = std::log(values[i]);
    const double pred = fit.intercept + fit.exponent * std::log(n_values[i]);
    ss_tot += (y - mean_y) * (y - mean_y);
    ss_res += (y - pred) * (y - pred);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

// --- Nelder-Mead ---------------------------------------------------------------

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             double step, double value_tol, double param_tol, int max_iterations) {
  const std::size_t n = x0.size();
  if (n == 0) {
    return {x0, f(x0), 0, true};
  }
  int iterations = 0;
  bool converged = false;
  std::vector<double> best = std::move(x0);
  double best_value = f(best);

  // Restart from the best vertex until a fresh simplex no longer improves:
  // a collapsed simplex can stall short of the minimum.
  for (int round = 0; round < 4 && iterations < max_iterations; ++round) {
    std::vector<std::vector<double>> pts(n + 1, best);
    std::vector<double> vals(n + 1, best_value);
    for (std::size_t i = 0; i < n; ++i) {
      pts[i + 1][i] += step;
      vals[i + 1] = f(pts[i + 1]);
    }
    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    converged = false;
    while (iterations < max_iterations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];

      double diameter = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t d = 0; d < n; ++d) diameter = std::max(diameter, std::abs(pts[i][d] - pts[lo][d]));
      }
      const double spread = vals[hi] - vals[lo];
      if (spread <= value_tol * std::max(1.0, std::abs(vals[lo])) && diameter <= param_tol) {
        converged = true;
        break;
      }
      ++iterations;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == hi) continue;
        for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / static_cast<double>(n);
      }
      for (std::size_t d = 0; d < n; ++d) trial[d] = centroid[d] + (centroid[d] - pts[hi][d]);
      const double fr = f(trial);
      if (fr < vals[lo]) {
        for (std::size_t d = 0; d < n; ++d) trial2[d] = centroid[d] + 2.0 * (centroid[d] - pts[hi][d]);
        const double fe = f(trial2);
        if (fe < fr) {
          pts[hi] = trial2;
          vals[hi] = fe;
        } else {
          pts[hi] = trial;
          vals[hi] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[hi] = trial;
        vals[hi] = fr;
        continue;
      }
      const bool outside = fr < vals[hi];
      for (std::size_t d = 0; d < n; ++d) {
        trial2[d] = outside ? centroid[d] + 0.5 * (trial[d] - centroid[d])
                            : centroid[d] + 0.5 * (pts[hi][d] - centroid[d]);
      }
      const double fc = f(trial2);
      if (fc < (outside ? fr : vals[hi])) {
        pts[hi] = trial2;
        vals[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == lo) continue;
        for (std::size_t d = 0; d < n; ++d) pts[i][d] = pts[lo][d] + 0.5 * (pts[i][d] - pts[lo][d]);
        vals[i] = f(pts[i]);
      }
    }
    const auto lo = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    const double gain = best_value - vals[lo];
    if (vals[lo] <= best_value) {
      best = pts[lo];
      best_value = vals[lo];
    }
    if (gain <= value_tol * std::max(1.0, std::abs(best_value))) break;
    step = std::max(step * 0.25, 100.0 * param_tol);
  }
  return {best, best_value, iterations, converged};
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace cvb
