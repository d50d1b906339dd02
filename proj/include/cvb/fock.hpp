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

// Truncated Fock-space simulator. It builds every unitary from its generator
// with a matrix exponential and measures moments by direct summation, so it
// is independent of the phase-space engine.
//
// A state of m modes with cutoff n holds n^m amplitudes; mode 0 is the most
// significant index. Single-mode unitaries are exponentiated on an enlarged
// cutoff (see padded_cutoff) and then restricted to the first n levels, which
// keeps the hard truncation edge away from the retained block.

#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace cvb::fock {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);

  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  CMatrix adjoint() const;
  CMatrix block(int row0, int col0, int rows, int cols) const;
  double max_abs() const;
  double norm1() const;  // max column sum

  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix operator+(const CMatrix& rhs) const;
  CMatrix operator-(const CMatrix& rhs) const;
  CMatrix operator*(cplx s) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

/// Solves A X = B by LU with partial pivoting. Throws on a singular A.
CMatrix solve(CMatrix A, CMatrix B);

/// Matrix exponential: degree-13 Pade approximant with scaling and squaring.
CMatrix expm(const CMatrix& A);

/// Annihilation operator on levels 0..n-1: a(k-1, k) = sqrt(k).
CMatrix build_ladder(int n);

/// Cutoff used to exponentiate generators whose restriction to the first n
/// levels is kept: n + max(8, n/4).
int padded_cutoff(int n);

/// Two-mode operator restricted to one invariant subspace: `u` acts on the
/// listed (k_a, k_b) occupations. While `kept` >= 0 the block is still on the
/// padded cutoff and only its first `kept` entries lie inside the cutoff.
struct PairBlock {
  std::vector<std::pair<int, int>> basis;
  CMatrix u;
  int kept = -1;
};

struct FockConfig {
  int cutoff = 16;  // levels 0..cutoff-1 per mode
  double leak_tol = 1e-10;
};

/// exp[(zeta a^dag^2 - zeta^* a^2)/2], zeta = delta e^{i theta}; n x n block.
CMatrix u_squeeze(int n, double delta, double theta);
/// exp[alpha a^dag - alpha^* a], alpha = amp e^{i phi}; n x n block.
CMatrix u_displace(int n, double amp, double phi);
/// Beam splitter exp[arccos(sqrt tau) (a_a a_b^dag - a_a^dag a_b)] on two modes,
/// dense n^2 x n^2 with index k_a * n + k_b. Intended for small n.
CMatrix u_beam_splitter(int n, double tau);
/// exp[zeta a_a^dag a_b^dag - zeta^* a_a a_b]; dense n^2 x n^2.
CMatrix u_two_mode_squeeze(int n, double delta, double theta);

class FockState {
 public:
  /// Vacuum of n_modes modes at the given cutoff.
  FockState(int n_modes, int cutoff);

  int num_modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return amp_.size(); }
  std::vector<cplx>& amplitudes() { return amp_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }

  double norm_sq() const;
  /// 1 - norm^2: probability lost through truncation.
  double leakage() const { return 1.0 - norm_sq(); }

  /// Copy into a different cutoff, zero-filling or dropping levels.
  FockState with_cutoff(int cutoff) const;

  void apply_local(const CMatrix& u, int mode);
  void apply_pair_blocks(const std::vector<PairBlock>& blocks, int mode_a, int mode_b);
  void apply_beam_splitter(double tau, int mode_a, int mode_b);
  void apply_two_mode_squeeze(double delta, double theta, int mode_a, int mode_b);

  /// Multiplies amplitudes by f(k_0, ..., k_{m-1}); used for diagonal operators.
  void scale_diagonal(const std::vector<double>& per_index);

  /// Occupation digit of `mode` at flat index i.
  int digit(std::size_t i, int mode) const;

  /// Two-mode ops skip invariant subspaces carrying less than this weight;
  /// their amplitude is dropped and shows up as leakage.
  static constexpr double kNegligibleWeight = 1e-32;
  /// Flags subspaces (total or difference of the two occupations) above
  /// kNegligibleWeight.
  std::vector<char> occupied_blocks(int mode_a, int mode_b, bool by_difference) const;

 private:
  int modes_;
  int cutoff_;
  std::vector<cplx> amp_;
  std::vector<std::size_t> stride_;
};

/// <psi|phi> using the dispatched dot kernel.
cplx inner(const FockState& psi, const FockState& phi);

double mean_number(const FockState& s, int mode);
double number_sq(const FockState& s, int mode);
/// <N_j N_k>
double number_cross(const FockState& s, int j, int k);
/// <H> and <H^2> for H = sum_j omegas[j] N_j (unit frequencies if empty).
double energy_mean(const FockState& s, const std::vector<double>& omegas = {});
double energy_sq(const FockState& s, const std::vector<double>& omegas = {});

// --- scenarios -----------------------------------------------------------------

enum class Prep { Separable, TwoModeFamily, ThreeModeFamily };
enum class ChargeKind { Squeeze, Displace, TwoModeSqueeze };

struct Charge {
  ChargeKind kind = ChargeKind::Squeeze;
  std::vector<double> strengths;  // one per mode, or one for TwoModeSqueeze
  std::vector<double> phases;
};

struct Scenario {
  std::string id;
  Prep prep = Prep::Separable;
  int n_modes = 1;  // Separable only
  double r = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  Charge charge;

  int modes() const;
};

/// Prepared (uncharged) battery: squeezers from vacuum, then beam splitters.
FockState prepare(const Scenario& sc, int cutoff);
void apply_charge(FockState& s, const Charge& c, bool inverse = false);

struct Moments {
  std::vector<double> n_initial;  // <N_j> before charging
  std::vector<double> n_charged;  // <N_j> after charging
  std::vector<double> n2_charged;  // <N_j^2> after charging
  double e0 = 0.0;
  double e1 = 0.0;
  double v0 = 0.0;
  double v1 = 0.0;
  double cov = 0.0;       // Cov(H', H) in the initial state
  double anticomm = 0.0;  // <{H', H}> with H' built as an operator
  // Same, from U^dag H U applied to the state; NaN unless requested.
  double anticomm_vector = std::numeric_limits<double>::quiet_NaN();
  double leakage = 0.0;   // worst lost norm of the states involved
};

Moments compute_moments(const Scenario& sc, int cutoff, bool vector_route = false);

struct SweepReport {
  int cutoff = 0;
  bool converged = false;
  double rel_change = 0.0;
  std::vector<int> tried;
  Moments moments;
};

/// Doubles the cutoff from 8 until every reported moment changes by less than
/// rel_tol (relative to max(|value|, 1e-6)) and the leakage is below leak_tol.
SweepReport convergence_sweep(const Scenario& sc, int max_cutoff, double rel_tol = 1e-8, double leak_tol = 1e-10);

}  // namespace cvb::fock
