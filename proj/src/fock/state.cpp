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
#include <stdexcept>

#include <fmt/format.h>

#include "cvb/kernels.hpp"
#include "fock_internal.hpp"

namespace cvb::fock {

namespace {

cplx polar(double r, double phase) { return std::polar(r, phase); }

// exp(G) on each listed index subset of G; G must not couple different subsets.
CMatrix block_expm(const CMatrix& G, const std::vector<std::vector<int>>& sets) {
  CMatrix out(G.rows(), G.cols());
  for (const auto& set : sets) {
    const int L = static_cast<int>(set.size());
    CMatrix sub(L, L);
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) sub(i, j) = G(set[static_cast<std::size_t>(i)], set[static_cast<std::size_t>(j)]);
    }
    const CMatrix e = expm(sub);
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) out(set[static_cast<std::size_t>(i)], set[static_cast<std::size_t>(j)]) = e(i, j);
    }
  }
  return out;
}

void require_cutoff(int n) {
  if (n < 1) throw std::invalid_argument(fmt::format("cutoff must be >= 1, got {}", n));
}

}  // namespace

int padded_cutoff(int n) { return n + std::max(8, n / 4); }

CMatrix squeeze_unitary_full(int m, double delta, double theta) {
  require_cutoff(m);
  const cplx z = polar(delta, theta);
  CMatrix G(m, m);
  for (int k = 0; k + 2 < m; ++k) {
    const double c = 0.5 * std::sqrt(static_cast<double>(k + 1) * (k + 2));
    G(k + 2, k) += z * c;
    G(k, k + 2) -= std::conj(z) * c;
  }
  std::vector<std::vector<int>> parity(2);
  for (int k = 0; k < m; ++k) parity[static_cast<std::size_t>(k % 2)].push_back(k);
  if (parity[1].empty()) parity.pop_back();
  return block_expm(G, parity);
}

CMatrix displace_unitary_full(int m, double amp, double phi) {
  require_cutoff(m);
  const cplx al = polar(amp, phi);
  CMatrix G(m, m);
  for (int k = 0; k + 1 < m; ++k) {
    const double c = std::sqrt(static_cast<double>(k + 1));
    G(k + 1, k) += al * c;
    G(k, k + 1) -= std::conj(al) * c;
  }
  return expm(G);
}

CMatrix u_squeeze(int n, double delta, double theta) {
  return squeeze_unitary_full(padded_cutoff(n), delta, theta).block(0, 0, n, n);
}

CMatrix u_displace(int n, double amp, double phi) {
  return displace_unitary_full(padded_cutoff(n), amp, phi).block(0, 0, n, n);
}

std::vector<PairBlock> beam_splitter_blocks(int n, double tau, const std::vector<char>& wanted) {
  require_cutoff(n);
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument(fmt::format("transmittivity must lie in [0, 1], got {}", tau));
  }
  const double th = std::acos(std::sqrt(tau));
  std::vector<PairBlock> blocks;
  // Total photon number is conserved, so each block is exact: no padding.
  for (int N = 0; N <= 2 * (n - 1); ++N) {
    if (!wanted.empty() && !wanted[static_cast<std::size_t>(N)]) continue;
    CMatrix G(N + 1, N + 1);
    for (int k = 0; k <= N; ++k) {
      if (k >= 1) G(k - 1, k) += th * std::sqrt(static_cast<double>(k) * (N - k + 1));
      if (k + 1 <= N) G(k + 1, k) -= th * std::sqrt(static_cast<double>(k + 1) * (N - k));
    }
    const CMatrix e = expm(G);
    PairBlock blk;
    std::vector<int> keep;
    for (int k = std::max(0, N - n + 1); k <= std::min(N, n - 1); ++k) {
      keep.push_back(k);
      blk.basis.emplace_back(k, N - k);
    }
    const int L = static_cast<int>(keep.size());
    blk.u = CMatrix(L, L);
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) blk.u(i, j) = e(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
    }
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

std::vector<PairBlock> two_mode_squeeze_blocks_full(int n, double delta, double theta,
                                                    const std::vector<char>& wanted) {
  require_cutoff(n);
  const int m = padded_cutoff(n);
  const cplx z = polar(delta, theta);
  std::vector<PairBlock> blocks;
  // a_a^dag a_b^dag changes both occupations together: k_a - k_b is conserved.
  for (int D = -(n - 1); D <= n - 1; ++D) {
    if (!wanted.empty() && !wanted[static_cast<std::size_t>(D + n - 1)]) continue;
    const int len = m - std::abs(D);
    const int off_a = std::max(D, 0);
    const int off_b = std::max(-D, 0);
    CMatrix G(len, len);
    for (int t = 0; t + 1 < len; ++t) {
      const double c = std::sqrt(static_cast<double>(t + off_a + 1) * (t + off_b + 1));
      G(t + 1, t) += z * c;
      G(t, t + 1) -= std::conj(z) * c;
    }
    PairBlock blk;
    blk.u = expm(G);
    for (int t = 0; t < len; ++t) blk.basis.emplace_back(t + off_a, t + off_b);
    blk.kept = n - std::abs(D);
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

std::vector<PairBlock> restrict_blocks(std::vector<PairBlock> blocks) {
  for (auto& b : blocks) {
    if (b.kept < 0) continue;
    b.u = b.u.block(0, 0, b.kept, b.kept);
    b.basis.resize(static_cast<std::size_t>(b.kept));
    b.kept = -1;
  }
  return blocks;
}

CMatrix dense_from_blocks(int n, const std::vector<PairBlock>& blocks) {
  CMatrix out(n * n, n * n);
  for (const auto& b : blocks) {
    const int L = static_cast<int>(b.basis.size());
    for (int i = 0; i < L; ++i) {
      const auto [ia, ib] = b.basis[static_cast<std::size_t>(i)];
      for (int j = 0; j < L; ++j) {
        const auto [ja, jb] = b.basis[static_cast<std::size_t>(j)];
        out(ia * n + ib, ja * n + jb) = b.u(i, j);
      }
    }
  }
  return out;
}

CMatrix u_beam_splitter(int n, double tau) { return dense_from_blocks(n, beam_splitter_blocks(n, tau, {})); }

CMatrix u_two_mode_squeeze(int n, double delta, double theta) {
  return dense_from_blocks(n, restrict_blocks(two_mode_squeeze_blocks_full(n, delta, theta, {})));
}

// --- FockState -----------------------------------------------------------------

FockState::FockState(int n_modes, int cutoff) : modes_(n_modes), cutoff_(cutoff) {
  if (n_modes < 1) throw std::invalid_argument(fmt::format("need at least one mode, got {}", n_modes));
  require_cutoff(cutoff);
  std::size_t total = 1;
  stride_.assign(static_cast<std::size_t>(n_modes), 1);
  for (int j = n_modes - 1; j >= 0; --j) {
    stride_[static_cast<std::size_t>(j)] = total;
    total *= static_cast<std::size_t>(cutoff);
  }
  amp_.assign(total, cplx{});
  amp_[0] = 1.0;
}

double FockState::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

int FockState::digit(std::size_t i, int mode) const {
  return static_cast<int>((i / stride_[static_cast<std::size_t>(mode)]) % static_cast<std::size_t>(cutoff_));
}

FockState FockState::with_cutoff(int cutoff) const {
  FockState out(modes_, cutoff);
  out.amp_[0] = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    std::size_t target = 0;
    bool inside = true;
    for (int j = 0; j < modes_; ++j) {
      const int d = digit(i, j);
      if (d >= cutoff) {
        inside = false;
        break;
      }
      target += static_cast<std::size_t>(d) * out.stride_[static_cast<std::size_t>(j)];
    }
    if (inside) out.amp_[target] = amp_[i];
  }
  return out;
}

void FockState::apply_local(const CMatrix& u, int mode) {
  if (mode < 0 || mode >= modes_) throw std::invalid_argument(fmt::format("mode {} out of range", mode));
  if (u.rows() != cutoff_ || u.cols() != cutoff_) {
    throw std::invalid_argument(fmt::format("{}x{} operator on cutoff {}", u.rows(), u.cols(), cutoff_));
  }
  const std::size_t inner = stride_[static_cast<std::size_t>(mode)];
  const std::size_t block = inner * static_cast<std::size_t>(cutoff_);
  const std::size_t outer = amp_.size() / block;
  std::vector<cplx> out(amp_.size(), cplx{});
  for (std::size_t o = 0; o < outer; ++o) {
    kernels::zgemm(cutoff_, static_cast<int>(inner), cutoff_, u.data(), amp_.data() + o * block,
                   out.data() + o * block);
  }
  amp_.swap(out);
}

void FockState::apply_pair_blocks(const std::vector<PairBlock>& blocks, int mode_a, int mode_b) {
  if (mode_a == mode_b || mode_a < 0 || mode_b < 0 || mode_a >= modes_ || mode_b >= modes_) {
    throw std::invalid_argument(fmt::format("bad mode pair ({}, {})", mode_a, mode_b));
  }
  const std::size_t sa = stride_[static_cast<std::size_t>(mode_a)];
  const std::size_t sb = stride_[static_cast<std::size_t>(mode_b)];
  std::vector<std::size_t> bases;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (digit(i, mode_a) == 0 && digit(i, mode_b) == 0) bases.push_back(i);
  }
  const int nb = static_cast<int>(bases.size());
  std::vector<cplx> out(amp_.size(), cplx{});
  std::vector<cplx> gathered, result;
  for (const auto& blk : blocks) {
    const int L = static_cast<int>(blk.basis.size());
    if (blk.u.rows() != L) throw std::logic_error("pair block is not restricted to the cutoff");
    gathered.assign(static_cast<std::size_t>(L) * nb, cplx{});
    result.assign(gathered.size(), cplx{});
    for (int i = 0; i < L; ++i) {
      const auto [ka, kb] = blk.basis[static_cast<std::size_t>(i)];
      const std::size_t off = static_cast<std::size_t>(ka) * sa + static_cast<std::size_t>(kb) * sb;
      for (int c = 0; c < nb; ++c) {
        gathered[static_cast<std::size_t>(i) * nb + c] = amp_[bases[static_cast<std::size_t>(c)] + off];
      }
    }
    kernels::zgemm(L, nb, L, blk.u.data(), gathered.data(), result.data());
    for (int i = 0; i < L; ++i) {
      const auto [ka, kb] = blk.basis[static_cast<std::size_t>(i)];
      const std::size_t off = static_cast<std::size_t>(ka) * sa + static_cast<std::size_t>(kb) * sb;
      for (int c = 0; c < nb; ++c) {
        out[bases[static_cast<std::size_t>(c)] + off] = result[static_cast<std::size_t>(i) * nb + c];
      }
    }
  }
  amp_.swap(out);
}

std::vector<char> FockState::occupied_blocks(int mode_a, int mode_b, bool by_difference) const {
  // Weight per invariant subspace: k_a + k_b, or k_a - k_b shifted to >= 0.
  std::vector<double> weight(static_cast<std::size_t>(2 * cutoff_ - 1), 0.0);
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    const int ka = digit(i, mode_a);
    const int kb = digit(i, mode_b);
    const int key = by_difference ? ka - kb + cutoff_ - 1 : ka + kb;
    weight[static_cast<std::size_t>(key)] += std::norm(amp_[i]);
  }
  std::vector<char> wanted(weight.size());
  for (std::size_t k = 0; k < weight.size(); ++k) wanted[k] = weight[k] > kNegligibleWeight ? 1 : 0;
  return wanted;
}

void FockState::apply_beam_splitter(double tau, int mode_a, int mode_b) {
  apply_pair_blocks(beam_splitter_blocks(cutoff_, tau, occupied_blocks(mode_a, mode_b, false)), mode_a, mode_b);
}

void FockState::apply_two_mode_squeeze(double delta, double theta, int mode_a, int mode_b) {
  const auto wanted = occupied_blocks(mode_a, mode_b, true);
  apply_pair_blocks(restrict_blocks(two_mode_squeeze_blocks_full(cutoff_, delta, theta, wanted)), mode_a, mode_b);
}

void FockState::scale_diagonal(const std::vector<double>& per_index) {
  if (per_index.size() != amp_.size()) throw std::invalid_argument("diagonal size mismatch");
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] *= per_index[i];
}

cplx inner(const FockState& psi, const FockState& phi) {
  if (psi.size() != phi.size()) throw std::invalid_argument("inner product of states with different shapes");
  return kernels::zdotc(static_cast<int>(psi.size()), psi.amplitudes().data(), phi.amplitudes().data());
}

}  // namespace cvb::fock
