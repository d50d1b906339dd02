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

// Compiled with -mavx2 -mfma; only called after a runtime CPU check.

#include <immintrin.h>

#include "cvb/kernels.hpp"

namespace cvb::kernels::avx2 {

void zgemm(int m, int n, int k, const cplx* a, const cplx* b, cplx* c) {
  const int n2 = n & ~1;
  for (int i = 0; i < m; ++i) {
    auto* ci = reinterpret_cast<double*>(c + static_cast<std::ptrdiff_t>(i) * n);
    for (int p = 0; p < k; ++p) {
      const cplx av = a[static_cast<std::ptrdiff_t>(i) * k + p];
      const double ar = av.real();
      const double ai = av.imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const auto* bp = reinterpret_cast<const double*>(b + static_cast<std::ptrdiff_t>(p) * n);
      const __m256d vr = _mm256_set1_pd(ar);
      const __m256d vi = _mm256_set1_pd(ai);
      int j = 0;
      for (; j < n2; j += 2) {
        const __m256d bv = _mm256_loadu_pd(bp + 2 * j);
        const __m256d bs = _mm256_permute_pd(bv, 0b0101);
        // even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
        const __m256d prod = _mm256_fmaddsub_pd(vr, bv, _mm256_mul_pd(vi, bs));
        _mm256_storeu_pd(ci + 2 * j, _mm256_add_pd(_mm256_loadu_pd(ci + 2 * j), prod));
      }
      for (; j < n; ++j) {
        const double br = bp[2 * j];
        const double bi = bp[2 * j + 1];
        ci[2 * j] += ar * br - ai * bi;
        ci[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
}

cplx zdotc(int n, const cplx* x, const cplx* y) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  alignas(32) double r[4];
  alignas(32) double m[4];
  _mm256_store_pd(r, acc_re);
  _mm256_store_pd(m, acc_im);
  double re = (r[0] + r[2]) + (r[1] + r[3]);
  double im = (m[0] + m[2]) - (m[1] + m[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

}  // namespace cvb::kernels::avx2
