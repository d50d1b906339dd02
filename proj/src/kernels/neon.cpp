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

// One complex value per float64x2_t. Only built on aarch64.

#include <arm_neon.h>

#include "cvb/kernels.hpp"

namespace cvb::kernels::neon {

void zgemm(int m, int n, int k, const cplx* a, const cplx* b, cplx* c) {
  const float64x2_t sign = {-1.0, 1.0};
  for (int i = 0; i < m; ++i) {
    auto* ci = reinterpret_cast<double*>(c + static_cast<std::ptrdiff_t>(i) * n);
    for (int p = 0; p < k; ++p) {
      const cplx av = a[static_cast<std::ptrdiff_t>(i) * k + p];
      if (av.real() == 0.0 && av.imag() == 0.0) continue;
      const auto* bp = reinterpret_cast<const double*>(b + static_cast<std::ptrdiff_t>(p) * n);
      const float64x2_t vi = vmulq_n_f64(sign, av.imag());
      for (int j = 0; j < n; ++j) {
        const float64x2_t bv = vld1q_f64(bp + 2 * j);
        const float64x2_t bs = vextq_f64(bv, bv, 1);
        float64x2_t cv = vld1q_f64(ci + 2 * j);
        cv = vfmaq_n_f64(cv, bv, av.real());
        cv = vfmaq_f64(cv, bs, vi);
        vst1q_f64(ci + 2 * j, cv);
      }
    }
  }
}

cplx zdotc(int n, const cplx* x, const cplx* y) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  for (int i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    const float64x2_t yv = vld1q_f64(yd + 2 * i);
    acc_re = vfmaq_f64(acc_re, xv, yv);
    acc_im = vfmaq_f64(acc_im, xv, vextq_f64(yv, yv, 1));
  }
  return {vgetq_lane_f64(acc_re, 0) + vgetq_lane_f64(acc_re, 1),
          vgetq_lane_f64(acc_im, 0) - vgetq_lane_f64(acc_im, 1)};
}

}  // namespace cvb::kernels::neon
