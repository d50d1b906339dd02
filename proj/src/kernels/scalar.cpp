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

#include "cvb/kernels.hpp"

namespace cvb::kernels::scalar {

void zgemm(int m, int n, int k, const cplx* a, const cplx* b, cplx* c) {
  for (int i = 0; i < m; ++i) {
    cplx* ci = c + static_cast<std::ptrdiff_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      const double ar = a[static_cast<std::ptrdiff_t>(i) * k + p].real();
      const double ai = a[static_cast<std::ptrdiff_t>(i) * k + p].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const cplx* bp = b + static_cast<std::ptrdiff_t>(p) * n;
      for (int j = 0; j < n; ++j) {
        const double br = bp[j].real();
        const double bi = bp[j].imag();
        ci[j] = {ci[j].real() + (ar * br - ai * bi), ci[j].imag() + (ar * bi + ai * br)};
      }
    }
  }
}

cplx zdotc(int n, const cplx* x, const cplx* y) {
  double re = 0.0;
  double im = 0.0;
  for (int i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

}  // namespace cvb::kernels::scalar
