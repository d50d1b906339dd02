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

// Dense complex kernels used by the Fock-space simulator. Every kernel has a
// portable scalar reference; AVX2 and NEON variants are picked at runtime.
// Setting CVB_KERNELS=scalar in the environment forces the reference path.

#include <complex>
#include <string_view>

namespace cvb::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

/// c[m x n] += a[m x k] * b[k x n]; all row-major, densely packed.
using ZgemmFn = void (*)(int m, int n, int k, const cplx* a, const cplx* b, cplx* c);
/// sum_i conj(x_i) y_i
using ZdotcFn = cplx (*)(int n, const cplx* x, const cplx* y);

namespace scalar {
void zgemm(int m, int n, int k, const cplx* a, const cplx* b, cplx* c);
cplx zdotc(int n, const cplx* x, const cplx* y);
}  // namespace scalar

namespace avx2 {
void zgemm(int m, int n, int k, const cplx* a, const cplx* b, cplx* c);
cplx zdotc(int n, const cplx* x, const cplx* y);
}  // namespace avx2

namespace neon {
void zgemm(int m, int n, int k, const cplx* a, const cplx* b, cplx* c);
cplx zdotc(int n, const cplx* x, const cplx* y);
}  // namespace neon

bool available(Backend backend);
Backend active_backend();
/// Throws std::invalid_argument if the backend is not available here.
void set_backend(Backend backend);
std::string_view name(Backend backend);

void zgemm(int m, int n, int k, const cplx* a, const cplx* b, cplx* c);
cplx zdotc(int n, const cplx* x, const cplx* y);

}  // namespace cvb::kernels
