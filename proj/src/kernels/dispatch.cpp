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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include <fmt/format.h>

#include "cvb/kernels.hpp"

namespace cvb::kernels {

namespace {

struct Table {
  ZgemmFn zgemm;
  ZdotcFn zdotc;
};

Table table_for(Backend b) {
  switch (b) {
#if defined(CVB_HAVE_AVX2)
    case Backend::Avx2:
      return {avx2::zgemm, avx2::zdotc};
#endif
#if defined(CVB_HAVE_NEON)
    case Backend::Neon:
      return {neon::zgemm, neon::zdotc};
#endif
    default:
      return {scalar::zgemm, scalar::zdotc};
  }
}

Backend detect() {
  if (const char* env = std::getenv("CVB_KERNELS"); env != nullptr && std::string_view(env) == "scalar") {
    return Backend::Scalar;
  }
  if (available(Backend::Avx2)) return Backend::Avx2;
  if (available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

bool available(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(CVB_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(CVB_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!available(backend)) {
    throw std::invalid_argument(fmt::format("kernel backend '{}' is not available on this machine", name(backend)));
  }
  current().store(backend, std::memory_order_relaxed);
}

std::string_view name(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

void zgemm(int m, int n, int k, const cplx* a, const cplx* b, cplx* c) {
  table_for(active_backend()).zgemm(m, n, k, a, b, c);
}

cplx zdotc(int n, const cplx* x, const cplx* y) { return table_for(active_backend()).zdotc(n, x, y); }

}  // namespace cvb::kernels
