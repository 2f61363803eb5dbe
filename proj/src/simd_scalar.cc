// Copyright 2026 The Heavylat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <cstring>

#include "heavylat/simd.h"

namespace heavylat::simd {

namespace {

void xor_into_scalar(uint64_t *dst, const uint64_t *src, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        dst[i] ^= src[i];
    }
}

void cnot_scalar(uint64_t *xc, uint64_t *zc, uint64_t *xt, uint64_t *zt, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        xt[i] ^= xc[i];
        zc[i] ^= zt[i];
    }
}

void xor3_scalar(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        dst[i] = a[i] ^ b[i];
    }
}

const Kernels kScalar{"scalar", xor_into_scalar, cnot_scalar, xor3_scalar};

}  // namespace

const Kernels &scalar_kernels() { return kScalar; }

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Kernels &best_kernels() {
    static const Kernels *chosen = [] {
        const char *env = std::getenv("HEAVYLAT_SIMD");
        if (env && std::strcmp(env, "scalar") == 0) {
            return &kScalar;
        }
        const Kernels *k = avx2_kernels();
        return (k && cpu_supports_avx2()) ? k : &kScalar;
    }();
    return *chosen;
}

}  // namespace heavylat::simd
