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

#include "heavylat/simd.h"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace heavylat::simd {

#if defined(__AVX2__)

namespace {

void xor_into_avx2(uint64_t *dst, const uint64_t *src, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i a = _mm256_loadu_si256((const __m256i *)(dst + i));
        __m256i b = _mm256_loadu_si256((const __m256i *)(src + i));
        _mm256_storeu_si256((__m256i *)(dst + i), _mm256_xor_si256(a, b));
    }
    for (; i < n; ++i) {
        dst[i] ^= src[i];
    }
}

void cnot_avx2(uint64_t *xc, uint64_t *zc, uint64_t *xt, uint64_t *zt, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i vxc = _mm256_loadu_si256((const __m256i *)(xc + i));
        __m256i vzc = _mm256_loadu_si256((const __m256i *)(zc + i));
        __m256i vxt = _mm256_loadu_si256((const __m256i *)(xt + i));
        __m256i vzt = _mm256_loadu_si256((const __m256i *)(zt + i));
        _mm256_storeu_si256((__m256i *)(xt + i), _mm256_xor_si256(vxt, vxc));
        _mm256_storeu_si256((__m256i *)(zc + i), _mm256_xor_si256(vzc, vzt));
    }
    for (; i < n; ++i) {
        xt[i] ^= xc[i];
        zc[i] ^= zt[i];
    }
}

void xor3_avx2(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256((const __m256i *)(a + i));
        __m256i vb = _mm256_loadu_si256((const __m256i *)(b + i));
        _mm256_storeu_si256((__m256i *)(dst + i), _mm256_xor_si256(va, vb));
    }
    for (; i < n; ++i) {
        dst[i] = a[i] ^ b[i];
    }
}

const Kernels kAvx2{"avx2", xor_into_avx2, cnot_avx2, xor3_avx2};

}  // namespace

const Kernels *avx2_kernels() { return &kAvx2; }

#else

const Kernels *avx2_kernels() { return nullptr; }

#endif

}  // namespace heavylat::simd
