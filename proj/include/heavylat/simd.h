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

#ifndef HEAVYLAT_SIMD_H
#define HEAVYLAT_SIMD_H

#include <cstddef>
#include <cstdint>

namespace heavylat::simd {

/// Bit-parallel frame kernels over packed shot words.
struct Kernels {
    const char *name;
    /// dst ^= src
    void (*xor_into)(uint64_t *dst, const uint64_t *src, size_t n);
    /// CNOT on a frame: xt ^= xc, zc ^= zt
    void (*cnot)(uint64_t *xc, uint64_t *zc, uint64_t *xt, uint64_t *zt, size_t n);
    /// dst = a ^ b
    void (*xor3)(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t n);
};

const Kernels &scalar_kernels();
/// Null when the AVX2 variant was not compiled in.
const Kernels *avx2_kernels();
bool cpu_supports_avx2();
/// AVX2 when available, unless HEAVYLAT_SIMD=scalar is set.
const Kernels &best_kernels();

}  // namespace heavylat::simd

#endif
