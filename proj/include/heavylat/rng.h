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

#ifndef HEAVYLAT_RNG_H
#define HEAVYLAT_RNG_H

#include <cstdint>
#include <random>

namespace heavylat {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic key for a stream coordinate (seed, a, b, c).
inline uint64_t stream_key(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t k = splitmix64(seed);
    k = splitmix64(k ^ a);
    k = splitmix64(k ^ (b * 0x632be59bd9b4e019ULL));
    return splitmix64(k ^ (c * 0x85157af5ULL));
}

/// Independent generator for sub-stream `index` of `key`; order independent.
inline std::mt19937_64 stream_rng(uint64_t key, uint64_t index) {
    std::seed_seq seq{(uint32_t)key, (uint32_t)(key >> 32), (uint32_t)index, (uint32_t)(index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace heavylat

#endif
