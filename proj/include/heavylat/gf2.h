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

#ifndef HEAVYLAT_GF2_H
#define HEAVYLAT_GF2_H

#include <bit>
#include <cstdint>
#include <vector>

namespace heavylat {

/// Dense bit vector over GF(2).
struct BitRow {
    std::vector<uint64_t> w;
    BitRow() = default;
    explicit BitRow(size_t n) : w((n + 63) / 64, 0) {}
    bool get(size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    void flip(size_t i) { w[i / 64] ^= uint64_t{1} << (i % 64); }
    void xor_with(const BitRow &o) {
        for (size_t k = 0; k < w.size(); ++k) {
            w[k] ^= o.w[k];
        }
    }
    bool any() const {
        for (uint64_t v : w) {
            if (v) {
                return true;
            }
        }
        return false;
    }
    int lowest() const {
        for (size_t k = 0; k < w.size(); ++k) {
            if (w[k]) {
                return (int)(k * 64 + (size_t)std::countr_zero(w[k]));
            }
        }
        return -1;
    }
};

/// Row-reduced span of a set of vectors, for membership tests.
class GF2Span {
   public:
    explicit GF2Span(size_t n) : n_(n) {}
    /// Returns true if v was independent of the rows already present.
    bool add(BitRow v) {
        reduce(v);
        int p = v.lowest();
        if (p < 0) {
            return false;
        }
        for (auto &r : rows_) {
            if (r.get((size_t)p)) {
                r.xor_with(v);
            }
        }
        rows_.push_back(v);
        pivots_.push_back(p);
        return true;
    }
    void reduce(BitRow &v) const {
        for (size_t k = 0; k < rows_.size(); ++k) {
            if (v.get((size_t)pivots_[k])) {
                v.xor_with(rows_[k]);
            }
        }
    }
    bool contains(BitRow v) const {
        reduce(v);
        return !v.any();
    }
    size_t rank() const { return rows_.size(); }
    size_t n() const { return n_; }

   private:
    size_t n_;
    std::vector<BitRow> rows_;
    std::vector<int> pivots_;
};

}  // namespace heavylat

#endif
