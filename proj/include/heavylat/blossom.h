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

#ifndef HEAVYLAT_BLOSSOM_H
#define HEAVYLAT_BLOSSOM_H

#include <cstdint>
#include <vector>

namespace heavylat {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    int64_t w = 0;
};

/// Maximum-weight matching on a general graph (Edmonds blossom, primal-dual,
/// O(n^3)). Returns mate[v], or -1 for unmatched vertices. With
/// max_cardinality the weight is maximized among maximum-cardinality matchings.
std::vector<int> max_weight_matching(int n, const std::vector<WeightedEdge> &edges, bool max_cardinality = false);

/// Minimum-weight perfect matching. Throws std::runtime_error if none exists.
std::vector<int> min_weight_perfect_matching(int n, const std::vector<WeightedEdge> &edges);

}  // namespace heavylat

#endif
