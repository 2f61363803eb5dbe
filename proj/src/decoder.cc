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

#include "heavylat/decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "heavylat/blossom.h"

namespace heavylat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScale = 1e6;

}  // namespace

Decoder::Decoder(const DecodingGraph &g, DecoderOptions opt) : g_(g), opt_(opt) {
    base_.resize(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const GraphEdge &e = g.edges[i];
        base_[i] = e.conditional ? kInf : e.weight;
    }
    trees_.resize((size_t)g.num_detectors);
    for (int v = 0; v < g.num_detectors; ++v) {
        search(base_, {v}, trees_[v]);
    }
    std::vector<int> bv;
    for (int v = g.num_detectors; v < g.num_vertices; ++v) {
        bv.push_back(v);
    }
    search(base_, bv, boundary_tree_);
}

std::vector<double> Decoder::reweight(const std::vector<int> &flags, int *m_out) const {
    int m = opt_.use_flags ? g_.count_flags(flags) : 0;
    if (m_out) {
        *m_out = m;
    }
    if (m == 0) {
        return base_;
    }
    if (!(g_.p > 0.0)) {
        throw std::invalid_argument("flag reweighting needs p > 0");
    }
    std::vector<char> inside(g_.edges.size(), 0);
    for (int f : flags) {
        if (!g_.relevant_flag[(size_t)f % g_.per_round]) {
            continue;
        }
        auto it = g_.boomerangs.find(f);
        if (it == g_.boomerangs.end()) {
            continue;
        }
        for (int e : it->second) {
            inside[e] = 1;
        }
    }
    double penalty = opt_.alpha * m * -std::log(g_.p);
    std::vector<double> w(g_.edges.size());
    for (size_t i = 0; i < g_.edges.size(); ++i) {
        const GraphEdge &e = g_.edges[i];
        if (e.label == "Boundary") {
            w[i] = 0.0;
        } else if (e.conditional) {
            w[i] = inside[i] ? e.weight : kInf;
        } else {
            w[i] = inside[i] ? e.weight : e.weight + penalty;
        }
    }
    return w;
}

void Decoder::search(const std::vector<double> &w, const std::vector<int> &sources, SearchTree &t) const {
    size_t n = (size_t)g_.num_vertices;
    t.dist.assign(n, kInf);
    t.pred_edge.assign(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (int s : sources) {
        t.dist[s] = 0.0;
        pq.push({0.0, s});
    }
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > t.dist[v]) {
            continue;
        }
        for (auto [u, e] : g_.adjacency[v]) {
            double nd = d + w[e];
            if (nd < t.dist[u]) {
                t.dist[u] = nd;
                t.pred_edge[u] = e;
                pq.push({nd, u});
            }
        }
    }
}

std::vector<int> Decoder::path_edges(const SearchTree &t, int target) const {
    std::vector<int> out;
    int v = target;
    while (t.pred_edge[v] >= 0) {
        int e = t.pred_edge[v];
        out.push_back(e);
        v = g_.edges[e].u == v ? g_.edges[e].v : g_.edges[e].u;
    }
    return out;
}

Correction Decoder::decode(const std::vector<int> &events, const std::vector<int> &flags) const {
    Correction c;
    size_t nq = 0;
    if (!g_.edges.empty()) {
        nq = g_.edges.front().correction.n_qubits();
    }
    c.pauli = PauliOp(nq);
    std::vector<double> w = reweight(flags, &c.m);
    if (events.empty()) {
        return c;
    }
    bool fixed = c.m == 0;
    const int k = (int)events.size();
    std::vector<SearchTree> own;
    std::vector<const SearchTree *> tree(k);
    SearchTree own_boundary;
    const SearchTree *btree = &boundary_tree_;
    if (fixed) {
        for (int i = 0; i < k; ++i) {
            tree[i] = &trees_.at((size_t)events[i]);
        }
    } else {
        own.resize(k);
        for (int i = 0; i < k; ++i) {
            search(w, {events[i]}, own[i]);
            tree[i] = &own[i];
        }
        std::vector<int> bv;
        for (int v = g_.num_detectors; v < g_.num_vertices; ++v) {
            bv.push_back(v);
        }
        search(w, bv, own_boundary);
        btree = &own_boundary;
    }

    // Events 0..k-1, their private boundary partners k..2k-1.
    std::vector<WeightedEdge> me;
    std::vector<double> cost_of;
    auto add = [&](int a, int b, double cost) {
        me.push_back({a, b, (int64_t)std::llround(cost * kScale)});
        cost_of.push_back(cost);
    };
    for (int i = 0; i < k; ++i) {
        double db_i = btree->dist[events[i]];
        if (std::isfinite(db_i)) {
            add(i, k + i, db_i);
        }
        for (int j = i + 1; j < k; ++j) {
            double dij = tree[i]->dist[events[j]];
            double db_j = btree->dist[events[j]];
            if (std::isfinite(dij) && !(dij >= db_i + db_j)) {
                add(i, j, dij);
            }
            add(k + i, k + j, 0.0);
        }
    }
    std::vector<int> mate;
    try {
        mate = min_weight_perfect_matching(2 * k, me);
    } catch (const std::runtime_error &) {
        throw std::logic_error("detection event cannot reach a partner in the decoding graph");
    }

    std::vector<int> parity(g_.edges.size(), 0);
    for (int i = 0; i < k; ++i) {
        int j = mate[i];
        std::vector<int> path;
        if (j == k + i) {
            c.pairs.push_back({events[i], -1});
            c.cost += btree->dist[events[i]];
            path = path_edges(*btree, events[i]);
        } else if (j > i && j < k) {
            c.pairs.push_back({events[i], events[j]});
            c.cost += tree[i]->dist[events[j]];
            path = path_edges(*tree[i], events[j]);
        }
        for (int e : path) {
            parity[e] ^= 1;
        }
    }
    for (size_t e = 0; e < parity.size(); ++e) {
        if (parity[e]) {
            c.edges.push_back((int)e);
            if (!g_.edges[e].correction.is_identity()) {
                c.pauli = multiply(c.pauli, g_.edges[e].correction);
            }
        }
    }
    return c;
}

std::string failure_name(FailureClass f) {
    switch (f) {
        case FailureClass::None:
            return "none";
        case FailureClass::X:
            return "X";
        case FailureClass::Z:
            return "Z";
        case FailureClass::Y:
            return "Y";
    }
    return "?";
}

FailureClass adjudicate(const PauliOp &correction, const PauliOp &residual, const CodeLayout &code) {
    PauliOp combined = multiply(correction, residual);
    for (const auto *list : {&code.x_stabilizers, &code.z_stabilizers}) {
        for (const PauliOp &s : *list) {
            if (!commutes(combined, s)) {
                throw std::logic_error("correction leaves a nontrivial syndrome: " + combined.str());
            }
        }
    }
    bool x = !commutes(combined, code.logical_z);
    bool z = !commutes(combined, code.logical_x);
    if (x && z) {
        return FailureClass::Y;
    }
    return x ? FailureClass::X : (z ? FailureClass::Z : FailureClass::None);
}

ShotDecoder::ShotDecoder(const Experiment &exp, const NoiseParams &params, DecoderOptions opt)
    : exp_(exp),
      gx_(build_graph(exp, graph_kind_for(exp.code().family, 'X'), params)),
      gz_(build_graph(exp, graph_kind_for(exp.code().family, 'Z'), params)),
      dx_(gx_, opt),
      dz_(gz_, opt) {}

ShotOutcome ShotDecoder::decode(const ShotData &shot) const {
    Correction cx = dx_.decode(shot.events_x, shot.flags);
    Correction cz = dz_.decode(shot.events_z, shot.flags);
    const size_t n = exp_.code().n_qubits();
    PauliOp residual(n, shot.residual_x, shot.residual_z);
    ShotOutcome out;
    out.failure = adjudicate(multiply(cx.pauli, cz.pauli), residual, exp_.code());
    out.m_x = cx.m;
    out.m_z = cz.m;
    out.cost = cx.cost + cz.cost;
    return out;
}

}  // namespace heavylat
