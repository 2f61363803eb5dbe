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

#include "heavylat/graph.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace heavylat {

std::string graph_kind_name(GraphKind k) {
    switch (k) {
        case GraphKind::HexX2D:
            return "hex-x-2d";
        case GraphKind::HexZ3D:
            return "hex-z-3d";
        case GraphKind::SquareX3D:
            return "square-x-3d";
        case GraphKind::SquareZ3D:
            return "square-z-3d";
    }
    return "?";
}

GraphKind parse_graph_kind(const std::string &s) {
    for (GraphKind k : {GraphKind::HexX2D, GraphKind::HexZ3D, GraphKind::SquareX3D, GraphKind::SquareZ3D}) {
        if (graph_kind_name(k) == s) {
            return k;
        }
    }
    throw std::invalid_argument("unknown graph kind '" + s + "'");
}

GraphKind graph_kind_for(Family f, char type) {
    if (f == Family::HeavyHexagon) {
        return type == 'X' ? GraphKind::HexX2D : GraphKind::HexZ3D;
    }
    return type == 'X' ? GraphKind::SquareX3D : GraphKind::SquareZ3D;
}

char graph_type(GraphKind k) { return (k == GraphKind::HexX2D || k == GraphKind::SquareX3D) ? 'X' : 'Z'; }

Family graph_family(GraphKind k) {
    return (k == GraphKind::HexX2D || k == GraphKind::HexZ3D) ? Family::HeavyHexagon : Family::HeavySquare;
}

int DecodingGraph::vertex_layer(int v) const {
    if (is_boundary(v)) {
        return (v - num_detectors) % layers;
    }
    return v / num_stabilizers;
}

int DecodingGraph::find_edge(int u, int v) const {
    auto it = index.find({std::min(u, v), std::max(u, v)});
    return it == index.end() ? -1 : it->second;
}

int DecodingGraph::count_flags(const std::vector<int> &flags) const {
    int m = 0;
    for (int f : flags) {
        if (relevant_flag[(size_t)f % per_round]) {
            ++m;
        }
    }
    return m;
}

std::string DecodingGraph::vertex_name(int v) const {
    std::ostringstream os;
    if (is_boundary(v)) {
        os << "B" << (v - num_detectors) / layers << "_" << vertex_layer(v);
    } else {
        os << "S" << vertex_stabilizer(v) << "_" << vertex_layer(v);
    }
    return os.str();
}

std::string DecodingGraph::to_dot() const {
    std::ostringstream os;
    os << std::setprecision(9);
    os << "graph \"" << graph_kind_name(kind) << "\" {\n";
    for (int v = 0; v < num_vertices; ++v) {
        os << "  " << vertex_name(v) << (is_boundary(v) ? " [shape=square];\n" : ";\n");
    }
    for (const GraphEdge &e : edges) {
        os << "  " << vertex_name(e.u) << " -- " << vertex_name(e.v) << " [label=\"" << e.label << "\", p=" << e.probability
           << ", w=" << e.weight << (e.conditional ? ", style=dashed" : "") << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string DecodingGraph::to_json() const {
    nlohmann::ordered_json j;
    j["format"] = "heavylat-graph";
    j["version"] = 1;
    j["kind"] = graph_kind_name(kind);
    j["distance"] = distance;
    j["rounds"] = rounds;
    j["p"] = p;
    j["num_detectors"] = num_detectors;
    j["num_vertices"] = num_vertices;
    nlohmann::ordered_json es = nlohmann::ordered_json::array();
    for (const GraphEdge &e : edges) {
        nlohmann::ordered_json o;
        o["u"] = vertex_name(e.u);
        o["v"] = vertex_name(e.v);
        o["label"] = e.label;
        o["P_E"] = e.probability;
        o["w_E"] = e.weight;
        o["correction"] = e.correction.str();
        o["conditional"] = e.conditional;
        es.push_back(o);
    }
    j["edges"] = es;
    nlohmann::ordered_json bs = nlohmann::ordered_json::object();
    for (const auto &[f, list] : boomerangs) {
        bs[std::to_string(f)] = list;
    }
    j["boomerangs"] = bs;
    return j.dump(1);
}

namespace {

struct Builder {
    const Experiment &exp;
    DecodingGraph &g;
    char T;

    struct Acc {
        double leading = 0.0;
        double keep = 1.0;  // prod (1 - 2q)
        PauliOp correction;
        bool has = false;
        bool flips = false;
        bool unflagged = false;
        int contributors = 0;
    };
    std::map<std::pair<int, int>, Acc> acc;

    void add(int u, int v, double q, const PauliOp &corr, bool flips, bool flagged) {
        Acc &a = acc[{std::min(u, v), std::max(u, v)}];
        a.leading += q;
        a.keep *= (1.0 - 2.0 * q);
        ++a.contributors;
        if (!flagged) {
            a.unflagged = true;
        }
        if (!a.has) {
            a.has = true;
            a.flips = flips;
            a.correction = corr;
        } else {
            if (a.flips != flips) {
                ++g.stats.ambiguous;
            }
            if (corr.weight() < a.correction.weight()) {
                a.correction = corr;
            }
        }
    }
};

std::pair<double, double> center(const Experiment &exp, char type, int s) {
    return exp.code().stabilizer_center(type, (size_t)s);
}

std::string label_edge(const DecodingGraph &g, const Experiment &exp, int u, int v, bool conditional) {
    if (g.is_boundary(u) && g.is_boundary(v)) {
        return "Boundary";
    }
    if (conditional) {
        return "Cross";
    }
    int lu = g.vertex_layer(u), lv = g.vertex_layer(v);
    if (lu > lv || (lu == lv && g.is_boundary(u))) {
        std::swap(u, v);
        std::swap(lu, lv);
    }
    bool hex2d = g.kind == GraphKind::HexX2D;
    if (g.is_boundary(v)) {
        return hex2d ? "b1" : "2D-B";
    }
    int su = g.vertex_stabilizer(u), sv = g.vertex_stabilizer(v);
    auto [ru, cu] = center(exp, g.type, su);
    auto [rv, cv] = center(exp, g.type, sv);
    // Rows are drawn growing upward.
    double dr = ru - rv, dc = cv - cu;
    if (hex2d) {
        if (su == sv) {
            return "m";
        }
        if (lu == lv) {
            return "bu";
        }
        if (dc < 0) {
            return "d1'";
        }
        // Data column shared by the two strips, counted from one.
        int column = (int)std::lround(std::max(cu, cv) / 2.0);
        return column % 2 == 1 ? "d1" : "d2";
    }
    if (su == sv) {
        return "3DV";
    }
    std::string dir = dr * dc > 0 ? "TLBR" : (dr * dc < 0 ? "BLTR" : (dr == 0 ? "H" : "V"));
    return (lu == lv ? "2D-" : "3D-") + dir;
}

}  // namespace

DecodingGraph build_graph(const Experiment &exp, GraphKind kind, const NoiseParams &params) {
    params.check();
    const CodeLayout &code = exp.code();
    if (graph_family(kind) != code.family) {
        throw std::invalid_argument("graph kind " + graph_kind_name(kind) + " does not match code family");
    }
    DecodingGraph g;
    g.kind = kind;
    g.type = graph_type(kind);
    g.distance = code.distance;
    g.rounds = exp.rounds();
    g.layers = exp.num_layers();
    g.per_round = exp.per_round();
    g.num_stabilizers = (int)exp.num_stabilizers(g.type);
    g.num_detectors = (int)exp.num_detectors(g.type);
    g.num_vertices = g.num_detectors + 2 * g.layers;
    g.p = params.p;
    const char T = g.type;
    const ScheduledCircuit &c = exp.circuit();
    g.relevant_flag.assign(g.per_round, 0);
    for (size_t m = 0; m < g.per_round; ++m) {
        g.relevant_flag[m] = c.measurements[m].role == MeasRole::Flag && c.measurements[m].type != T;
    }
    const PauliOp &logical = T == 'X' ? code.logical_x : code.logical_z;
    const auto &logical_support = T == 'X' ? logical.x_support() : logical.z_support();

    Builder b{exp, g, T, {}};
    std::map<int, std::set<std::pair<int, int>>> boom;

    auto singles = single_faults(c, exp.rounds(), params);
    BatchSimulator sim(exp);
    std::vector<std::vector<Fault>> lanes;
    std::vector<ShotData> out;
    for (size_t start = 0; start < singles.size(); start += BatchSimulator::kLanes) {
        size_t n = std::min(BatchSimulator::kLanes, singles.size() - start);
        lanes.assign(n, {});
        for (size_t i = 0; i < n; ++i) {
            lanes[i].push_back(singles[start + i].first);
        }
        sim.run(lanes, out);
        for (size_t i = 0; i < n; ++i) {
            const ShotData &sd = out[i];
            double q = singles[start + i].second;
            ++g.stats.faults;
            const auto &part = T == 'X' ? sd.residual_z : sd.residual_x;
            size_t overlap = 0;
            for (uint32_t qb : part) {
                overlap += std::binary_search(logical_support.begin(), logical_support.end(), qb);
            }
            bool flips = overlap % 2 == 1;
            std::vector<int> flags;
            for (int f : sd.flags) {
                if (g.relevant_flag[(size_t)f % g.per_round]) {
                    flags.push_back(f);
                }
            }
            bool flagged = !flags.empty();
            const auto &ev = sd.events(T);
            if (ev.empty()) {
                if (flips) {
                    ++g.stats.undetectable_logical;
                } else {
                    ++g.stats.silent;
                }
                continue;
            }
            if (ev.size() > 2) {
                ++(flagged ? g.stats.flagged_hyperedges : g.stats.hyperedges);
                continue;
            }
            PauliOp corr = T == 'X' ? PauliOp(code.n_qubits(), {}, part) : PauliOp(code.n_qubits(), part, {});
            int u = ev[0];
            int v = ev.size() == 2 ? ev[1] : g.boundary_vertex(flips ? 1 : 0, exp.detector_layer(T, u));
            b.add(u, v, q, corr, flips, flagged);
            for (int f : flags) {
                boom[f].insert({std::min(u, v), std::max(u, v)});
            }
        }
    }

    for (auto &[key, a] : b.acc) {
        GraphEdge e;
        e.u = key.first;
        e.v = key.second;
        e.leading = a.leading;
        e.probability = 0.5 * (1.0 - a.keep);
        e.weight = -std::log(e.probability);
        e.correction = a.correction;
        e.flips_logical = a.flips;
        e.conditional = !a.unflagged;
        e.contributors = a.contributors;
        e.label = label_edge(g, exp, e.u, e.v, e.conditional);
        g.edges.push_back(std::move(e));
    }
    for (int side = 0; side < 2; ++side) {
        for (int l = 0; l + 1 < g.layers; ++l) {
            GraphEdge e;
            e.u = g.boundary_vertex(side, l);
            e.v = g.boundary_vertex(side, l + 1);
            e.label = "Boundary";
            e.probability = 1.0;
            e.leading = 0.0;
            e.weight = 0.0;
            e.correction = PauliOp(code.n_qubits());
            g.edges.push_back(std::move(e));
        }
    }
    g.adjacency.assign((size_t)g.num_vertices, {});
    for (int i = 0; i < (int)g.edges.size(); ++i) {
        const GraphEdge &e = g.edges[i];
        g.index[{std::min(e.u, e.v), std::max(e.u, e.v)}] = i;
        g.adjacency[e.u].push_back({e.v, i});
        g.adjacency[e.v].push_back({e.u, i});
    }
    for (auto &[f, keys] : boom) {
        std::vector<int> ids;
        for (auto &k : keys) {
            ids.push_back(g.index.at(k));
        }
        std::sort(ids.begin(), ids.end());
        g.boomerangs[f] = ids;
    }
    return g;
}

double edge_probability_enumerated(const DecodingGraph &g, int edge) { return g.edges.at((size_t)edge).leading; }

std::vector<int> bulk_edges(const DecodingGraph &g, const Experiment &exp, const std::string &label) {
    std::vector<int> out;
    auto bulk_vertex = [&](int v) {
        int l = g.vertex_layer(v);
        if (l == 0 || l >= g.layers - 2) {
            return false;
        }
        if (g.kind == GraphKind::HexX2D) {
            return true;
        }
        if (g.is_boundary(v)) {
            return false;
        }
        return exp.code().stabilizers(g.type)[(size_t)g.vertex_stabilizer(v)].weight() == 4;
    };
    for (int i = 0; i < (int)g.edges.size(); ++i) {
        const GraphEdge &e = g.edges[i];
        if (e.label == label && bulk_vertex(e.u) && bulk_vertex(e.v)) {
            out.push_back(i);
        }
    }
    return out;
}

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (double)(n - k + i) / (double)i;
    }
    return r;
}

double P_b1(int d, double p) {
    double a = 2 * p / 3, b = 8 * p / 15;
    double s = 0;
    for (int n = 1; n <= (d + 1) / 2; ++n) {
        for (int m = 0; m <= (3 * d - 3) / 2; ++m) {
            s += binom(d, 2 * n - 1) * std::pow(a, 2 * n - 1) * std::pow(1 - a, d - (2 * n - 1)) * binom(3 * d - 2, 2 * m) *
                 std::pow(b, 2 * m) * std::pow(1 - b, 3 * d - 2 - 2 * m);
        }
    }
    for (int n = 0; n <= (d - 1) / 2; ++n) {
        for (int m = 1; m <= (3 * d - 1) / 2; ++m) {
            s += binom(d, 2 * n) * std::pow(a, 2 * n) * std::pow(1 - a, d - 2 * n) * binom(3 * d - 2, 2 * m - 1) *
                 std::pow(b, 2 * m - 1) * std::pow(1 - b, 3 * d - 2 - (2 * m - 1));
        }
    }
    return s;
}

double P_bu(int d, double p) {
    double a = 2 * p / 3, b = 8 * p / 15, c = 4 * p / 15;
    auto A = [&](int k) { return binom(d, k) * std::pow(a, k) * std::pow(1 - a, d - k); };
    auto B = [&](int k) { return binom(2 * (d - 1), k) * std::pow(b, k) * std::pow(1 - b, 2 * (d - 1) - k); };
    auto C = [&](int k) { return binom(2 * d, k) * std::pow(c, k) * std::pow(1 - c, 2 * d - k); };
    double s = 0;
    for (int n = 1; n <= (d + 1) / 2; ++n)
        for (int m = 0; m <= d - 1; ++m)
            for (int l = 0; l <= d; ++l) s += A(2 * n - 1) * B(2 * m) * C(2 * l);
    for (int n = 0; n <= (d - 1) / 2; ++n)
        for (int m = 1; m <= d - 1; ++m)
            for (int l = 0; l <= d; ++l) s += A(2 * n) * B(2 * m - 1) * C(2 * l);
    for (int n = 0; n <= (d - 1) / 2; ++n)
        for (int m = 0; m <= d - 1; ++m)
            for (int l = 1; l <= d; ++l) s += A(2 * n) * B(2 * m) * C(2 * l - 1);
    for (int n = 1; n <= (d + 1) / 2; ++n)
        for (int m = 1; m <= d - 1; ++m)
            for (int l = 1; l <= d; ++l) s += A(2 * n - 1) * B(2 * m - 1) * C(2 * l - 1);
    return s;
}

// Transcribed term by term, including the exponent of the last 2p/3 factor.
double P_m(int d, double p) {
    double a = 4 * p / 15, b = 8 * p / 15, c = 2 * p / 3;
    auto A = [&](int k) { return binom(d + 1, k) * std::pow(a, k) * std::pow(1 - a, d + 1 - k); };
    auto B = [&](int k) { return binom(d - 1, k) * std::pow(b, k) * std::pow(1 - b, d - 1 - k); };
    auto C = [&](int k) { return binom(d + 1, k) * std::pow(c, k) * std::pow(1 - c, d - k); };
    double s = 0;
    for (int n = 1; n <= (d + 1) / 2; ++n)
        for (int m = 0; m <= (d - 1) / 2; ++m)
            for (int l = 0; l <= (d - 1) / 2; ++l) s += A(2 * n - 1) * B(2 * m) * C(2 * l);
    for (int n = 0; n <= (d + 1) / 2; ++n)
        for (int m = 1; m <= (d - 1) / 2; ++m)
            for (int l = 0; l <= (d - 1) / 2; ++l) s += A(2 * n) * B(2 * m - 1) * C(2 * l);
    for (int n = 0; n <= (d + 1) / 2; ++n)
        for (int m = 0; m <= (d - 1) / 2; ++m)
            for (int l = 1; l <= (d + 1) / 2; ++l) s += A(2 * n) * B(2 * m) * C(2 * l - 1);
    for (int n = 1; n <= (d + 1) / 2; ++n)
        for (int m = 1; m <= (d - 1) / 2; ++m)
            for (int l = 1; l <= (d + 1) / 2; ++l)
                s += A(2 * n - 1) * B(2 * m - 1) * binom(d + 1, 2 * l - 1) * std::pow(c, 2 * l) *
                     std::pow(1 - c, d - (2 * l - 1));
    return s;
}

bool is_hex_x(GraphKind k) { return k == GraphKind::HexX2D; }

}  // namespace

bool has_closed_form(GraphKind kind, const std::string &label) {
    if (is_hex_x(kind)) {
        return label == "b1" || label == "bu" || label == "m" || label == "d1" || label == "d2" || label == "d1'";
    }
    if (label == "2D-TLBR" || label == "3D-TLBR") {
        return true;
    }
    return label == "3DV" && graph_family(kind) == Family::HeavySquare;
}

double edge_probability_closed_form(GraphKind kind, const std::string &label, int d, double p) {
    if (!has_closed_form(kind, label)) {
        throw std::invalid_argument("no closed form for " + label + " in " + graph_kind_name(kind));
    }
    const double a = 4 * p / 15, b = 8 * p / 15, c = 2 * p / 3;
    if (label == "b1") return P_b1(d, p);
    if (label == "bu") return P_bu(d, p);
    if (label == "m") return P_m(d, p);
    if (label == "d2") return 0.5 - 0.5 * std::pow(b - 1, 2 * d - 2);
    if (label == "d1") return 0.5 - 0.5 * std::pow(1 - b, 2 * d);
    if (label == "d1'") return b * (1 - a);
    if (label == "2D-TLBR") return 16 * p / 15 * std::pow(1 - a, 3) * (1 - c) + c * std::pow(1 - a, 4);
    if (label == "3D-TLBR") return b * (1 - a);
    // 3DV, heavy square
    return 32 * p / 15 * std::pow(1 - b, 3) * std::pow(1 - a, 4) * (1 - c) +
           16 * p / 15 * std::pow(1 - b, 4) * std::pow(1 - a, 3) * (1 - c) + c * std::pow(1 - b, 4) * std::pow(1 - a, 4);
}

}  // namespace heavylat
