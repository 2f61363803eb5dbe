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

#ifndef HEAVYLAT_GRAPH_H
#define HEAVYLAT_GRAPH_H

#include <map>
#include <string>
#include <vector>

#include "heavylat/frame_sim.h"
#include "heavylat/noise.h"

namespace heavylat {

enum class GraphKind { HexX2D, HexZ3D, SquareX3D, SquareZ3D };

std::string graph_kind_name(GraphKind k);
GraphKind parse_graph_kind(const std::string &s);
/// Graph built from detectors of the given stabilizer type.
GraphKind graph_kind_for(Family f, char type);
char graph_type(GraphKind k);
Family graph_family(GraphKind k);

struct GraphEdge {
    int u = 0;
    int v = 0;
    std::string label;
    /// Odd-parity combination of all contributing fault branches.
    double probability = 0.0;
    /// Leading-order sum of the contributing branch probabilities.
    double leading = 0.0;
    /// -ln(probability); exactly zero for boundary links.
    double weight = 0.0;
    /// Data-qubit Pauli applied when the edge is selected.
    PauliOp correction;
    bool flips_logical = false;
    /// Only usable inside a highlighted boomerang.
    bool conditional = false;
    int contributors = 0;
};

struct GraphStats {
    size_t faults = 0;
    size_t silent = 0;
    size_t undetectable_logical = 0;
    size_t hyperedges = 0;
    size_t flagged_hyperedges = 0;
    size_t ambiguous = 0;
};

class DecodingGraph {
   public:
    GraphKind kind = GraphKind::HexZ3D;
    char type = 'Z';
    int distance = 0;
    int rounds = 0;
    int layers = 0;
    size_t per_round = 0;
    int num_stabilizers = 0;
    int num_detectors = 0;
    int num_vertices = 0;
    double p = 0.0;
    std::vector<GraphEdge> edges;
    /// (neighbor, edge index) lists, ascending by edge index.
    std::vector<std::vector<std::pair<int, int>>> adjacency;
    /// Usable flag id -> edges a single fault raising that flag can produce.
    std::map<int, std::vector<int>> boomerangs;
    /// Per measurement of one round: flag whose outcome this graph uses.
    std::vector<char> relevant_flag;
    GraphStats stats;

    bool is_boundary(int v) const { return v >= num_detectors; }
    int boundary_vertex(int side, int layer) const { return num_detectors + side * layers + layer; }
    int vertex_layer(int v) const;
    int vertex_stabilizer(int v) const { return is_boundary(v) ? -1 : v % num_stabilizers; }
    /// Edge index or -1.
    int find_edge(int u, int v) const;
    /// Number of usable flags of a shot that this graph reacts to.
    int count_flags(const std::vector<int> &flags) const;
    std::string vertex_name(int v) const;
    std::string to_dot() const;
    std::string to_json() const;

    std::map<std::pair<int, int>, int> index;
};

/// Every order-1 fault of the unrolled circuit is simulated and binned by the
/// detection events it produces in this graph.
DecodingGraph build_graph(const Experiment &exp, GraphKind kind, const NoiseParams &params);

/// Closed-form bulk edge probability. Throws std::invalid_argument for labels without one.
double edge_probability_closed_form(GraphKind kind, const std::string &label, int d, double p);
bool has_closed_form(GraphKind kind, const std::string &label);

/// Leading-order probability of an edge from order-1 enumeration.
double edge_probability_enumerated(const DecodingGraph &g, int edge);

/// Bulk edges of a label: both endpoints are detectors of weight-four
/// stabilizers away from the first and last layers.
std::vector<int> bulk_edges(const DecodingGraph &g, const Experiment &exp, const std::string &label);

}  // namespace heavylat

#endif
