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

#include <gtest/gtest.h>

#include <set>

#include "heavylat/graph.h"
#include "json.hpp"

using namespace heavylat;

namespace {

struct Case {
    Family family;
    char type;
    int d;
};

std::vector<ShotData> singles_data(const Experiment &e, const NoiseParams &np, std::vector<Fault> *faults) {
    BatchSimulator sim(e);
    std::vector<std::vector<Fault>> sets;
    for (auto &[f, q] : single_faults(e.circuit(), e.rounds(), np)) {
        sets.push_back({f});
        faults->push_back(f);
    }
    std::vector<ShotData> all, out;
    std::vector<std::vector<Fault>> lanes;
    for (size_t s = 0; s < sets.size(); s += BatchSimulator::kLanes) {
        lanes.assign(sets.begin() + (long)s, sets.begin() + (long)std::min(sets.size(), s + BatchSimulator::kLanes));
        sim.run(lanes, out);
        all.insert(all.end(), out.begin(), out.end());
    }
    return all;
}

}  // namespace

class GraphCases : public ::testing::TestWithParam<Case> {};

TEST_P(GraphCases, EverySingleFaultIsAnEdge) {
    Case c = GetParam();
    Experiment e(build_code(c.family, c.d), c.d);
    NoiseParams np{1e-3};
    DecodingGraph g = build_graph(e, graph_kind_for(c.family, c.type), np);
    EXPECT_EQ(g.stats.hyperedges, 0u);
    EXPECT_EQ(g.stats.ambiguous, 0u);
    EXPECT_EQ(g.stats.undetectable_logical, 0u);
    std::vector<Fault> faults;
    auto shots = singles_data(e, np, &faults);
    EXPECT_EQ(g.stats.faults, shots.size());
    for (size_t i = 0; i < shots.size(); ++i) {
        const std::vector<int> &ev = shots[i].events(c.type);
        ASSERT_LE(ev.size(), 2u);
        if (ev.size() == 2) {
            EXPECT_GE(g.find_edge(ev[0], ev[1]), 0);
        } else if (ev.size() == 1) {
            int l = g.vertex_layer(ev[0]);
            bool found = g.find_edge(ev[0], g.boundary_vertex(0, l)) >= 0 || g.find_edge(ev[0], g.boundary_vertex(1, l)) >= 0;
            EXPECT_TRUE(found);
        }
    }
}

TEST_P(GraphCases, WeightsAndLabels) {
    Case c = GetParam();
    Experiment e(build_code(c.family, c.d), c.d);
    DecodingGraph g = build_graph(e, graph_kind_for(c.family, c.type), {1e-3});
    std::set<std::string> allowed;
    if (g.kind == GraphKind::HexX2D) {
        allowed = {"m", "b1", "bu", "d1", "d1'", "d2", "Boundary"};
    } else {
        allowed = {"2D-B", "3DV", "Cross", "Boundary"};
        for (const char *dim : {"2D-", "3D-"}) {
            for (const char *dir : {"TLBR", "BLTR", "H", "V"}) allowed.insert(std::string(dim) + dir);
        }
    }
    size_t links = 0;
    for (const GraphEdge &ed : g.edges) {
        EXPECT_TRUE(allowed.count(ed.label)) << ed.label;
        EXPECT_LT(ed.u, ed.v);
        if (ed.label == "Boundary") {
            ++links;
            EXPECT_EQ(ed.weight, 0.0);
            EXPECT_TRUE(g.is_boundary(ed.u) && g.is_boundary(ed.v));
        } else {
            EXPECT_GT(ed.probability, 0.0);
            EXPECT_LT(ed.probability, 0.5);
            EXPECT_LE(ed.probability, ed.leading + 1e-15);
            EXPECT_TRUE(std::isfinite(ed.weight));
            EXPECT_GT(ed.weight, 0.0);
            EXPECT_NEAR(ed.weight, -std::log(ed.probability), 1e-12);
            EXPECT_FALSE(g.is_boundary(ed.u));
        }
        EXPECT_EQ(ed.conditional, ed.label == "Cross");
    }
    EXPECT_EQ(links, 2u * (size_t)(g.layers - 1));
}

TEST_P(GraphCases, FlaggedFaultsStayInTheirBoomerang) {
    Case c = GetParam();
    Experiment e(build_code(c.family, c.d), c.d);
    NoiseParams np{1e-3};
    DecodingGraph g = build_graph(e, graph_kind_for(c.family, c.type), np);
    std::vector<Fault> faults;
    auto shots = singles_data(e, np, &faults);
    size_t checked = 0;
    for (const ShotData &s : shots) {
        const std::vector<int> &ev = s.events(c.type);
        if (g.count_flags(s.flags) != 1 || ev.empty()) continue;
        int flag = -1;
        for (int f : s.flags) {
            if (g.relevant_flag[(size_t)f % g.per_round]) flag = f;
        }
        ASSERT_TRUE(g.boomerangs.count(flag));
        int edge = ev.size() == 2 ? g.find_edge(ev[0], ev[1]) : -1;
        if (edge < 0) {
            int l = g.vertex_layer(ev[0]);
            for (int side : {0, 1}) {
                int cand = g.find_edge(ev[0], g.boundary_vertex(side, l));
                const auto &b = g.boomerangs.at(flag);
                if (cand >= 0 && std::find(b.begin(), b.end(), cand) != b.end()) edge = cand;
            }
        }
        const auto &b = g.boomerangs.at(flag);
        EXPECT_NE(std::find(b.begin(), b.end(), edge), b.end());
        ++checked;
    }
    EXPECT_EQ(checked > 0, !g.boomerangs.empty());
    for (auto &[f, list] : g.boomerangs) {
        EXPECT_FALSE(list.empty());
        EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
    }
}

INSTANTIATE_TEST_SUITE_P(Codes, GraphCases,
                         ::testing::Values(Case{Family::HeavyHexagon, 'X', 3}, Case{Family::HeavyHexagon, 'Z', 3},
                                           Case{Family::HeavySquare, 'X', 3}, Case{Family::HeavySquare, 'Z', 3},
                                           Case{Family::HeavyHexagon, 'X', 5}, Case{Family::HeavyHexagon, 'Z', 5},
                                           Case{Family::HeavySquare, 'X', 5}, Case{Family::HeavySquare, 'Z', 5}));

TEST(Graph, FlagsOnlyMatterWhereTheyFlagData) {
    Experiment hex(build_code(Family::HeavyHexagon, 5), 5);
    DecodingGraph hx = build_graph(hex, GraphKind::HexX2D, {1e-3});
    DecodingGraph hz = build_graph(hex, GraphKind::HexZ3D, {1e-3});
    EXPECT_TRUE(hx.boomerangs.empty());
    EXPECT_FALSE(hz.boomerangs.empty());
    Experiment sq(build_code(Family::HeavySquare, 5), 5);
    EXPECT_FALSE(build_graph(sq, GraphKind::SquareX3D, {1e-3}).boomerangs.empty());
    EXPECT_FALSE(build_graph(sq, GraphKind::SquareZ3D, {1e-3}).boomerangs.empty());
}

TEST(Graph, DiagonalPrimeEdgesSitInOddColumns) {
    for (int d : {5, 7}) {
        Experiment e(build_code(Family::HeavyHexagon, d), d);
        DecodingGraph g = build_graph(e, GraphKind::HexX2D, {1e-3});
        size_t seen = 0;
        for (const GraphEdge &ed : g.edges) {
            if (ed.label != "d1'") continue;
            auto supp = ed.correction.support();
            ASSERT_EQ(supp.size(), 1u);
            EXPECT_EQ(supp[0] % (uint32_t)d % 2, 1u);
            ++seen;
        }
        EXPECT_GT(seen, 0u);
    }
}

TEST(Graph, RejectsMismatchedKind) {
    Experiment e(build_code(Family::HeavySquare, 3), 3);
    EXPECT_THROW(build_graph(e, GraphKind::HexX2D, {1e-3}), std::invalid_argument);
    EXPECT_THROW(parse_graph_kind("hex-y-4d"), std::invalid_argument);
    EXPECT_EQ(parse_graph_kind("square-z-3d"), GraphKind::SquareZ3D);
    EXPECT_EQ(graph_kind_for(Family::HeavyHexagon, 'X'), GraphKind::HexX2D);
}

TEST(ClosedForm, FrozenValues) {
    // Independently evaluated from the printed sums.
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexX2D, "b1", 3, 1e-3), 0.005703876608221188, 1e-15);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexX2D, "bu", 3, 1e-3), 0.005703454358342582, 1e-15);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexX2D, "m", 3, 1e-3), 0.004782827115197661, 1e-15);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexX2D, "b1", 5, 1e-3), 0.010167784131897867, 1e-15);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexX2D, "bu", 5, 1e-3), 0.010167086737351047, 1e-15);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexX2D, "m", 5, 1e-3), 0.007683113981320688, 1e-15);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexX2D, "d1", 5, 1e-3), 0.002660275760399178, 1e-15);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexX2D, "d2", 5, 1e-3), 0.002129355355984408, 1e-15);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexX2D, "d1'", 5, 0.0015), 7.9968e-4, 1e-12);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::HexZ3D, "2D-TLBR", 5, 1e-3), 0.001731058858444185, 1e-15);
    EXPECT_NEAR(edge_probability_closed_form(GraphKind::SquareX3D, "3DV", 5, 1e-3), 0.0038536012644126948, 1e-15);
    EXPECT_EQ(edge_probability_closed_form(GraphKind::HexX2D, "d1", 7, 0.0), 0.0);
    EXPECT_EQ(edge_probability_closed_form(GraphKind::HexX2D, "d2", 7, 0.0), 0.0);
    EXPECT_THROW(edge_probability_closed_form(GraphKind::HexZ3D, "3DV", 5, 1e-3), std::invalid_argument);
    EXPECT_THROW(edge_probability_closed_form(GraphKind::HexX2D, "zz", 5, 1e-3), std::invalid_argument);
}

TEST(ClosedForm, AgreesWithEnumerationForMatchingLabels) {
    const double p = 1e-5;
    Experiment hex(build_code(Family::HeavyHexagon, 5), 5);
    DecodingGraph hx = build_graph(hex, GraphKind::HexX2D, {p, IdleModel::PerRoundData});
    DecodingGraph hz = build_graph(hex, GraphKind::HexZ3D, {p, IdleModel::PerRoundData});
    auto check = [&](const DecodingGraph &g, const std::string &label) {
        auto bulk = bulk_edges(g, hex, label);
        ASSERT_FALSE(bulk.empty()) << label;
        double cf = edge_probability_closed_form(g.kind, label, 5, p);
        for (int i : bulk) EXPECT_NEAR(edge_probability_enumerated(g, i) / cf, 1.0, 0.01) << label;
    };
    for (const char *l : {"b1", "bu", "d1", "d2", "d1'"}) check(hx, l);
    for (const char *l : {"2D-TLBR", "3D-TLBR"}) check(hz, l);
}

TEST(Export, JsonAndDot) {
    Experiment e(build_code(Family::HeavySquare, 3), 3);
    DecodingGraph g = build_graph(e, GraphKind::SquareZ3D, {2e-3});
    auto j = nlohmann::json::parse(g.to_json());
    EXPECT_EQ(j["format"], "heavylat-graph");
    EXPECT_EQ(j["version"], 1);
    ASSERT_EQ(j["edges"].size(), g.edges.size());
    const auto &e0 = j["edges"][0];
    for (const char *k : {"u", "v", "label", "P_E", "w_E"}) EXPECT_TRUE(e0.contains(k)) << k;
    EXPECT_DOUBLE_EQ(e0["P_E"].get<double>(), g.edges[0].probability);
    std::string dot = g.to_dot();
    EXPECT_EQ(dot.rfind("graph", 0), 0u);
    EXPECT_NE(dot.find(g.vertex_name(g.edges[0].u) + " -- " + g.vertex_name(g.edges[0].v)), std::string::npos);
}
