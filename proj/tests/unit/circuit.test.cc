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

#include "heavylat/circuit.h"

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

using namespace heavylat;

namespace {

int find_gate(const ScheduledCircuit &c, int step, GateKind kind, uint32_t q0, uint32_t q1 = 0) {
    const auto &gates = c.steps[step].gates;
    for (size_t k = 0; k < gates.size(); ++k) {
        if (gates[k].kind == kind && gates[k].q0 == q0 && (kind != GateKind::CNOT || gates[k].q1 == q1)) {
            return (int)k;
        }
    }
    return -1;
}

const MeasuredGenerator &bulk_x_face(const CodeLayout &code) {
    for (const MeasuredGenerator &m : code.x_measured) {
        if (m.has_flags() && code.qubits[m.syndrome].coord == Coord{4, 4}) {
            return m;
        }
    }
    throw std::logic_error("no bulk face");
}

}  // namespace

TEST(circuit_builder, depths) {
    for (int d = 3; d <= 9; d += 2) {
        EXPECT_EQ(build_round(build_heavy_hexagon(d)).depth(), 11);
        EXPECT_EQ(build_round(build_heavy_square(d)).depth(), 14);
    }
}

TEST(circuit_builder, idle_completeness) {
    for (Family f : {Family::HeavyHexagon, Family::HeavySquare}) {
        ScheduledCircuit c = build_round(build_code(f, 5));
        EXPECT_TRUE(idle_complete(c));
        size_t total = 0;
        for (const TimeStep &ts : c.steps) {
            for (const Gate &g : ts.gates) {
                total += g.kind == GateKind::CNOT ? 2 : 1;
            }
        }
        EXPECT_EQ(total, c.n_qubits * (size_t)c.depth());
    }
}

TEST(circuit_builder, deterministic) {
    CodeLayout code = build_heavy_square(5);
    EXPECT_EQ(build_round(code).to_text(), build_round(build_heavy_square(5)).to_text());
}

TEST(circuit_builder, measured_operators_verify) {
    for (int d : {3, 5, 7}) {
        for (Family f : {Family::HeavyHexagon, Family::HeavySquare}) {
            CodeLayout code = build_code(f, d);
            ScheduledCircuit c = build_round(code);
            CircuitReport r = verify_measured_operators(c, code);
            EXPECT_TRUE(r.ok()) << family_name(f) << " d=" << d << ": " << (r.ok() ? "" : r.violations[0]);
            EXPECT_EQ(r.verified, c.num_measurements());
        }
    }
    CodeLayout hex3 = build_heavy_hexagon(3);
    // 4 X gauges and 6 Z gauges plus 4 flag readouts.
    EXPECT_EQ(build_round(hex3).num_measurements(), 4u + 6u + 4u);
}

TEST(circuit_builder, swapped_steps_are_reported) {
    CodeLayout code = build_heavy_hexagon(5);
    ScheduledCircuit c = build_round(code);
    std::swap(c.steps[1], c.steps[2]);
    std::swap(c.gate_measurement[1], c.gate_measurement[2]);
    EXPECT_FALSE(verify_measured_operators(c, code).ok());
}

TEST(circuit_builder, hook_fault_raises_one_flag) {
    CodeLayout code = build_heavy_square(5);
    ScheduledCircuit c = build_round(code);
    const MeasuredGenerator &g = bulk_x_face(code);
    int gate = find_gate(c, 1, GateKind::CNOT, g.syndrome, (uint32_t)g.flags[0]);
    ASSERT_GE(gate, 0);
    Propagation p = propagate(c, Fault{{0, 1, gate, FaultKind::Gate2}, 1});
    EXPECT_EQ(p.residual.weight(), 2u);
    EXPECT_EQ(p.residual.x_support().size(), 2u);
    EXPECT_TRUE(p.residual.has_x((uint32_t)g.corners[2]));
    EXPECT_TRUE(p.residual.has_x((uint32_t)g.corners[3]));
    ASSERT_EQ(p.flag_flips.size(), 1u);
    EXPECT_EQ(c.measurements[p.flag_flips[0].second].side, Side::Left);
}

TEST(circuit_builder, flag_measurement_flip) {
    CodeLayout code = build_heavy_hexagon(5);
    ScheduledCircuit c = build_round(code);
    const FlagEntry &f = c.flag_map[0];
    int gate = find_gate(c, 6, GateKind::MeasZ, f.qubit);
    ASSERT_GE(gate, 0);
    Propagation p = propagate(c, Fault{{0, 6, gate, FaultKind::Meas}, 1});
    EXPECT_TRUE(p.residual.is_identity());
    EXPECT_TRUE(p.syndrome_flips.empty());
    ASSERT_EQ(p.flag_flips.size(), 1u);
    EXPECT_EQ(p.flag_flips[0].second, f.measurement);
}

TEST(circuit_builder, data_error_flips_adjacent_plaquettes) {
    CodeLayout code = build_heavy_hexagon(5);
    ScheduledCircuit c = build_round(code);
    uint32_t q = code.data_qubit(3, 3);
    int gate = find_gate(c, 0, GateKind::Idle, q);
    ASSERT_GE(gate, 0);
    Propagation p = propagate(c, Fault{{0, 0, gate, FaultKind::Idle}, 1}, 2);
    // Stabilizer flips in each round: XOR of the member gauge flips.
    for (int r = 0; r < 2; ++r) {
        int flipped = 0;
        for (size_t s = 0; s < code.z_stabilizers.size(); ++s) {
            int v = 0;
            for (int g : code.z_stabilizer_gauges[s]) {
                int m = c.gauge_measurement('Z', g);
                for (auto [rr, mm] : p.syndrome_flips) {
                    v ^= (rr == r && mm == m);
                }
            }
            if (v) {
                ++flipped;
                EXPECT_TRUE(code.z_stabilizers[s].has_z(q));
            }
        }
        EXPECT_EQ(flipped, 2);
    }
}

TEST(circuit_builder, fault_gate_mismatch) {
    ScheduledCircuit c = build_round(build_heavy_hexagon(3));
    int gate = find_gate(c, 0, GateKind::Idle, 0);
    EXPECT_THROW(propagate(c, Fault{{0, 0, gate, FaultKind::Gate2}, 5}), std::invalid_argument);
}

TEST(circuit_builder, identity_fault_does_nothing) {
    ScheduledCircuit c = build_round(build_heavy_square(3));
    Propagation p = propagate(c, Fault{{0, 2, 0, FaultKind::Gate2}, 0}, 2);
    EXPECT_TRUE(p.residual.is_identity());
    EXPECT_TRUE(p.syndrome_flips.empty());
    EXPECT_TRUE(p.flag_flips.empty());
}

TEST(circuit_builder, flag_soundness) {
    for (int d : {3, 5}) {
        for (Family f : {Family::HeavyHexagon, Family::HeavySquare}) {
            CodeLayout code = build_code(f, d);
            FaultTable t = classify_single_faults(build_round(code), code);
            EXPECT_EQ(t.unflagged_heavy, 0u) << family_name(f) << " d=" << d;
            EXPECT_EQ(t.double_flag_with_data, 0u) << family_name(f) << " d=" << d;
            size_t doubles = 0;
            for (const FaultClass &e : t.entries) {
                doubles += e.double_flag;
            }
            EXPECT_GT(doubles, 0u);
        }
    }
}

TEST(circuit_builder, golden_text) {
    for (const char *name : {"hex3", "square3"}) {
        Family f = std::string(name) == "hex3" ? Family::HeavyHexagon : Family::HeavySquare;
        std::ifstream in(std::string(HEAVYLAT_TEST_DATA) + "/circuit_" + name + ".txt");
        ASSERT_TRUE(in.good()) << name;
        std::stringstream ss;
        ss << in.rdbuf();
        EXPECT_EQ(build_round(build_code(f, 3)).to_text(), ss.str()) << name;
    }
}

// Flagged weight-two X errors stay in one row, across the X logical column;
// flagged weight-two Z errors stay in one row, along the Z logical row.
TEST(circuit_builder, square_hooks_run_along_rows) {
    for (int d : {3, 5, 7}) {
        CodeLayout code = build_heavy_square(d);
        FaultTable t = classify_single_faults(build_round(code), code);
        size_t hooks_x = 0, hooks_z = 0;
        for (const FaultClass &e : t.entries) {
            if (e.reduced_weight < 2 || e.flags.empty()) {
                continue;
            }
            for (bool x : {true, false}) {
                std::vector<uint32_t> sup = x ? e.residual.x_support() : e.residual.z_support();
                std::set<uint32_t> rows;
                for (uint32_t q : sup) {
                    ASSERT_LT(q, (uint32_t)(d * d));
                    rows.insert(q / (uint32_t)d);
                }
                if (sup.size() >= 2) {
                    EXPECT_EQ(rows.size(), 1u) << "d=" << d << " " << e.residual.str();
                    ++(x ? hooks_x : hooks_z);
                }
            }
        }
        EXPECT_GT(hooks_x, 0u);
        EXPECT_GT(hooks_z, 0u);
    }
}
