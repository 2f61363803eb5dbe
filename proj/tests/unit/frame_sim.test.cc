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

#include <algorithm>

#include "heavylat/frame_sim.h"
#include "heavylat/noise.h"
#include "heavylat/rng.h"

using namespace heavylat;

namespace {

FaultLocation find_loc(const ScheduledCircuit &c, int round, int step, GateKind kind, uint32_t q) {
    const auto &gates = c.steps[step].gates;
    for (int k = 0; k < (int)gates.size(); ++k) {
        if (gates[k].kind == kind && gates[k].q0 == q) {
            return {round, step, k, location_kind(gates[k])};
        }
    }
    throw std::runtime_error("gate not found");
}

// Stabilizers of the given type whose support has qubit q, via the Pauli itself.
std::vector<int> touching(const CodeLayout &code, char type, uint32_t q) {
    std::vector<int> out;
    const auto &st = code.stabilizers(type);
    for (int s = 0; s < (int)st.size(); ++s) {
        if (type == 'X' ? st[s].has_x(q) : st[s].has_z(q)) {
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace

TEST(FrameSim, NoiselessShotIsQuiet) {
    for (Family f : {Family::HeavyHexagon, Family::HeavySquare}) {
        Experiment e(build_code(f, 5), 5);
        ShotResult r = run_shot(e.circuit(), e.rounds(), {});
        EXPECT_TRUE(e.detection_events(r.record, 'X').empty());
        EXPECT_TRUE(e.detection_events(r.record, 'Z').empty());
        EXPECT_TRUE(e.flag_events(r.record).empty());
        EXPECT_TRUE(r.residual.is_identity());
        EXPECT_EQ(e.num_detectors('X'), e.num_stabilizers('X') * 6);
    }
}

TEST(FrameSim, DataErrorFlipsFirstLayerOnly) {
    for (Family f : {Family::HeavyHexagon, Family::HeavySquare}) {
        Experiment e(build_code(f, 5), 4);
        const auto &c = e.circuit();
        for (uint32_t q : {0u, 6u, 12u, 24u}) {
            for (int round : {0, 2}) {
                Fault fx{find_loc(c, round, 0, GateKind::Idle, q), 1};
                ShotResult r = run_shot(c, e.rounds(), {fx});
                std::vector<int> want;
                for (int s : touching(e.code(), 'Z', q)) {
                    want.push_back(e.detector_id('Z', s, round));
                }
                std::sort(want.begin(), want.end());
                EXPECT_EQ(e.detection_events(r.record, 'Z'), want) << q;
                EXPECT_TRUE(e.detection_events(r.record, 'X').empty());
                EXPECT_EQ(r.residual, PauliOp::single(c.n_qubits, q, 'X'));

                Fault fz{find_loc(c, round, 0, GateKind::Idle, q), 2};
                r = run_shot(c, e.rounds(), {fz});
                want.clear();
                for (int s : touching(e.code(), 'X', q)) {
                    want.push_back(e.detector_id('X', s, round));
                }
                std::sort(want.begin(), want.end());
                EXPECT_EQ(e.detection_events(r.record, 'X'), want) << q;
                EXPECT_TRUE(e.detection_events(r.record, 'Z').empty());
            }
        }
    }
}

TEST(FrameSim, MeasurementErrorGivesTimelikePair) {
    Experiment e(build_code(Family::HeavyHexagon, 3), 3);
    const auto &c = e.circuit();
    int g = e.code().z_stabilizer_gauges[0][0];
    int m = c.z_gauge_measurement[g];
    const MeasurementInfo &info = c.measurements[m];
    Fault f{find_loc(c, 1, info.step, GateKind::MeasZ, info.qubit), 1};
    ShotResult r = run_shot(c, 3, {f});
    std::vector<int> want;
    for (int s = 0; s < (int)e.num_stabilizers('Z'); ++s) {
        const auto &gs = e.code().z_stabilizer_gauges[s];
        if (std::find(gs.begin(), gs.end(), g) != gs.end()) {
            want.push_back(e.detector_id('Z', s, 1));
            want.push_back(e.detector_id('Z', s, 2));
        }
    }
    std::sort(want.begin(), want.end());
    EXPECT_EQ(e.detection_events(r.record, 'Z'), want);
    EXPECT_TRUE(r.residual.is_identity());
}

TEST(FrameSim, BothFlagsOfOneGeneratorAreIgnored) {
    Experiment e(build_code(Family::HeavySquare, 3), 2);
    const auto &c = e.circuit();
    const FlagEntry &a = c.flag_map[0];
    int pm = e.flag_partner(a.measurement);
    ASSERT_GE(pm, 0);
    EXPECT_EQ(e.flag_partner(pm), a.measurement);
    const auto &ia = c.measurements[a.measurement];
    const auto &ib = c.measurements[pm];
    auto meas_loc = [&](const MeasurementInfo &info) {
        for (GateKind k : {GateKind::MeasX, GateKind::MeasZ}) {
            try {
                return find_loc(c, 1, info.step, k, info.qubit);
            } catch (const std::runtime_error &) {
            }
        }
        throw std::runtime_error("no measurement");
    };
    ShotResult one = run_shot(c, 2, {Fault{meas_loc(ia), 1}});
    auto fe = e.flag_events(one.record);
    ASSERT_EQ(fe.size(), 1u);
    EXPECT_FALSE(fe[0].ignored);
    EXPECT_EQ(fe[0].round, 1);
    EXPECT_EQ(e.shot_data(one).flags, std::vector<int>{(int)e.per_round() + a.measurement});

    ShotResult both = run_shot(c, 2, {Fault{meas_loc(ia), 1}, Fault{meas_loc(ib), 1}});
    fe = e.flag_events(both.record);
    ASSERT_EQ(fe.size(), 2u);
    EXPECT_TRUE(fe[0].ignored && fe[1].ignored);
    EXPECT_TRUE(e.shot_data(both).flags.empty());
}

TEST(FrameSim, BatchMatchesScalarShots) {
    for (Family f : {Family::HeavyHexagon, Family::HeavySquare}) {
        for (int d : {3, 5}) {
            Experiment e(build_code(f, d), d);
            FaultSampler sampler(e.circuit(), d, {0.02, IdleModel::Full});
            std::vector<const simd::Kernels *> ks{&simd::scalar_kernels()};
            if (simd::avx2_kernels() && simd::cpu_supports_avx2()) {
                ks.push_back(simd::avx2_kernels());
            }
            for (size_t lanes : {BatchSimulator::kLanes, size_t{70}}) {
                std::vector<std::vector<Fault>> faults(lanes);
                for (size_t i = 0; i < lanes; ++i) {
                    auto rng = stream_rng(stream_key(11, (uint64_t)d), i);
                    sampler.sample(rng, faults[i]);
                }
                std::vector<std::vector<ShotData>> results;
                for (const simd::Kernels *k : ks) {
                    BatchSimulator sim(e, *k);
                    std::vector<ShotData> out;
                    sim.run(faults, out);
                    ASSERT_EQ(out.size(), lanes);
                    for (size_t i = 0; i < lanes; ++i) {
                        ShotData ref = e.shot_data(run_shot(e.circuit(), d, faults[i]));
                        EXPECT_EQ(out[i].events_x, ref.events_x) << k->name << " lane " << i;
                        EXPECT_EQ(out[i].events_z, ref.events_z) << k->name << " lane " << i;
                        EXPECT_EQ(out[i].flags, ref.flags) << k->name << " lane " << i;
                        EXPECT_EQ(out[i].residual_x, ref.residual_x) << k->name << " lane " << i;
                        EXPECT_EQ(out[i].residual_z, ref.residual_z) << k->name << " lane " << i;
                    }
                    results.push_back(out);
                }
            }
        }
    }
}

TEST(FrameSim, BatchRejectsBadInput) {
    Experiment e(build_code(Family::HeavyHexagon, 3), 2);
    BatchSimulator sim(e);
    std::vector<ShotData> out;
    std::vector<std::vector<Fault>> too_many(BatchSimulator::kLanes + 1);
    EXPECT_THROW(sim.run(too_many, out), std::invalid_argument);
    std::vector<std::vector<Fault>> bad(1);
    bad[0].push_back(Fault{{5, 0, 0, FaultKind::Idle}, 1});
    EXPECT_THROW(sim.run(bad, out), std::invalid_argument);
    EXPECT_THROW(Experiment(build_code(Family::HeavyHexagon, 3), 0), std::invalid_argument);
}
