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

#ifndef HEAVYLAT_FRAME_SIM_H
#define HEAVYLAT_FRAME_SIM_H

#include <array>
#include <vector>

#include "heavylat/circuit.h"
#include "heavylat/code.h"
#include "heavylat/simd.h"

namespace heavylat {

/// Outcomes of one shot as flips relative to the noiseless reference.
struct MeasurementRecord {
    int rounds = 0;
    size_t per_round = 0;
    /// rounds * per_round gauge and flag outcomes.
    std::vector<uint8_t> meas;
    /// Final transversal data readout in the Z basis (decodes X errors).
    std::vector<uint8_t> final_x;
    /// Final transversal data readout in the X basis (decodes Z errors).
    std::vector<uint8_t> final_z;
};

struct ShotResult {
    MeasurementRecord record;
    PauliOp residual;
};

/// Exact frame propagation of one shot through `rounds` rounds plus readout.
ShotResult run_shot(const ScheduledCircuit &c, int rounds, const std::vector<Fault> &faults);

struct FlagEvent {
    int round = 0;
    int measurement = 0;
    char type = 'X';
    int generator = 0;
    Side side = Side::Left;
    /// Both flags of the same generator instance fired.
    bool ignored = false;
    int id(size_t per_round) const { return round * (int)per_round + measurement; }
};

/// Compact per-shot view consumed by the decoders.
struct ShotData {
    std::vector<int> events_x;
    std::vector<int> events_z;
    /// Usable flag ids round * per_round + measurement, ascending.
    std::vector<int> flags;
    std::vector<uint32_t> residual_x;
    std::vector<uint32_t> residual_z;
    std::vector<int> &events(char type) { return type == 'X' ? events_x : events_z; }
    const std::vector<int> &events(char type) const { return type == 'X' ? events_x : events_z; }
    void clear();
};

/// A code, its round circuit and the detector definitions for `rounds` rounds.
class Experiment {
   public:
    Experiment(CodeLayout code, int rounds);

    const CodeLayout &code() const { return code_; }
    const ScheduledCircuit &circuit() const { return circuit_; }
    int rounds() const { return rounds_; }
    size_t per_round() const { return circuit_.num_measurements(); }

    size_t num_stabilizers(char type) const { return code_.stabilizers(type).size(); }
    int num_layers() const { return rounds_ + 1; }
    size_t num_detectors(char type) const { return num_stabilizers(type) * (size_t)num_layers(); }
    int detector_id(char type, int stab, int layer) const { return layer * (int)num_stabilizers(type) + stab; }
    int detector_stabilizer(char type, int id) const { return id % (int)num_stabilizers(type); }
    int detector_layer(char type, int id) const { return id / (int)num_stabilizers(type); }

    /// Measurement indices whose XOR is stabilizer s in one round.
    const std::vector<int> &stabilizer_measurements(char type, int s) const { return stab_meas_[idx(type)][s]; }
    const std::vector<uint32_t> &stabilizer_support(char type, int s) const { return stab_support_[idx(type)][s]; }
    /// Other side's flag measurement, or -1 for non-flag measurements.
    int flag_partner(int m) const { return flag_partner_[m]; }

    uint8_t stabilizer_outcome(const MeasurementRecord &r, char type, int round, int s) const;
    uint8_t final_stabilizer(const MeasurementRecord &r, char type, int s) const;

    std::vector<int> detection_events(const MeasurementRecord &r, char type) const;
    std::vector<FlagEvent> flag_events(const MeasurementRecord &r) const;
    ShotData shot_data(const ShotResult &shot) const;

   private:
    static int idx(char type) { return type == 'X' ? 0 : 1; }
    CodeLayout code_;
    ScheduledCircuit circuit_;
    int rounds_;
    std::array<std::vector<std::vector<int>>, 2> stab_meas_;
    std::array<std::vector<std::vector<uint32_t>>, 2> stab_support_;
    std::vector<int> flag_partner_;
};

/// Bit-parallel frame simulator: one shot per bit lane.
class BatchSimulator {
   public:
    static constexpr size_t kWords = 4;
    static constexpr size_t kLanes = 64 * kWords;

    explicit BatchSimulator(const Experiment &exp, const simd::Kernels &kernels = simd::best_kernels());

    /// Simulates lane_faults.size() <= kLanes shots; out is resized to match.
    void run(const std::vector<std::vector<Fault>> &lane_faults, std::vector<ShotData> &out);

    /// Raw measurement words of the last run, for tests.
    bool meas_bit(size_t lane, int round, int m) const;

   private:
    uint64_t *xw(uint32_t q) { return &x_[q * kWords]; }
    uint64_t *zw(uint32_t q) { return &z_[q * kWords]; }
    uint64_t *mw(int round, int m) { return &meas_[((size_t)round * exp_.per_round() + (size_t)m) * kWords]; }

    const Experiment &exp_;
    const simd::Kernels &k_;
    std::vector<uint64_t> x_, z_, meas_;
    struct Pending {
        int round, step;
        uint32_t lane;
        Fault fault;
    };
    std::vector<Pending> pending_;
};

}  // namespace heavylat

#endif
