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

#ifndef HEAVYLAT_CIRCUIT_H
#define HEAVYLAT_CIRCUIT_H

#include <cstdint>
#include <string>
#include <vector>

#include "heavylat/code.h"
#include "heavylat/pauli.h"

namespace heavylat {

enum class GateKind : uint8_t { PrepZ, PrepX, CNOT, MeasZ, MeasX, Idle };

struct Gate {
    GateKind kind = GateKind::Idle;
    uint32_t q0 = 0;  // control for CNOT
    uint32_t q1 = 0;  // target for CNOT
    bool operator==(const Gate &) const = default;
};

struct TimeStep {
    std::vector<Gate> gates;
};

enum class MeasRole : uint8_t { Gauge, Flag };

struct MeasurementInfo {
    uint32_t qubit = 0;
    int step = 0;
    MeasRole role = MeasRole::Gauge;
    /// Type of the generator this measurement belongs to.
    char type = 'X';
    int generator = 0;
    Side side = Side::Left;
};

struct FlagEntry {
    uint32_t qubit = 0;
    char type = 'X';
    int generator = 0;
    Side side = Side::Left;
    int measurement = 0;
};

/// One round of syndrome extraction.
struct ScheduledCircuit {
    Family family = Family::HeavyHexagon;
    int distance = 3;
    size_t n_qubits = 0;
    std::vector<TimeStep> steps;
    /// Measurement events of one round in (step, gate) order.
    std::vector<MeasurementInfo> measurements;
    /// [step][gate] -> measurement index, or -1.
    std::vector<std::vector<int>> gate_measurement;
    std::vector<FlagEntry> flag_map;
    /// gauge index -> measurement index, per type.
    std::vector<int> x_gauge_measurement;
    std::vector<int> z_gauge_measurement;

    int depth() const { return (int)steps.size(); }
    size_t num_measurements() const { return measurements.size(); }
    int gauge_measurement(char type, int g) const {
        return type == 'X' ? x_gauge_measurement[g] : z_gauge_measurement[g];
    }
    std::string to_text() const;
};

ScheduledCircuit build_round(const CodeLayout &code);

/// Qubits carry only explicit gates: every step lists each qubit exactly once.
bool idle_complete(const ScheduledCircuit &c);

enum class FaultKind : uint8_t { Gate1, Gate2, Prep, Meas, Idle };

std::string fault_kind_name(FaultKind k);

struct FaultLocation {
    int round = 0;
    int step = 0;
    int gate = 0;
    FaultKind kind = FaultKind::Idle;
    bool operator==(const FaultLocation &) const = default;
};

/// Pauli codes: bit 0 = X, bit 1 = Z per qubit. For two-qubit locations
/// the low two bits act on q0 (control) and the next two on q1 (target).
/// Prep and measurement flips use code 1.
struct Fault {
    FaultLocation loc;
    uint8_t pauli = 0;
    bool operator==(const Fault &) const = default;
};

FaultKind location_kind(const Gate &g);
/// Number of nontrivial branches of a location: 3, 15 or 1.
int branch_count(FaultKind k);
std::string fault_pauli_text(FaultKind k, uint8_t pauli);

/// Final Pauli frame plus flipped measurements after several rounds.
struct FrameResult {
    int rounds = 0;
    size_t per_round = 0;
    /// rounds * per_round measurement flips.
    std::vector<uint8_t> meas;
    std::vector<uint8_t> x;
    std::vector<uint8_t> z;
};

/// Exact scalar frame propagation of faults through `rounds` repetitions.
FrameResult simulate_frames(const ScheduledCircuit &c, int rounds, std::vector<Fault> faults);

struct Propagation {
    PauliOp residual;
    /// (round, measurement index) of flipped gauge measurements.
    std::vector<std::pair<int, int>> syndrome_flips;
    std::vector<std::pair<int, int>> flag_flips;
};

Propagation propagate(const ScheduledCircuit &c, const Fault &fault, int rounds = 1);

struct CircuitReport {
    std::vector<std::string> violations;
    size_t verified = 0;
    bool ok() const { return violations.empty(); }
};

/// Back-propagates each measured observable to the start of the round and
/// compares it with the declared generator (identity for flags).
CircuitReport verify_measured_operators(const ScheduledCircuit &c, const CodeLayout &code);

struct FaultClass {
    Fault fault;
    PauliOp residual;
    /// 0, 1, or 2 meaning two or more, after reduction by the gauge group.
    int reduced_weight = 0;
    std::vector<int> flags;  // flipped flag measurement indices
    bool double_flag = false;
};

struct FaultTable {
    std::vector<FaultClass> entries;
    size_t unflagged_heavy = 0;
    size_t double_flag_with_data = 0;
};

/// Single-round single-fault classification over every location and Pauli.
FaultTable classify_single_faults(const ScheduledCircuit &c, const CodeLayout &code);

/// Minimum weight of op times a gauge-group element, saturating at 2.
int reduced_weight(const PauliOp &op, const CodeLayout &code);

}  // namespace heavylat

#endif
