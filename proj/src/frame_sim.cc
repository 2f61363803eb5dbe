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

#include "heavylat/frame_sim.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace heavylat {

void ShotData::clear() {
    events_x.clear();
    events_z.clear();
    flags.clear();
    residual_x.clear();
    residual_z.clear();
}

ShotResult run_shot(const ScheduledCircuit &c, int rounds, const std::vector<Fault> &faults) {
    FrameResult fr = simulate_frames(c, rounds, faults);
    ShotResult out;
    size_t nd = (size_t)c.distance * (size_t)c.distance;
    out.record.rounds = rounds;
    out.record.per_round = fr.per_round;
    out.record.meas = std::move(fr.meas);
    out.record.final_x.assign(fr.x.begin(), fr.x.begin() + (long)nd);
    out.record.final_z.assign(fr.z.begin(), fr.z.begin() + (long)nd);
    std::vector<uint32_t> xs, zs;
    for (uint32_t q = 0; q < nd; ++q) {
        if (fr.x[q]) {
            xs.push_back(q);
        }
        if (fr.z[q]) {
            zs.push_back(q);
        }
    }
    out.residual = PauliOp(c.n_qubits, xs, zs);
    return out;
}

Experiment::Experiment(CodeLayout code, int rounds) : code_(std::move(code)), rounds_(rounds) {
    if (rounds < 1) {
        throw std::invalid_argument("rounds must be positive");
    }
    circuit_ = build_round(code_);
    for (char t : {'X', 'Z'}) {
        auto &sm = stab_meas_[idx(t)];
        auto &ss = stab_support_[idx(t)];
        for (size_t s = 0; s < code_.stabilizers(t).size(); ++s) {
            std::vector<int> ms;
            for (int g : code_.stabilizer_gauges(t)[s]) {
                ms.push_back(circuit_.gauge_measurement(t, g));
            }
            sm.push_back(ms);
            const PauliOp &op = code_.stabilizers(t)[s];
            ss.push_back(t == 'X' ? op.x_support() : op.z_support());
        }
    }
    flag_partner_.assign(circuit_.num_measurements(), -1);
    for (const FlagEntry &a : circuit_.flag_map) {
        for (const FlagEntry &b : circuit_.flag_map) {
            if (a.type == b.type && a.generator == b.generator && a.side != b.side) {
                flag_partner_[a.measurement] = b.measurement;
            }
        }
    }
}

uint8_t Experiment::stabilizer_outcome(const MeasurementRecord &r, char type, int round, int s) const {
    uint8_t v = 0;
    size_t base = (size_t)round * r.per_round;
    for (int m : stabilizer_measurements(type, s)) {
        v ^= r.meas[base + (size_t)m];
    }
    return v;
}

uint8_t Experiment::final_stabilizer(const MeasurementRecord &r, char type, int s) const {
    // X stabilizers are read from the X-basis readout, which sees Z errors.
    const auto &bits = type == 'X' ? r.final_z : r.final_x;
    uint8_t v = 0;
    for (uint32_t q : stabilizer_support(type, s)) {
        v ^= bits[q];
    }
    return v;
}

std::vector<int> Experiment::detection_events(const MeasurementRecord &r, char type) const {
    std::vector<int> ev;
    int ns = (int)num_stabilizers(type);
    std::vector<uint8_t> prev(ns, 0);
    for (int layer = 0; layer <= rounds_; ++layer) {
        for (int s = 0; s < ns; ++s) {
            uint8_t cur = layer < rounds_ ? stabilizer_outcome(r, type, layer, s) : final_stabilizer(r, type, s);
            if (cur != prev[s]) {
                ev.push_back(detector_id(type, s, layer));
            }
            prev[s] = cur;
        }
    }
    return ev;
}

std::vector<FlagEvent> Experiment::flag_events(const MeasurementRecord &r) const {
    std::vector<FlagEvent> out;
    for (int round = 0; round < r.rounds; ++round) {
        size_t base = (size_t)round * r.per_round;
        for (size_t m = 0; m < r.per_round; ++m) {
            const MeasurementInfo &info = circuit_.measurements[m];
            if (info.role != MeasRole::Flag || !r.meas[base + m]) {
                continue;
            }
            FlagEvent e;
            e.round = round;
            e.measurement = (int)m;
            e.type = info.type;
            e.generator = info.generator;
            e.side = info.side;
            e.ignored = r.meas[base + (size_t)flag_partner_[m]] != 0;
            out.push_back(e);
        }
    }
    return out;
}

ShotData Experiment::shot_data(const ShotResult &shot) const {
    ShotData d;
    d.events_x = detection_events(shot.record, 'X');
    d.events_z = detection_events(shot.record, 'Z');
    for (const FlagEvent &e : flag_events(shot.record)) {
        if (!e.ignored) {
            d.flags.push_back(e.id(per_round()));
        }
    }
    d.residual_x = shot.residual.x_support();
    d.residual_z = shot.residual.z_support();
    return d;
}

BatchSimulator::BatchSimulator(const Experiment &exp, const simd::Kernels &kernels) : exp_(exp), k_(kernels) {
    size_t n = exp.circuit().n_qubits;
    x_.assign(n * kWords, 0);
    z_.assign(n * kWords, 0);
    meas_.assign((size_t)exp.rounds() * exp.per_round() * kWords, 0);
}

bool BatchSimulator::meas_bit(size_t lane, int round, int m) const {
    size_t i = ((size_t)round * exp_.per_round() + (size_t)m) * kWords;
    return (meas_[i + lane / 64] >> (lane % 64)) & 1;
}

namespace {

inline void flip(uint64_t *w, uint32_t lane) { w[lane / 64] ^= uint64_t{1} << (lane % 64); }

template <class F>
inline void for_each_lane(const uint64_t *w, size_t nwords, F f) {
    for (size_t k = 0; k < nwords; ++k) {
        uint64_t v = w[k];
        while (v) {
            f((uint32_t)(k * 64 + (size_t)std::countr_zero(v)));
            v &= v - 1;
        }
    }
}

}  // namespace

void BatchSimulator::run(const std::vector<std::vector<Fault>> &lane_faults, std::vector<ShotData> &out) {
    if (lane_faults.size() > kLanes) {
        throw std::invalid_argument("too many lanes");
    }
    const ScheduledCircuit &c = exp_.circuit();
    const int rounds = exp_.rounds();
    const size_t M = exp_.per_round();
    std::fill(x_.begin(), x_.end(), 0);
    std::fill(z_.begin(), z_.end(), 0);
    std::fill(meas_.begin(), meas_.end(), 0);

    pending_.clear();
    for (size_t lane = 0; lane < lane_faults.size(); ++lane) {
        for (const Fault &f : lane_faults[lane]) {
            if (f.loc.round < 0 || f.loc.round >= rounds || f.loc.step < 0 || f.loc.step >= c.depth() ||
                f.loc.gate < 0 || (size_t)f.loc.gate >= c.steps[f.loc.step].gates.size()) {
                throw std::invalid_argument("fault location out of range");
            }
            pending_.push_back({f.loc.round, f.loc.step, (uint32_t)lane, f});
        }
    }
    std::stable_sort(pending_.begin(), pending_.end(), [](const Pending &a, const Pending &b) {
        return a.round != b.round ? a.round < b.round : a.step < b.step;
    });

    size_t pi = 0;
    for (int round = 0; round < rounds; ++round) {
        for (int s = 0; s < c.depth(); ++s) {
            const auto &gates = c.steps[s].gates;
            for (size_t g = 0; g < gates.size(); ++g) {
                const Gate &gt = gates[g];
                switch (gt.kind) {
                    case GateKind::PrepZ:
                    case GateKind::PrepX:
                        std::fill_n(xw(gt.q0), kWords, 0);
                        std::fill_n(zw(gt.q0), kWords, 0);
                        break;
                    case GateKind::CNOT:
                        k_.cnot(xw(gt.q0), zw(gt.q0), xw(gt.q1), zw(gt.q1), kWords);
                        break;
                    case GateKind::MeasZ:
                        std::copy_n(xw(gt.q0), kWords, mw(round, c.gate_measurement[s][g]));
                        break;
                    case GateKind::MeasX:
                        std::copy_n(zw(gt.q0), kWords, mw(round, c.gate_measurement[s][g]));
                        break;
                    case GateKind::Idle:
                        break;
                }
            }
            while (pi < pending_.size() && pending_[pi].round == round && pending_[pi].step == s) {
                const Pending &p = pending_[pi++];
                const Gate &gt = gates[p.fault.loc.gate];
                uint8_t pa = p.fault.pauli;
                if (location_kind(gt) != p.fault.loc.kind) {
                    throw std::invalid_argument("fault kind does not match gate");
                }
                switch (p.fault.loc.kind) {
                    case FaultKind::Gate2:
                        if (pa & 1) flip(xw(gt.q0), p.lane);
                        if (pa & 2) flip(zw(gt.q0), p.lane);
                        if (pa & 4) flip(xw(gt.q1), p.lane);
                        if (pa & 8) flip(zw(gt.q1), p.lane);
                        break;
                    case FaultKind::Gate1:
                    case FaultKind::Idle:
                        if (pa & 1) flip(xw(gt.q0), p.lane);
                        if (pa & 2) flip(zw(gt.q0), p.lane);
                        break;
                    case FaultKind::Prep:
                        flip(gt.kind == GateKind::PrepZ ? xw(gt.q0) : zw(gt.q0), p.lane);
                        break;
                    case FaultKind::Meas:
                        flip(mw(round, c.gate_measurement[s][p.fault.loc.gate]), p.lane);
                        break;
                }
            }
        }
    }

    out.resize(lane_faults.size());
    for (auto &d : out) {
        d.clear();
    }
    const size_t lanes = lane_faults.size();
    const size_t nwords = (lanes + 63) / 64;
    auto in_range = [&](uint32_t lane) { return lane < lanes; };

    uint64_t cur[kWords], prev[kWords], diff[kWords];
    for (char t : {'X', 'Z'}) {
        int ns = (int)exp_.num_stabilizers(t);
        std::vector<uint64_t> last((size_t)ns * kWords, 0);
        for (int layer = 0; layer <= rounds; ++layer) {
            for (int s = 0; s < ns; ++s) {
                std::fill_n(cur, kWords, 0);
                if (layer < rounds) {
                    for (int m : exp_.stabilizer_measurements(t, s)) {
                        k_.xor_into(cur, mw(layer, m), kWords);
                    }
                } else {
                    for (uint32_t q : exp_.stabilizer_support(t, s)) {
                        k_.xor_into(cur, t == 'X' ? zw(q) : xw(q), kWords);
                    }
                }
                std::copy_n(&last[(size_t)s * kWords], kWords, prev);
                k_.xor3(diff, cur, prev, kWords);
                std::copy_n(cur, kWords, &last[(size_t)s * kWords]);
                int id = exp_.detector_id(t, s, layer);
                for_each_lane(diff, nwords, [&](uint32_t lane) {
                    if (in_range(lane)) out[lane].events(t).push_back(id);
                });
            }
        }
    }
    for (int round = 0; round < rounds; ++round) {
        for (size_t m = 0; m < M; ++m) {
            if (c.measurements[m].role != MeasRole::Flag) {
                continue;
            }
            const uint64_t *a = mw(round, (int)m);
            const uint64_t *b = mw(round, exp_.flag_partner((int)m));
            for (size_t k = 0; k < kWords; ++k) {
                diff[k] = a[k] & ~b[k];
            }
            int id = round * (int)M + (int)m;
            for_each_lane(diff, nwords, [&](uint32_t lane) {
                if (in_range(lane)) out[lane].flags.push_back(id);
            });
        }
    }
    uint32_t nd = (uint32_t)(exp_.code().distance * exp_.code().distance);
    for (uint32_t q = 0; q < nd; ++q) {
        for_each_lane(xw(q), nwords, [&](uint32_t lane) {
            if (in_range(lane)) out[lane].residual_x.push_back(q);
        });
        for_each_lane(zw(q), nwords, [&](uint32_t lane) {
            if (in_range(lane)) out[lane].residual_z.push_back(q);
        });
    }
}

}  // namespace heavylat
