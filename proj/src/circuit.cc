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

#include <algorithm>
#include <map>
#include <stdexcept>

#include "heavylat/gf2.h"

namespace heavylat {

namespace {

class Builder {
   public:
    Builder(size_t n, int depth) : n_(n), steps_(depth), used_(depth, std::vector<bool>(n, false)) {}

    void add(int step, Gate g) {
        int s = step - 1;
        claim(s, g.q0);
        if (g.kind == GateKind::CNOT) {
            claim(s, g.q1);
        }
        steps_[s].push_back(g);
    }

    void measure(int step, GateKind kind, uint32_t q, MeasurementInfo info) {
        info.qubit = q;
        info.step = step - 1;
        add(step, {kind, q, 0});
        pending_[{step - 1, q}] = info;
    }

    ScheduledCircuit finish(const CodeLayout &code) {
        ScheduledCircuit c;
        c.family = code.family;
        c.distance = code.distance;
        c.n_qubits = n_;
        c.x_gauge_measurement.assign(code.x_gauge.size(), -1);
        c.z_gauge_measurement.assign(code.z_gauge.size(), -1);
        for (size_t s = 0; s < steps_.size(); ++s) {
            TimeStep ts;
            ts.gates = steps_[s];
            for (uint32_t q = 0; q < n_; ++q) {
                if (!used_[s][q]) {
                    ts.gates.push_back({GateKind::Idle, q, 0});
                }
            }
            std::vector<int> gm(ts.gates.size(), -1);
            for (size_t k = 0; k < ts.gates.size(); ++k) {
                const Gate &g = ts.gates[k];
                if (g.kind != GateKind::MeasZ && g.kind != GateKind::MeasX) {
                    continue;
                }
                MeasurementInfo info = pending_.at({(int)s, g.q0});
                int idx = (int)c.measurements.size();
                gm[k] = idx;
                c.measurements.push_back(info);
                if (info.role == MeasRole::Gauge) {
                    (info.type == 'X' ? c.x_gauge_measurement : c.z_gauge_measurement)[info.generator] = idx;
                } else {
                    c.flag_map.push_back({g.q0, info.type, info.generator, info.side, idx});
                }
            }
            c.gate_measurement.push_back(gm);
            c.steps.push_back(std::move(ts));
        }
        return c;
    }

   private:
    void claim(int s, uint32_t q) {
        if (q >= n_) {
            throw std::logic_error("gate on qubit out of range");
        }
        if (used_[s][q]) {
            throw std::logic_error("qubit " + std::to_string(q) + " used twice in step " + std::to_string(s + 1));
        }
        used_[s][q] = true;
    }

    size_t n_;
    std::vector<std::vector<Gate>> steps_;
    std::vector<std::vector<bool>> used_;
    std::map<std::pair<int, uint32_t>, MeasurementInfo> pending_;
};

Gate cnot(int c, int t) { return {GateKind::CNOT, (uint32_t)c, (uint32_t)t}; }

MeasurementInfo gauge_info(char type, int k) {
    MeasurementInfo m;
    m.role = MeasRole::Gauge;
    m.type = type;
    m.generator = k;
    return m;
}

MeasurementInfo flag_info(char type, int k, Side side) {
    MeasurementInfo m;
    m.role = MeasRole::Flag;
    m.type = type;
    m.generator = k;
    m.side = side;
    return m;
}

}  // namespace

ScheduledCircuit build_round(const CodeLayout &code) {
    int d = code.distance;
    bool hex = code.family == Family::HeavyHexagon;
    Builder b(code.n_qubits(), hex ? 11 : 14);

    for (size_t k = 0; k < code.x_measured.size(); ++k) {
        const MeasuredGenerator &g = code.x_measured[k];
        int s = (int)g.syndrome;
        b.add(1, {GateKind::PrepX, (uint32_t)s, 0});
        if (g.has_flags()) {
            int fl = g.flags[0], fr = g.flags[1];
            int tl = g.corners[0], tr = g.corners[1], bl = g.corners[2], br = g.corners[3];
            b.add(1, {GateKind::PrepZ, (uint32_t)fl, 0});
            b.add(1, {GateKind::PrepZ, (uint32_t)fr, 0});
            b.add(2, cnot(s, fl));
            b.add(3, cnot(s, fr));
            // Hex flags pair data by column, square flags by row.
            int fl2 = hex ? bl : tr, fr2 = hex ? tr : bl;
            b.add(3, cnot(fl, tl));
            b.add(4, cnot(fl, fl2));
            b.add(4, cnot(fr, br));
            b.add(5, cnot(fr, fr2));
            b.add(5, cnot(s, fl));
            b.add(6, cnot(s, fr));
            b.measure(7, GateKind::MeasZ, (uint32_t)fl, flag_info('X', (int)k, Side::Left));
            b.measure(7, GateKind::MeasZ, (uint32_t)fr, flag_info('X', (int)k, Side::Right));
        } else {
            bool top = g.data[0] / (uint32_t)d == 0;
            b.add(2, cnot(s, (int)g.data[0]));
            b.add(top ? 4 : 3, cnot(s, (int)g.data[1]));
        }
        b.measure(7, GateKind::MeasX, (uint32_t)s, gauge_info('X', (int)k));
    }

    for (size_t k = 0; k < code.z_measured.size(); ++k) {
        const MeasuredGenerator &g = code.z_measured[k];
        int s = (int)g.syndrome;
        if (hex) {
            b.add(8, {GateKind::PrepZ, (uint32_t)s, 0});
            b.add(9, cnot((int)g.data[0], s));
            b.add(10, cnot((int)g.data[1], s));
            b.measure(11, GateKind::MeasZ, (uint32_t)s, gauge_info('Z', (int)k));
            continue;
        }
        b.add(8, {GateKind::PrepZ, (uint32_t)s, 0});
        if (g.has_flags()) {
            int fl = g.flags[0], fr = g.flags[1];
            int tl = g.corners[0], tr = g.corners[1], bl = g.corners[2], br = g.corners[3];
            b.add(8, {GateKind::PrepX, (uint32_t)fl, 0});
            b.add(8, {GateKind::PrepX, (uint32_t)fr, 0});
            b.add(9, cnot(fl, s));
            b.add(10, cnot(fr, s));
            b.add(10, cnot(tl, fl));
            b.add(11, cnot(tr, fl));
            b.add(11, cnot(br, fr));
            b.add(12, cnot(bl, fr));
            b.add(12, cnot(fl, s));
            b.add(13, cnot(fr, s));
            b.measure(14, GateKind::MeasX, (uint32_t)fl, flag_info('Z', (int)k, Side::Left));
            b.measure(14, GateKind::MeasX, (uint32_t)fr, flag_info('Z', (int)k, Side::Right));
        } else {
            bool left = g.data[0] % (uint32_t)d == 0;
            b.add(9, cnot((int)g.data[0], s));
            b.add(left ? 12 : 10, cnot((int)g.data[1], s));
        }
        b.measure(14, GateKind::MeasZ, (uint32_t)s, gauge_info('Z', (int)k));
    }
    return b.finish(code);
}

bool idle_complete(const ScheduledCircuit &c) {
    for (const TimeStep &ts : c.steps) {
        std::vector<int> seen(c.n_qubits, 0);
        for (const Gate &g : ts.gates) {
            ++seen[g.q0];
            if (g.kind == GateKind::CNOT) {
                ++seen[g.q1];
            }
        }
        for (int v : seen) {
            if (v != 1) {
                return false;
            }
        }
    }
    return true;
}

std::string ScheduledCircuit::to_text() const {
    std::string out;
    for (size_t s = 0; s < steps.size(); ++s) {
        out += "step " + std::to_string(s + 1) + ":";
        bool first = true;
        for (const Gate &g : steps[s].gates) {
            out += first ? " " : " | ";
            first = false;
            switch (g.kind) {
                case GateKind::PrepZ:
                    out += "PREPZ " + std::to_string(g.q0);
                    break;
                case GateKind::PrepX:
                    out += "PREPX " + std::to_string(g.q0);
                    break;
                case GateKind::CNOT:
                    out += "CNOT " + std::to_string(g.q0) + " " + std::to_string(g.q1);
                    break;
                case GateKind::MeasZ:
                    out += "MEASZ " + std::to_string(g.q0);
                    break;
                case GateKind::MeasX:
                    out += "MEASX " + std::to_string(g.q0);
                    break;
                case GateKind::Idle:
                    out += "IDLE " + std::to_string(g.q0);
                    break;
            }
        }
        out += "\n";
    }
    return out;
}

std::string fault_kind_name(FaultKind k) {
    switch (k) {
        case FaultKind::Gate1:
            return "gate1";
        case FaultKind::Gate2:
            return "gate2";
        case FaultKind::Prep:
            return "prep";
        case FaultKind::Meas:
            return "meas";
        case FaultKind::Idle:
            return "idle";
    }
    return "?";
}

FaultKind location_kind(const Gate &g) {
    switch (g.kind) {
        case GateKind::PrepZ:
        case GateKind::PrepX:
            return FaultKind::Prep;
        case GateKind::CNOT:
            return FaultKind::Gate2;
        case GateKind::MeasZ:
        case GateKind::MeasX:
            return FaultKind::Meas;
        case GateKind::Idle:
            return FaultKind::Idle;
    }
    return FaultKind::Idle;
}

int branch_count(FaultKind k) {
    switch (k) {
        case FaultKind::Gate2:
            return 15;
        case FaultKind::Prep:
        case FaultKind::Meas:
            return 1;
        default:
            return 3;
    }
}

std::string fault_pauli_text(FaultKind k, uint8_t pauli) {
    static const char *names = "IXZY";
    if (k == FaultKind::Prep || k == FaultKind::Meas) {
        return "flip";
    }
    if (k == FaultKind::Gate2) {
        return std::string(1, names[pauli & 3]) + names[(pauli >> 2) & 3];
    }
    return std::string(1, names[pauli & 3]);
}

namespace {

void check_fault(const ScheduledCircuit &c, int rounds, const Fault &f) {
    const FaultLocation &l = f.loc;
    if (l.round < 0 || l.round >= rounds || l.step < 0 || l.step >= c.depth() || l.gate < 0 ||
        l.gate >= (int)c.steps[l.step].gates.size()) {
        throw std::invalid_argument("fault location outside the circuit");
    }
    FaultKind k = location_kind(c.steps[l.step].gates[l.gate]);
    bool ok = k == l.kind || (l.kind == FaultKind::Gate1 && k == FaultKind::Idle);
    if (!ok) {
        throw std::invalid_argument("fault kind " + fault_kind_name(l.kind) + " does not match gate");
    }
}

}  // namespace

FrameResult simulate_frames(const ScheduledCircuit &c, int rounds, std::vector<Fault> faults) {
    FrameResult r;
    r.rounds = rounds;
    r.per_round = c.num_measurements();
    r.meas.assign((size_t)rounds * r.per_round, 0);
    r.x.assign(c.n_qubits, 0);
    r.z.assign(c.n_qubits, 0);
    for (const Fault &f : faults) {
        check_fault(c, rounds, f);
    }
    std::stable_sort(faults.begin(), faults.end(), [](const Fault &a, const Fault &b) {
        return std::make_pair(a.loc.round, a.loc.step) < std::make_pair(b.loc.round, b.loc.step);
    });
    size_t fi = 0;
    auto &x = r.x;
    auto &z = r.z;
    for (int round = 0; round < rounds; ++round) {
        size_t base = (size_t)round * r.per_round;
        for (int s = 0; s < c.depth(); ++s) {
            const auto &gates = c.steps[s].gates;
            for (size_t k = 0; k < gates.size(); ++k) {
                const Gate &g = gates[k];
                switch (g.kind) {
                    case GateKind::PrepZ:
                    case GateKind::PrepX:
                        x[g.q0] = 0;
                        z[g.q0] = 0;
                        break;
                    case GateKind::CNOT:
                        x[g.q1] ^= x[g.q0];
                        z[g.q0] ^= z[g.q1];
                        break;
                    case GateKind::MeasZ:
                        r.meas[base + c.gate_measurement[s][k]] = x[g.q0];
                        break;
                    case GateKind::MeasX:
                        r.meas[base + c.gate_measurement[s][k]] = z[g.q0];
                        break;
                    case GateKind::Idle:
                        break;
                }
            }
            while (fi < faults.size() && faults[fi].loc.round == round && faults[fi].loc.step == s) {
                const Fault &f = faults[fi++];
                const Gate &g = gates[f.loc.gate];
                switch (f.loc.kind) {
                    case FaultKind::Gate2:
                        x[g.q0] ^= f.pauli & 1;
                        z[g.q0] ^= (f.pauli >> 1) & 1;
                        x[g.q1] ^= (f.pauli >> 2) & 1;
                        z[g.q1] ^= (f.pauli >> 3) & 1;
                        break;
                    case FaultKind::Gate1:
                    case FaultKind::Idle:
                        x[g.q0] ^= f.pauli & 1;
                        z[g.q0] ^= (f.pauli >> 1) & 1;
                        break;
                    case FaultKind::Prep:
                        if (g.kind == GateKind::PrepZ) {
                            x[g.q0] ^= 1;
                        } else {
                            z[g.q0] ^= 1;
                        }
                        break;
                    case FaultKind::Meas:
                        r.meas[base + c.gate_measurement[s][f.loc.gate]] ^= 1;
                        break;
                }
            }
        }
    }
    return r;
}

Propagation propagate(const ScheduledCircuit &c, const Fault &fault, int rounds) {
    FrameResult fr = simulate_frames(c, rounds, {fault});
    Propagation p;
    size_t nd = (size_t)c.distance * (size_t)c.distance;
    std::vector<uint32_t> xs, zs;
    for (uint32_t q = 0; q < nd; ++q) {
        if (fr.x[q]) {
            xs.push_back(q);
        }
        if (fr.z[q]) {
            zs.push_back(q);
        }
    }
    p.residual = PauliOp(c.n_qubits, xs, zs);
    for (int r = 0; r < rounds; ++r) {
        for (size_t m = 0; m < fr.per_round; ++m) {
            if (!fr.meas[(size_t)r * fr.per_round + m]) {
                continue;
            }
            if (c.measurements[m].role == MeasRole::Gauge) {
                p.syndrome_flips.push_back({r, (int)m});
            } else {
                p.flag_flips.push_back({r, (int)m});
            }
        }
    }
    return p;
}

CircuitReport verify_measured_operators(const ScheduledCircuit &c, const CodeLayout &code) {
    CircuitReport rep;
    size_t n = c.n_qubits;
    for (size_t m = 0; m < c.measurements.size(); ++m) {
        const MeasurementInfo &info = c.measurements[m];
        std::vector<uint8_t> x(n, 0), z(n, 0);
        const Gate *mg = nullptr;
        for (const Gate &g : c.steps[info.step].gates) {
            if ((g.kind == GateKind::MeasX || g.kind == GateKind::MeasZ) && g.q0 == info.qubit) {
                mg = &g;
            }
        }
        (mg->kind == GateKind::MeasX ? x : z)[info.qubit] = 1;
        bool bad = false;
        bool reached_prep = false;
        for (int s = info.step - 1; s >= 0 && !reached_prep; --s) {
            const auto &gates = c.steps[s].gates;
            for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
                const Gate &g = *it;
                switch (g.kind) {
                    case GateKind::CNOT:
                        x[g.q1] ^= x[g.q0];
                        z[g.q0] ^= z[g.q1];
                        break;
                    case GateKind::PrepZ:
                        if (x[g.q0]) {
                            bad = true;
                        }
                        z[g.q0] = 0;
                        break;
                    case GateKind::PrepX:
                        if (z[g.q0]) {
                            bad = true;
                        }
                        x[g.q0] = 0;
                        break;
                    case GateKind::MeasZ:
                    case GateKind::MeasX:
                        if (x[g.q0] || z[g.q0]) {
                            bad = true;
                        }
                        break;
                    case GateKind::Idle:
                        break;
                }
                if ((g.kind == GateKind::PrepZ || g.kind == GateKind::PrepX) && g.q0 == info.qubit) {
                    reached_prep = true;
                }
            }
        }
        std::vector<uint32_t> xs, zs;
        for (uint32_t q = 0; q < n; ++q) {
            if ((x[q] || z[q]) && !code.is_data(q)) {
                bad = true;
            }
            if (x[q]) {
                xs.push_back(q);
            }
            if (z[q]) {
                zs.push_back(q);
            }
        }
        PauliOp got(n, xs, zs);
        PauliOp want = info.role == MeasRole::Flag ? PauliOp(n) : code.measured(info.type)[info.generator].op;
        std::string name = "measurement " + std::to_string(m) + " (" + (info.role == MeasRole::Flag ? "flag " : "gauge ") +
                           std::string(1, info.type) + std::to_string(info.generator) + ")";
        if (!reached_prep) {
            rep.violations.push_back(name + ": no preparation found");
        } else if (bad) {
            rep.violations.push_back(name + ": outcome is not deterministic");
        } else if (!(got == want)) {
            rep.violations.push_back(name + ": reads '" + got.str() + "' instead of '" + want.str() + "'");
        } else {
            ++rep.verified;
        }
    }
    return rep;
}

namespace {

class GaugeReducer {
   public:
    explicit GaugeReducer(const CodeLayout &code)
        : nd_((size_t)code.distance * (size_t)code.distance), xs_(nd_), zs_(nd_) {
        for (const PauliOp &g : code.x_gauge) {
            xs_.add(row(g.x_support()));
        }
        for (const PauliOp &g : code.z_gauge) {
            zs_.add(row(g.z_support()));
        }
    }

    int reduced_weight(const PauliOp &op) const {
        BitRow x = row(op.x_support());
        BitRow z = row(op.z_support());
        if (in_group(x, z)) {
            return 0;
        }
        for (size_t q = 0; q < nd_; ++q) {
            for (int p = 1; p <= 3; ++p) {
                BitRow x2 = x, z2 = z;
                if (p & 1) {
                    x2.flip(q);
                }
                if (p & 2) {
                    z2.flip(q);
                }
                if (in_group(x2, z2)) {
                    return 1;
                }
            }
        }
        return 2;
    }

   private:
    BitRow row(const std::vector<uint32_t> &sup) const {
        BitRow r(nd_);
        for (uint32_t q : sup) {
            if (q < nd_) {
                r.flip(q);
            }
        }
        return r;
    }
    bool in_group(const BitRow &x, const BitRow &z) const { return xs_.contains(x) && zs_.contains(z); }

    size_t nd_;
    GF2Span xs_;
    GF2Span zs_;
};

}  // namespace

int reduced_weight(const PauliOp &op, const CodeLayout &code) { return GaugeReducer(code).reduced_weight(op); }

FaultTable classify_single_faults(const ScheduledCircuit &c, const CodeLayout &code) {
    GaugeReducer red(code);
    FaultTable t;
    for (int s = 0; s < c.depth(); ++s) {
        const auto &gates = c.steps[s].gates;
        for (int k = 0; k < (int)gates.size(); ++k) {
            FaultKind kind = location_kind(gates[k]);
            int branches = branch_count(kind);
            for (int b = 1; b <= branches; ++b) {
                Fault f{{0, s, k, kind}, (uint8_t)b};
                Propagation p = propagate(c, f, 1);
                FaultClass fc;
                fc.fault = f;
                fc.residual = p.residual;
                fc.reduced_weight = red.reduced_weight(p.residual);
                std::map<std::pair<char, int>, int> sides;
                for (auto [r, m] : p.flag_flips) {
                    fc.flags.push_back(m);
                    const MeasurementInfo &mi = c.measurements[m];
                    sides[{mi.type, mi.generator}] |= 1 << (int)mi.side;
                }
                for (auto &[key, mask] : sides) {
                    if (mask == 3) {
                        fc.double_flag = true;
                    }
                }
                if (fc.reduced_weight >= 2 && fc.flags.empty()) {
                    ++t.unflagged_heavy;
                }
                if (fc.double_flag && fc.reduced_weight != 0) {
                    ++t.double_flag_with_data;
                }
                t.entries.push_back(std::move(fc));
            }
        }
    }
    return t;
}

}  // namespace heavylat
