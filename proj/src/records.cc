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


#include "heavylat/records.h"

#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "heavylat/rng.h"

namespace heavylat {

namespace {

constexpr char kMagic[8] = {'H', 'L', 'Y', 'R', 'E', 'C', 0, 0};

void put_u64(std::ostream &out, uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (char)(v >> (8 * i));
    out.write(b, 8);
}

void put_u32(std::ostream &out, uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (char)(v >> (8 * i));
    out.write(b, 4);
}

void get(std::istream &in, char *b, size_t n) {
    in.read(b, (std::streamsize)n);
    if ((size_t)in.gcount() != n) throw std::runtime_error("record file truncated");
}

uint64_t get_u64(std::istream &in) {
    unsigned char b[8];
    get(in, (char *)b, 8);
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = v << 8 | b[i];
    return v;
}

uint32_t get_u32(std::istream &in) {
    unsigned char b[4];
    get(in, (char *)b, 4);
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = v << 8 | b[i];
    return v;
}

void put_bits(std::string &buf, const std::vector<uint8_t> &bits) {
    size_t base = buf.size();
    buf.resize(base + (bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) buf[base + i / 8] = (char)(buf[base + i / 8] | (1 << (i % 8)));
    }
}

std::vector<uint8_t> take_bits(const std::string &buf, size_t &pos, size_t n) {
    std::vector<uint8_t> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = (uint8_t)((unsigned char)buf[pos + i / 8] >> (i % 8) & 1);
    pos += (n + 7) / 8;
    return out;
}

std::vector<uint8_t> support_bits(const std::vector<uint32_t> &s, size_t n) {
    std::vector<uint8_t> out(n, 0);
    for (uint32_t q : s) out[q] = 1;
    return out;
}

std::vector<uint32_t> bits_support(const std::vector<uint8_t> &b) {
    std::vector<uint32_t> out;
    for (size_t i = 0; i < b.size(); ++i) {
        if (b[i]) out.push_back((uint32_t)i);
    }
    return out;
}

size_t shot_bytes(const RecordHeader &h) {
    size_t nd = (size_t)h.distance * (size_t)h.distance;
    return ((size_t)h.rounds * h.per_round + 7) / 8 + 2 * ((nd + 7) / 8) + 2 * ((h.n_qubits + 7) / 8);
}

}  // namespace

RecordHeader make_header(const Experiment &exp, const NoiseParams &params, uint64_t seed, uint64_t shots) {
    RecordHeader h;
    h.family = exp.code().family;
    h.distance = exp.code().distance;
    h.rounds = exp.rounds();
    h.per_round = (uint32_t)exp.per_round();
    h.n_qubits = (uint32_t)exp.code().n_qubits();
    h.p = params.p;
    h.idle = params.idle;
    h.seed = seed;
    h.shots = shots;
    return h;
}

void write_records(std::ostream &out, const RecordHeader &h, const std::vector<ShotResult> &shots) {
    if (shots.size() != h.shots) throw std::invalid_argument("header shot count does not match");
    out.write(kMagic, 8);
    put_u32(out, h.version);
    put_u32(out, h.family == Family::HeavyHexagon ? 0 : 1);
    put_u32(out, (uint32_t)h.distance);
    put_u32(out, (uint32_t)h.rounds);
    put_u32(out, h.per_round);
    put_u32(out, h.n_qubits);
    uint64_t pbits;
    std::memcpy(&pbits, &h.p, 8);
    put_u64(out, pbits);
    put_u32(out, h.idle == IdleModel::Full ? 0 : 1);
    put_u64(out, h.seed);
    put_u64(out, h.shots);
    const size_t nd = (size_t)h.distance * (size_t)h.distance;
    std::string buf;
    for (const ShotResult &s : shots) {
        const MeasurementRecord &r = s.record;
        if (r.meas.size() != (size_t)h.rounds * h.per_round || r.final_x.size() != nd || r.final_z.size() != nd ||
            s.residual.n_qubits() != h.n_qubits) {
            throw std::invalid_argument("shot does not match the record header");
        }
        buf.clear();
        put_bits(buf, r.meas);
        put_bits(buf, r.final_x);
        put_bits(buf, r.final_z);
        put_bits(buf, support_bits(s.residual.x_support(), h.n_qubits));
        put_bits(buf, support_bits(s.residual.z_support(), h.n_qubits));
        out.write(buf.data(), (std::streamsize)buf.size());
    }
    if (!out) throw std::runtime_error("failed writing record file");
}

RecordFile read_records(std::istream &in) {
    char magic[8];
    get(in, magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("not a heavylat record file");
    RecordFile f;
    RecordHeader &h = f.header;
    h.version = get_u32(in);
    if (h.version != RecordHeader::kVersion) {
        throw std::runtime_error("unsupported record version " + std::to_string(h.version));
    }
    uint32_t fam = get_u32(in);
    if (fam > 1) throw std::runtime_error("bad family in record header");
    h.family = fam == 0 ? Family::HeavyHexagon : Family::HeavySquare;
    h.distance = (int)get_u32(in);
    h.rounds = (int)get_u32(in);
    h.per_round = get_u32(in);
    h.n_qubits = get_u32(in);
    uint64_t pbits = get_u64(in);
    std::memcpy(&h.p, &pbits, 8);
    uint32_t idle = get_u32(in);
    if (idle > 1) throw std::runtime_error("bad idle model in record header");
    h.idle = idle == 0 ? IdleModel::Full : IdleModel::PerRoundData;
    h.seed = get_u64(in);
    h.shots = get_u64(in);
    if (h.distance < 3 || h.rounds < 1 || h.distance > 101 || h.n_qubits > 100000 || h.per_round > 100000) {
        throw std::runtime_error("implausible record header");
    }
    const size_t nd = (size_t)h.distance * (size_t)h.distance;
    const size_t nb = shot_bytes(h);
    std::string buf(nb, 0);
    for (uint64_t i = 0; i < h.shots; ++i) {
        get(in, buf.data(), nb);
        ShotResult s;
        size_t pos = 0;
        s.record.rounds = h.rounds;
        s.record.per_round = h.per_round;
        s.record.meas = take_bits(buf, pos, (size_t)h.rounds * h.per_round);
        s.record.final_x = take_bits(buf, pos, nd);
        s.record.final_z = take_bits(buf, pos, nd);
        auto xs = bits_support(take_bits(buf, pos, h.n_qubits));
        auto zs = bits_support(take_bits(buf, pos, h.n_qubits));
        s.residual = PauliOp(h.n_qubits, std::move(xs), std::move(zs));
        f.shots.push_back(std::move(s));
    }
    return f;
}

uint64_t record_stream(uint64_t seed, int d) { return stream_key(seed, (uint64_t)d, 0, 1); }

std::vector<ShotResult> simulate_records(const Experiment &exp, const NoiseParams &params, uint64_t seed,
                                         uint64_t shots) {
    FaultSampler sampler(exp.circuit(), exp.rounds(), params);
    const uint64_t key = record_stream(seed, exp.code().distance);
    std::vector<ShotResult> out;
    out.reserve(shots);
    std::vector<Fault> faults;
    for (uint64_t i = 0; i < shots; ++i) {
        auto rng = stream_rng(key, i);
        faults.clear();
        sampler.sample(rng, faults);
        out.push_back(run_shot(exp.circuit(), exp.rounds(), faults));
    }
    return out;
}

}  // namespace heavylat
