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


#ifndef HEAVYLAT_RECORDS_H
#define HEAVYLAT_RECORDS_H

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "heavylat/frame_sim.h"
#include "heavylat/noise.h"

namespace heavylat {

/// Per-shot dump: 8-byte magic "HLYREC\0\0", little-endian header, then one
/// bit-packed block per shot (gauge and flag outcomes, both final readouts,
/// residual X and Z supports).
struct RecordHeader {
    static constexpr uint32_t kVersion = 1;
    uint32_t version = kVersion;
    Family family = Family::HeavyHexagon;
    int distance = 3;
    int rounds = 3;
    uint32_t per_round = 0;
    uint32_t n_qubits = 0;
    double p = 0.0;
    IdleModel idle = IdleModel::Full;
    uint64_t seed = 0;
    uint64_t shots = 0;
};

struct RecordFile {
    RecordHeader header;
    std::vector<ShotResult> shots;
};

RecordHeader make_header(const Experiment &exp, const NoiseParams &params, uint64_t seed, uint64_t shots);

void write_records(std::ostream &out, const RecordHeader &h, const std::vector<ShotResult> &shots);
/// Throws std::runtime_error on a bad magic, an unknown version or a short file.
RecordFile read_records(std::istream &in);

/// Root of the record streams; shot i uses stream_rng(record_stream(seed, d), i).
uint64_t record_stream(uint64_t seed, int d);

/// Exact single-shot propagation of sampled faults.
std::vector<ShotResult> simulate_records(const Experiment &exp, const NoiseParams &params, uint64_t seed,
                                         uint64_t shots);

}  // namespace heavylat

#endif
