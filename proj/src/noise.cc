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

#include "heavylat/noise.h"

#include <stdexcept>

namespace heavylat {

std::string idle_model_name(IdleModel m) { return m == IdleModel::Full ? "full" : "per-round-data"; }

IdleModel parse_idle_model(const std::string &s) {
    if (s == "full") {
        return IdleModel::Full;
    }
    if (s == "per-round-data" || s == "data") {
        return IdleModel::PerRoundData;
    }
    throw std::invalid_argument("unknown idle model '" + s + "'");
}

void NoiseParams::check() const {
    if (!(p >= 0.0 && p <= 0.1)) {
        throw std::invalid_argument("physical error rate p=" + std::to_string(p) + " outside [0, 0.1]");
    }
}

double location_probability(FaultKind k, double p) {
    return (k == FaultKind::Prep || k == FaultKind::Meas) ? 2.0 * p / 3.0 : p;
}

double branch_probability(FaultKind k, double p) {
    switch (k) {
        case FaultKind::Gate2:
            return p / 15.0;
        case FaultKind::Prep:
        case FaultKind::Meas:
            return 2.0 * p / 3.0;
        default:
            return p / 3.0;
    }
}

std::vector<FaultLocation> noisy_locations(const ScheduledCircuit &c, IdleModel idle) {
    std::vector<FaultLocation> out;
    uint32_t nd = (uint32_t)(c.distance * c.distance);
    for (int s = 0; s < c.depth(); ++s) {
        const auto &gates = c.steps[s].gates;
        for (int k = 0; k < (int)gates.size(); ++k) {
            FaultKind kind = location_kind(gates[k]);
            if (kind == FaultKind::Idle && idle == IdleModel::PerRoundData && !(s == 0 && gates[k].q0 < nd)) {
                continue;
            }
            out.push_back({0, s, k, kind});
        }
    }
    return out;
}

FaultSampler::FaultSampler(const ScheduledCircuit &c, int rounds, const NoiseParams &params) {
    params.check();
    std::vector<FaultLocation> base = noisy_locations(c, params.idle);
    for (FaultKind kind : {FaultKind::Gate2, FaultKind::Prep, FaultKind::Meas, FaultKind::Idle, FaultKind::Gate1}) {
        Group g{kind, location_probability(kind, params.p), {}};
        for (int r = 0; r < rounds; ++r) {
            for (FaultLocation l : base) {
                if (l.kind == kind) {
                    l.round = r;
                    g.locs.push_back(l);
                }
            }
        }
        if (!g.locs.empty() && g.q > 0) {
            groups_.push_back(std::move(g));
        }
    }
}

size_t FaultSampler::num_locations() const {
    size_t n = 0;
    for (const Group &g : groups_) {
        n += g.locs.size();
    }
    return n;
}

void FaultSampler::sample(std::mt19937_64 &rng, std::vector<Fault> &out) const {
    for (const Group &g : groups_) {
        std::geometric_distribution<long long> skip(g.q);
        int branches = branch_count(g.kind);
        std::uniform_int_distribution<int> pick(1, branches);
        long long i = skip(rng);
        while (i < (long long)g.locs.size()) {
            out.push_back({g.locs[(size_t)i], (uint8_t)(branches == 1 ? 1 : pick(rng))});
            i += 1 + skip(rng);
        }
    }
}

std::vector<Fault> sample_faults(const ScheduledCircuit &c, int rounds, const NoiseParams &params,
                                 std::mt19937_64 &rng) {
    FaultSampler s(c, rounds, params);
    std::vector<Fault> out;
    s.sample(rng, out);
    return out;
}

std::vector<std::pair<Fault, double>> single_faults(const ScheduledCircuit &c, int rounds, const NoiseParams &params) {
    params.check();
    std::vector<std::pair<Fault, double>> out;
    std::vector<FaultLocation> base = noisy_locations(c, params.idle);
    for (int r = 0; r < rounds; ++r) {
        for (FaultLocation l : base) {
            l.round = r;
            int branches = branch_count(l.kind);
            for (int b = 1; b <= branches; ++b) {
                out.push_back({Fault{l, (uint8_t)b}, branch_probability(l.kind, params.p)});
            }
        }
    }
    return out;
}

void enumerate_faults(const ScheduledCircuit &c, int rounds, const NoiseParams &params, int order,
                      const std::function<void(const std::vector<Fault> &, double)> &visit) {
    if (order != 1 && order != 2) {
        throw std::invalid_argument("enumerate_faults supports order 1 or 2 only");
    }
    auto singles = single_faults(c, rounds, params);
    std::vector<Fault> set;
    if (order == 1) {
        for (auto &[f, pr] : singles) {
            set = {f};
            visit(set, pr);
        }
        return;
    }
    for (size_t i = 0; i < singles.size(); ++i) {
        for (size_t j = i + 1; j < singles.size(); ++j) {
            if (singles[i].first.loc == singles[j].first.loc) {
                continue;
            }
            set = {singles[i].first, singles[j].first};
            visit(set, singles[i].second * singles[j].second);
        }
    }
}

}  // namespace heavylat
