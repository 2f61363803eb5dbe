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

#ifndef HEAVYLAT_NOISE_H
#define HEAVYLAT_NOISE_H

#include <functional>
#include <random>
#include <vector>

#include "heavylat/circuit.h"

namespace heavylat {

/// Which Idle gates carry noise.
/// PerRoundData: one idle location per data qubit at the start of each round.
/// Full: every Idle gate of the schedule.
enum class IdleModel { PerRoundData, Full };

std::string idle_model_name(IdleModel m);
IdleModel parse_idle_model(const std::string &s);

struct NoiseParams {
    double p = 0.0;
    IdleModel idle = IdleModel::Full;
    /// Throws std::invalid_argument outside [0, 0.1].
    void check() const;
};

/// Total failure probability of a location: p, or 2p/3 for prep and measurement.
double location_probability(FaultKind k, double p);
/// Probability of one specific branch: p/15, p/3 or 2p/3.
double branch_probability(FaultKind k, double p);

/// Noisy locations of a single round (round field is 0).
std::vector<FaultLocation> noisy_locations(const ScheduledCircuit &c, IdleModel idle);

class FaultSampler {
   public:
    FaultSampler(const ScheduledCircuit &c, int rounds, const NoiseParams &params);
    /// Appends one shot's faults to `out`.
    void sample(std::mt19937_64 &rng, std::vector<Fault> &out) const;
    size_t num_locations() const;

   private:
    struct Group {
        FaultKind kind;
        double q;
        std::vector<FaultLocation> locs;
    };
    std::vector<Group> groups_;
};

std::vector<Fault> sample_faults(const ScheduledCircuit &c, int rounds, const NoiseParams &params,
                                 std::mt19937_64 &rng);

/// Visits every fault set of the given order (1 or 2) with its leading-order
/// probability. Order-2 sets never place two faults on the same location.
void enumerate_faults(const ScheduledCircuit &c, int rounds, const NoiseParams &params, int order,
                      const std::function<void(const std::vector<Fault> &, double)> &visit);

/// Order-1 fault list of the unrolled circuit.
std::vector<std::pair<Fault, double>> single_faults(const ScheduledCircuit &c, int rounds, const NoiseParams &params);

}  // namespace heavylat

#endif
