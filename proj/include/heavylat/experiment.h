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

#ifndef HEAVYLAT_EXPERIMENT_H
#define HEAVYLAT_EXPERIMENT_H

#include <cstdint>
#include <string>
#include <vector>

#include "heavylat/decoder.h"

namespace heavylat {

/// "a:b:N" (linear), "a:b:logN" (log spaced), or a comma list.
std::vector<double> parse_grid(const std::string &text);
std::vector<int> parse_int_list(const std::string &text);

struct Campaign {
    Family family = Family::HeavySquare;
    std::vector<int> distances;
    std::vector<double> ps;
    uint64_t shots = 100000;
    uint64_t seed = 0;
    bool flags = true;
    IdleModel idle = IdleModel::Full;
    double alpha = 1.0;
    int threads = 1;
    /// Wall-clock budget per point in seconds; 0 disables it.
    double time_limit = 0.0;

    void check() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval at 95%.
Interval wilson(uint64_t k, uint64_t n);

struct RatePoint {
    Family family = Family::HeavySquare;
    int d = 3;
    double p = 0.0;
    int p_index = 0;
    uint64_t shots = 0;
    uint64_t x_fail = 0;
    uint64_t z_fail = 0;
    uint64_t y_fail = 0;
    double x_lo = 0.0, x_hi = 0.0, z_lo = 0.0, z_hi = 0.0;
    uint64_t stream = 0;
    /// Stopped early by the time limit.
    bool partial = false;

    double rate(char type) const;
    void fill_intervals();
    bool operator==(const RatePoint &o) const;
};

/// Root of the per-shot streams of one point; shot i uses stream_rng(key, i).
uint64_t point_stream(uint64_t seed, int d, int p_index);

/// One (d, p) point. Counts do not depend on the thread count.
RatePoint run_point(const Campaign &c, int d, int p_index);
std::vector<RatePoint> run_campaign(const Campaign &c);

struct Crossing {
    int d1 = 0;
    int d2 = 0;
    bool found = false;
    double p = 0.0;
    /// Central 95% of parametric bootstrap replicates.
    double lo = 0.0;
    double hi = 0.0;
};

struct ThresholdEstimate {
    bool found = false;
    double p_th = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<Crossing> pairs;
};

/// Crossing of the log-rate curves of two distances via a local linear fit
/// of log(r2/r1) against log p around the first sign change.
Crossing find_crossing(const std::vector<RatePoint> &points, char type, int d1, int d2, int bootstrap = 200,
                       uint64_t seed = 1);

/// Consecutive-distance crossings; p_th is their geometric mean.
ThresholdEstimate estimate_threshold(const std::vector<RatePoint> &points, char type, int bootstrap = 200,
                                     uint64_t seed = 1);

std::string csv_header();
std::string to_csv(const std::vector<RatePoint> &points);
std::vector<RatePoint> parse_csv(const std::string &text);
std::string to_json(const Campaign &c, const std::vector<RatePoint> &points);

}  // namespace heavylat

#endif
