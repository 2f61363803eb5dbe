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

#ifndef HEAVYLAT_COLLISION_H
#define HEAVYLAT_COLLISION_H

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "heavylat/code.h"

namespace heavylat {

enum class Lattice { HeavyHexagon, HeavySquare, RotatedSurface };
enum class Variant { Bulk3, Boundary4, Surface5 };

Lattice parse_lattice(const std::string &s);  // hex, square, surface
std::string lattice_name(Lattice l);
Variant parse_variant(const std::string &s);
std::string variant_name(Variant v);

/// Coupling graph of a device; every coupling is a CNOT (control, target).
struct Device {
    int n = 0;
    std::vector<std::pair<int, int>> couplings;
    std::vector<std::vector<int>> neighbors;
    std::vector<char> is_control;

    void add(int control, int target);
};

/// Couplings used by the syndrome circuit of a heavy code.
Device heavy_device(Family family, int d);
/// Rotated surface code: d*d data plus d*d-1 ancillas on a degree-4 lattice.
Device surface_device(int d);

struct FrequencyPattern {
    Lattice lattice = Lattice::HeavyHexagon;
    Variant variant = Variant::Bulk3;
    int d = 3;
    Device device;
    /// Class per qubit, 0-based (f1 = 0).
    std::vector<int> cls;
    /// Nominal omega01 per class, MHz.
    std::vector<double> class_freq;
    /// omega12 - omega01, MHz.
    double anharmonicity = -335.0;

    int num_classes() const;
    std::vector<double> nominal() const;
};

/// Heavy lattices: bulk3 subdivides boundary couplings that would need a
/// fourth class; boundary4 keeps the device and adds f4 there.
FrequencyPattern assign_pattern(Lattice lattice, int d, Variant variant);

struct CollisionWindows {
    /// Rules 1-6 detuning windows, MHz.
    std::array<double, 6> window{17, 17, 17, 17, 17, 17};
    /// Allowed control-target |delta omega01| band, MHz.
    double band_lo = 30.0;
    double band_hi = 300.0;

    void check() const;
};

struct CollisionCount {
    std::array<int, 7> per_rule{};
    int total() const;
};

/// omega01 per qubit in MHz.
CollisionCount count_collisions(const FrequencyPattern &pat, const std::vector<double> &omega01,
                                const CollisionWindows &win = {});

struct SigmaPoint {
    double sigma = 0.0;
    double mean = 0.0;
    double std_err = 0.0;
};

/// Trial t draws z ~ N(0, 1) per qubit from stream (seed, t); omega01 = nominal + sigma * z.
std::vector<SigmaPoint> sweep_sigma(const FrequencyPattern &pat, const std::vector<double> &sigmas, int trials,
                                    uint64_t seed, const CollisionWindows &win = {}, int threads = 1);

std::string collision_csv_header();
std::string collisions_to_csv(const FrequencyPattern &pat, const std::vector<SigmaPoint> &pts);

}  // namespace heavylat

#endif
