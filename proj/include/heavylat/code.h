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

#ifndef HEAVYLAT_CODE_H
#define HEAVYLAT_CODE_H

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "heavylat/pauli.h"

namespace heavylat {

enum class Family { HeavyHexagon, HeavySquare };
enum class Role { Data, Flag, Syndrome };
enum class Side { Left = 0, Right = 1 };

std::string family_name(Family f);       // "hex" / "square"
Family parse_family(const std::string &s);  // accepts hex, heavy-hex, square, heavy-square
std::string role_name(Role r);

struct Coord {
    int row = 0;
    int col = 0;
    bool operator==(const Coord &) const = default;
};

struct QubitInfo {
    uint32_t index = 0;
    Role role = Role::Data;
    Coord coord;
    /// 0 when unassigned, otherwise 1..5.
    int frequency_class = 0;
};

/// A measured generator together with the ancillas that read it out.
struct MeasuredGenerator {
    char type = 'X';
    PauliOp op;
    uint32_t syndrome = 0;
    /// Left and right flag qubits, -1 when the generator has none.
    std::array<int, 2> flags{-1, -1};
    /// TL, TR, BL, BR data qubits of a weight-four generator, -1 otherwise.
    std::array<int, 4> corners{-1, -1, -1, -1};
    /// Data qubits in schedule order.
    std::vector<uint32_t> data;
    bool has_flags() const { return flags[0] >= 0; }
};

struct CodeLayout {
    Family family = Family::HeavyHexagon;
    int distance = 3;
    std::vector<QubitInfo> qubits;
    std::vector<PauliOp> x_gauge;
    std::vector<PauliOp> z_gauge;
    std::vector<PauliOp> x_stabilizers;
    std::vector<PauliOp> z_stabilizers;
    PauliOp logical_x;
    PauliOp logical_z;

    /// Parallel to x_gauge / z_gauge.
    std::vector<MeasuredGenerator> x_measured;
    std::vector<MeasuredGenerator> z_measured;
    /// Each stabilizer as a list of gauge indices whose product it is.
    std::vector<std::vector<int>> x_stabilizer_gauges;
    std::vector<std::vector<int>> z_stabilizer_gauges;
    std::vector<std::pair<uint32_t, uint32_t>> couplings;

    size_t n_qubits() const { return qubits.size(); }
    size_t count(Role r) const;
    uint32_t data_qubit(int i, int j) const { return (uint32_t)((i - 1) * distance + (j - 1)); }
    bool is_data(uint32_t q) const { return q < (uint32_t)(distance * distance); }

    const std::vector<PauliOp> &stabilizers(char type) const { return type == 'X' ? x_stabilizers : z_stabilizers; }
    const std::vector<PauliOp> &gauges(char type) const { return type == 'X' ? x_gauge : z_gauge; }
    const std::vector<MeasuredGenerator> &measured(char type) const { return type == 'X' ? x_measured : z_measured; }
    const std::vector<std::vector<int>> &stabilizer_gauges(char type) const {
        return type == 'X' ? x_stabilizer_gauges : z_stabilizer_gauges;
    }
    /// Mean lattice coordinate of the stabilizer's data support.
    std::pair<double, double> stabilizer_center(char type, size_t s) const;
};

CodeLayout build_heavy_hexagon(int d);
CodeLayout build_heavy_square(int d);
CodeLayout build_code(Family family, int d);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const CodeLayout &code);
int max_degree(const CodeLayout &code);

/// Exhaustive minimum logical weight. Exponential; refuses d > 5.
int code_distance_bruteforce(const CodeLayout &code);

std::string layout_to_json(const CodeLayout &code);
CodeLayout layout_from_json(const std::string &text);

}  // namespace heavylat

#endif
