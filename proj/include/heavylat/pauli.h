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

#ifndef HEAVYLAT_PAULI_H
#define HEAVYLAT_PAULI_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace heavylat {

/// Phase-free Pauli operator stored as two sorted index sets.
/// A Y on qubit q puts q in both sets.
class PauliOp {
   public:
    PauliOp() = default;
    explicit PauliOp(size_t n_qubits) : n_(n_qubits) {}
    PauliOp(size_t n_qubits, std::vector<uint32_t> xs, std::vector<uint32_t> zs);

    /// Parses "X0 Z3 Y7". The empty string and "I" give the identity.
    static PauliOp from_text(const std::string &text, size_t n_qubits);
    static PauliOp single(size_t n_qubits, uint32_t q, char p);

    size_t n_qubits() const { return n_; }
    const std::vector<uint32_t> &x_support() const { return x_; }
    const std::vector<uint32_t> &z_support() const { return z_; }

    bool has_x(uint32_t q) const;
    bool has_z(uint32_t q) const;
    /// Single-qubit factor: 'I', 'X', 'Y' or 'Z'.
    char at(uint32_t q) const;
    void toggle_x(uint32_t q);
    void toggle_z(uint32_t q);

    size_t weight() const;
    bool is_identity() const { return x_.empty() && z_.empty(); }
    /// Union of x and z supports, ascending.
    std::vector<uint32_t> support() const;

    std::string str() const;

    bool operator==(const PauliOp &other) const = default;

   private:
    size_t n_ = 0;
    std::vector<uint32_t> x_;
    std::vector<uint32_t> z_;
};

enum class PauliPart { X, Z };

PauliOp multiply(const PauliOp &a, const PauliOp &b);
bool commutes(const PauliOp &a, const PauliOp &b);
size_t weight(const PauliOp &a);
PauliOp restrict(const PauliOp &a, PauliPart part);

}  // namespace heavylat

#endif
