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

#include "heavylat/pauli.h"

#include <algorithm>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace heavylat {

namespace {

std::vector<uint32_t> sym_diff(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    std::vector<uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

size_t overlap(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

void toggle(std::vector<uint32_t> &v, uint32_t q) {
    auto it = std::lower_bound(v.begin(), v.end(), q);
    if (it != v.end() && *it == q) {
        v.erase(it);
    } else {
        v.insert(it, q);
    }
}

void normalize(std::vector<uint32_t> &v, size_t n) {
    std::sort(v.begin(), v.end());
    std::vector<uint32_t> out;
    // Repeated indices cancel pairwise.
    for (size_t i = 0; i < v.size();) {
        size_t j = i;
        while (j < v.size() && v[j] == v[i]) {
            ++j;
        }
        if ((j - i) % 2 == 1) {
            out.push_back(v[i]);
        }
        i = j;
    }
    if (!out.empty() && out.back() >= n) {
        throw std::out_of_range("Pauli index " + std::to_string(out.back()) + " >= n_qubits " + std::to_string(n));
    }
    v.swap(out);
}

}  // namespace

PauliOp::PauliOp(size_t n_qubits, std::vector<uint32_t> xs, std::vector<uint32_t> zs)
    : n_(n_qubits), x_(std::move(xs)), z_(std::move(zs)) {
    normalize(x_, n_);
    normalize(z_, n_);
}

PauliOp PauliOp::from_text(const std::string &text, size_t n_qubits) {
    std::istringstream in(text);
    std::string tok;
    std::vector<uint32_t> xs;
    std::vector<uint32_t> zs;
    while (in >> tok) {
        if (tok == "I") {
            continue;
        }
        if (tok.size() < 2) {
            throw std::invalid_argument("bad Pauli factor '" + tok + "'");
        }
        char p = tok[0];
        size_t used = 0;
        unsigned long q = std::stoul(tok.substr(1), &used);
        if (used != tok.size() - 1) {
            throw std::invalid_argument("bad Pauli factor '" + tok + "'");
        }
        if (p == 'X' || p == 'Y') {
            xs.push_back((uint32_t)q);
        }
        if (p == 'Z' || p == 'Y') {
            zs.push_back((uint32_t)q);
        }
        if (p != 'X' && p != 'Y' && p != 'Z') {
            throw std::invalid_argument("bad Pauli factor '" + tok + "'");
        }
    }
    return PauliOp(n_qubits, std::move(xs), std::move(zs));
}

PauliOp PauliOp::single(size_t n_qubits, uint32_t q, char p) {
    PauliOp r(n_qubits);
    if (q >= n_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    if (p == 'X' || p == 'Y') {
        r.x_.push_back(q);
    }
    if (p == 'Z' || p == 'Y') {
        r.z_.push_back(q);
    }
    return r;
}

bool PauliOp::has_x(uint32_t q) const { return std::binary_search(x_.begin(), x_.end(), q); }
bool PauliOp::has_z(uint32_t q) const { return std::binary_search(z_.begin(), z_.end(), q); }

char PauliOp::at(uint32_t q) const {
    bool x = has_x(q);
    bool z = has_z(q);
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

void PauliOp::toggle_x(uint32_t q) {
    if (q >= n_) {
        throw std::out_of_range("qubit index out of range");
    }
    toggle(x_, q);
}

void PauliOp::toggle_z(uint32_t q) {
    if (q >= n_) {
        throw std::out_of_range("qubit index out of range");
    }
    toggle(z_, q);
}

std::vector<uint32_t> PauliOp::support() const {
    std::vector<uint32_t> out;
    std::set_union(x_.begin(), x_.end(), z_.begin(), z_.end(), std::back_inserter(out));
    return out;
}

size_t PauliOp::weight() const { return x_.size() + z_.size() - overlap(x_, z_); }

std::string PauliOp::str() const {
    std::string out;
    for (uint32_t q : support()) {
        if (!out.empty()) {
            out += ' ';
        }
        out += at(q);
        out += std::to_string(q);
    }
    return out;
}

PauliOp multiply(const PauliOp &a, const PauliOp &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("multiply: size mismatch");
    }
    return PauliOp(a.n_qubits(), sym_diff(a.x_support(), b.x_support()), sym_diff(a.z_support(), b.z_support()));
}

bool commutes(const PauliOp &a, const PauliOp &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("commutes: size mismatch");
    }
    return (overlap(a.x_support(), b.z_support()) + overlap(a.z_support(), b.x_support())) % 2 == 0;
}

size_t weight(const PauliOp &a) { return a.weight(); }

PauliOp restrict(const PauliOp &a, PauliPart part) {
    if (part == PauliPart::X) {
        return PauliOp(a.n_qubits(), a.x_support(), {});
    }
    return PauliOp(a.n_qubits(), {}, a.z_support());
}

}  // namespace heavylat
