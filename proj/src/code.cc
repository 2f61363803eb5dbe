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

#include "heavylat/code.h"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace heavylat {

std::string family_name(Family f) { return f == Family::HeavyHexagon ? "hex" : "square"; }

Family parse_family(const std::string &s) {
    if (s == "hex" || s == "heavy-hex" || s == "heavy_hexagon" || s == "HeavyHexagon") {
        return Family::HeavyHexagon;
    }
    if (s == "square" || s == "heavy-square" || s == "heavy_square" || s == "HeavySquare") {
        return Family::HeavySquare;
    }
    throw std::invalid_argument("unknown code family '" + s + "'");
}

std::string role_name(Role r) {
    switch (r) {
        case Role::Data:
            return "data";
        case Role::Flag:
            return "flag";
        case Role::Syndrome:
            return "syndrome";
    }
    return "?";
}

size_t CodeLayout::count(Role r) const {
    return (size_t)std::count_if(qubits.begin(), qubits.end(), [&](const QubitInfo &q) { return q.role == r; });
}

std::pair<double, double> CodeLayout::stabilizer_center(char type, size_t s) const {
    const PauliOp &op = stabilizers(type)[s];
    double r = 0, c = 0;
    auto sup = op.support();
    for (uint32_t q : sup) {
        r += qubits[q].coord.row;
        c += qubits[q].coord.col;
    }
    return {r / (double)sup.size(), c / (double)sup.size()};
}

namespace {

void check_distance(int d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("invalid distance " + std::to_string(d) + ": must be odd and >= 3");
    }
}

struct PendingGen {
    char type;
    Coord coord;  // syndrome coordinate, or pair coordinate for pair-measured gauges
    std::vector<uint32_t> data;
    std::array<int, 4> corners{-1, -1, -1, -1};
    std::array<int, 2> flags{-1, -1};
    int syndrome = -1;  // preassigned (pair qubit) or -1 for a fresh syndrome qubit
};

/// Shared lattice: data, pair qubits, X faces and the weight-two X boundaries.
CodeLayout build_common(Family family, int d, std::vector<PendingGen> &gens) {
    CodeLayout code;
    code.family = family;
    code.distance = d;
    for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) {
            code.qubits.push_back({(uint32_t)code.qubits.size(), Role::Data, {2 * i - 1, 2 * j - 1}});
        }
    }
    // Pair qubits sit on vertical data edges for hex and on horizontal ones for square.
    const bool hex = family == Family::HeavyHexagon;
    if (hex) {
        for (int i = 1; i < d; ++i) {
            for (int j = 1; j <= d; ++j) {
                code.qubits.push_back({(uint32_t)code.qubits.size(), Role::Flag, {2 * i, 2 * j - 1}});
            }
        }
    } else {
        for (int i = 1; i <= d; ++i) {
            for (int j = 1; j < d; ++j) {
                code.qubits.push_back({(uint32_t)code.qubits.size(), Role::Flag, {2 * i - 1, 2 * j}});
            }
        }
    }
    auto vpair = [&](int i, int j) { return d * d + (i - 1) * d + (j - 1); };
    auto hpair = [&](int i, int j) { return d * d + (i - 1) * (d - 1) + (j - 1); };
    auto dq = [&](int i, int j) { return (uint32_t)((i - 1) * d + (j - 1)); };

    for (int i = 1; i < d; ++i) {
        for (int j = 1; j < d; ++j) {
            bool x_face = (i + j) % 2 == 0;
            if (!x_face && family == Family::HeavyHexagon) {
                continue;
            }
            PendingGen g;
            g.type = x_face ? 'X' : 'Z';
            g.coord = {2 * i, 2 * j};
            g.corners = {(int)dq(i, j), (int)dq(i, j + 1), (int)dq(i + 1, j), (int)dq(i + 1, j + 1)};
            g.data = {dq(i, j), dq(i, j + 1), dq(i + 1, j), dq(i + 1, j + 1)};
            if (hex) {
                g.flags = {vpair(i, j), vpair(i, j + 1)};
            } else {
                g.flags = {hpair(i, j), hpair(i + 1, j)};
            }
            gens.push_back(g);
        }
    }
    for (int j = 2; j < d; j += 2) {
        PendingGen g;
        g.type = 'X';
        g.coord = {0, 2 * j};
        g.data = {dq(1, j), dq(1, j + 1)};
        if (!hex) {
            g.coord = {1, 2 * j};
            g.syndrome = hpair(1, j);
        }
        gens.push_back(g);
    }
    for (int j = 1; j < d; j += 2) {
        PendingGen g;
        g.type = 'X';
        g.coord = {2 * d, 2 * j};
        g.data = {dq(d, j), dq(d, j + 1)};
        if (!hex) {
            g.coord = {2 * d - 1, 2 * j};
            g.syndrome = hpair(d, j);
        }
        gens.push_back(g);
    }
    return code;
}

void finish(CodeLayout &code, std::vector<PendingGen> &gens) {
    // Fresh syndrome qubits are numbered in row-major coordinate order.
    std::vector<size_t> fresh;
    for (size_t k = 0; k < gens.size(); ++k) {
        if (gens[k].syndrome < 0) {
            fresh.push_back(k);
        }
    }
    std::sort(fresh.begin(), fresh.end(), [&](size_t a, size_t b) {
        const Coord &ca = gens[a].coord;
        const Coord &cb = gens[b].coord;
        return std::make_pair(ca.row, ca.col) < std::make_pair(cb.row, cb.col);
    });
    for (size_t k : fresh) {
        gens[k].syndrome = (int)code.qubits.size();
        code.qubits.push_back({(uint32_t)code.qubits.size(), Role::Syndrome, gens[k].coord});
    }
    size_t n = code.qubits.size();

    std::vector<size_t> order(gens.size());
    for (size_t k = 0; k < order.size(); ++k) {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const Coord &ca = gens[a].coord;
        const Coord &cb = gens[b].coord;
        return std::make_pair(ca.row, ca.col) < std::make_pair(cb.row, cb.col);
    });
    std::set<std::pair<uint32_t, uint32_t>> couplings;
    auto couple = [&](int a, int b) {
        uint32_t u = (uint32_t)std::min(a, b);
        uint32_t v = (uint32_t)std::max(a, b);
        couplings.insert({u, v});
    };
    for (size_t k : order) {
        const PendingGen &g = gens[k];
        MeasuredGenerator m;
        m.type = g.type;
        m.syndrome = (uint32_t)g.syndrome;
        m.flags = g.flags;
        m.corners = g.corners;
        m.data = g.data;
        if (g.type == 'X') {
            m.op = PauliOp(n, g.data, {});
            code.x_gauge.push_back(m.op);
            code.x_measured.push_back(m);
        } else {
            m.op = PauliOp(n, {}, g.data);
            code.z_gauge.push_back(m.op);
            code.z_measured.push_back(m);
        }
        if (m.has_flags()) {
            couple(g.syndrome, g.flags[0]);
            couple(g.syndrome, g.flags[1]);
            bool hex = code.family == Family::HeavyHexagon;
            couple(g.flags[0], g.corners[0]);
            couple(g.flags[0], g.corners[hex ? 2 : 1]);
            couple(g.flags[1], g.corners[hex ? 1 : 2]);
            couple(g.flags[1], g.corners[3]);
        } else {
            for (uint32_t q : g.data) {
                couple(g.syndrome, (int)q);
            }
        }
    }
    code.couplings.assign(couplings.begin(), couplings.end());

    int d = code.distance;
    std::vector<uint32_t> col1;
    std::vector<uint32_t> row1;
    for (int i = 1; i <= d; ++i) {
        col1.push_back(code.data_qubit(i, 1));
        row1.push_back(code.data_qubit(1, i));
    }
    code.logical_x = PauliOp(n, col1, {});
    code.logical_z = PauliOp(n, {}, row1);
}

int find_gauge(const std::vector<PauliOp> &gauges, const PauliOp &op) {
    for (size_t k = 0; k < gauges.size(); ++k) {
        if (gauges[k] == op) {
            return (int)k;
        }
    }
    throw std::logic_error("gauge not found");
}

}  // namespace

CodeLayout build_heavy_hexagon(int d) {
    check_distance(d);
    std::vector<PendingGen> gens;
    CodeLayout code = build_common(Family::HeavyHexagon, d, gens);
    for (int i = 1; i < d; ++i) {
        for (int j = 1; j <= d; ++j) {
            PendingGen g;
            g.type = 'Z';
            g.coord = {2 * i, 2 * j - 1};
            g.data = {code.data_qubit(i, j), code.data_qubit(i + 1, j)};
            g.syndrome = d * d + (i - 1) * d + (j - 1);
            gens.push_back(g);
        }
    }
    finish(code, gens);
    size_t n = code.n_qubits();

    auto zpair = [&](int i, int j) {
        return find_gauge(code.z_gauge, PauliOp(n, {}, {code.data_qubit(i, j), code.data_qubit(i + 1, j)}));
    };
    struct Entry {
        Coord at;
        std::vector<int> gauges;
    };
    std::vector<Entry> zs;
    for (int i = 1; i < d; ++i) {
        for (int j = 1; j < d; ++j) {
            if ((i + j) % 2 == 1) {
                zs.push_back({{2 * i, 2 * j}, {zpair(i, j), zpair(i, j + 1)}});
            }
        }
        if (i % 2 == 1) {
            zs.push_back({{2 * i, 0}, {zpair(i, 1)}});
        } else {
            zs.push_back({{2 * i, 2 * d}, {zpair(i, d)}});
        }
    }
    std::sort(zs.begin(), zs.end(), [](const Entry &a, const Entry &b) {
        return std::make_pair(a.at.row, a.at.col) < std::make_pair(b.at.row, b.at.col);
    });
    for (const Entry &e : zs) {
        PauliOp op(n);
        for (int g : e.gauges) {
            op = multiply(op, code.z_gauge[g]);
        }
        code.z_stabilizers.push_back(op);
        code.z_stabilizer_gauges.push_back(e.gauges);
    }

    for (int j = 1; j < d; ++j) {
        std::vector<int> members;
        PauliOp op(n);
        for (size_t k = 0; k < code.x_gauge.size(); ++k) {
            bool inside = true;
            for (uint32_t q : code.x_gauge[k].x_support()) {
                int col = (int)(q % d) + 1;
                if (col != j && col != j + 1) {
                    inside = false;
                }
            }
            if (inside) {
                members.push_back((int)k);
                op = multiply(op, code.x_gauge[k]);
            }
        }
        code.x_stabilizers.push_back(op);
        code.x_stabilizer_gauges.push_back(members);
    }
    return code;
}

CodeLayout build_heavy_square(int d) {
    check_distance(d);
    std::vector<PendingGen> gens;
    CodeLayout code = build_common(Family::HeavySquare, d, gens);
    for (int i = 1; i < d; ++i) {
        PendingGen g;
        g.type = 'Z';
        if (i % 2 == 1) {
            g.coord = {2 * i, 0};
            g.data = {code.data_qubit(i, 1), code.data_qubit(i + 1, 1)};
        } else {
            g.coord = {2 * i, 2 * d};
            g.data = {code.data_qubit(i, d), code.data_qubit(i + 1, d)};
        }
        gens.push_back(g);
    }
    finish(code, gens);
    code.x_stabilizers = code.x_gauge;
    code.z_stabilizers = code.z_gauge;
    for (size_t k = 0; k < code.x_gauge.size(); ++k) {
        code.x_stabilizer_gauges.push_back({(int)k});
    }
    for (size_t k = 0; k < code.z_gauge.size(); ++k) {
        code.z_stabilizer_gauges.push_back({(int)k});
    }
    return code;
}

CodeLayout build_code(Family family, int d) {
    return family == Family::HeavyHexagon ? build_heavy_hexagon(d) : build_heavy_square(d);
}

int max_degree(const CodeLayout &code) {
    std::vector<int> deg(code.n_qubits(), 0);
    for (auto [a, b] : code.couplings) {
        ++deg[a];
        ++deg[b];
    }
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

ValidationReport validate(const CodeLayout &code) {
    ValidationReport rep;
    auto fail = [&](const std::string &s) { rep.violations.push_back(s); };
    int d = code.distance;
    size_t n = code.n_qubits();
    if (d < 3 || d % 2 == 0) {
        fail("distance must be odd and >= 3");
        return rep;
    }
    size_t nd = code.count(Role::Data);
    size_t nf = code.count(Role::Flag);
    size_t ns = code.count(Role::Syndrome);
    if (nd != (size_t)(d * d)) {
        fail("data count " + std::to_string(nd));
    }
    if (code.family == Family::HeavyHexagon) {
        if (ns != (size_t)((d + 1) * (d - 1) / 2)) {
            fail("syndrome count " + std::to_string(ns));
        }
        if (nf != (size_t)(d * (d - 1))) {
            fail("flag count " + std::to_string(nf));
        }
        if (n != (size_t)((5 * d * d - 2 * d - 1) / 2)) {
            fail("total count " + std::to_string(n));
        }
    } else {
        if (nf + ns != (size_t)(2 * d * (d - 1))) {
            fail("ancilla count " + std::to_string(nf + ns));
        }
        if (n != (size_t)(3 * d * d - 2 * d)) {
            fail("total count " + std::to_string(n));
        }
    }
    for (const QubitInfo &q : code.qubits) {
        if (q.role == Role::Data) {
            if (q.coord.row % 2 == 0 || q.coord.col % 2 == 0 || q.coord.row < 1 || q.coord.col < 1 ||
                q.coord.row > 2 * d - 1 || q.coord.col > 2 * d - 1) {
                fail("data qubit " + std::to_string(q.index) + " off the data sublattice");
            }
        }
    }
    auto all_ops = [&](char t) {
        std::vector<std::pair<std::string, const PauliOp *>> v;
        const auto &g = code.gauges(t);
        const auto &s = code.stabilizers(t);
        for (size_t k = 0; k < g.size(); ++k) {
            v.push_back({std::string(1, t) + "-gauge " + std::to_string(k), &g[k]});
        }
        for (size_t k = 0; k < s.size(); ++k) {
            v.push_back({std::string(1, t) + "-stabilizer " + std::to_string(k), &s[k]});
        }
        return v;
    };
    auto xs = all_ops('X');
    auto zs = all_ops('Z');
    std::vector<std::pair<std::string, const PauliOp *>> everything = xs;
    everything.insert(everything.end(), zs.begin(), zs.end());
    for (auto &[name, op] : everything) {
        if (op->n_qubits() != n) {
            fail(name + " has wrong size");
        }
    }
    if (!rep.ok()) {
        return rep;
    }
    std::vector<std::pair<std::string, const PauliOp *>> stabs;
    for (char t : {'X', 'Z'}) {
        const auto &s = code.stabilizers(t);
        for (size_t k = 0; k < s.size(); ++k) {
            stabs.push_back({std::string(1, t) + "-stabilizer " + std::to_string(k), &s[k]});
        }
    }
    for (auto &[sn, s] : stabs) {
        for (auto &[on, o] : everything) {
            if (!commutes(*s, *o)) {
                fail(sn + " anticommutes with " + on);
            }
        }
        if (!commutes(*s, code.logical_x)) {
            fail(sn + " anticommutes with logical_x");
        }
        if (!commutes(*s, code.logical_z)) {
            fail(sn + " anticommutes with logical_z");
        }
    }
    if (commutes(code.logical_x, code.logical_z)) {
        fail("logical_x commutes with logical_z");
    }
    for (auto &[on, o] : everything) {
        if (!commutes(code.logical_x, *o)) {
            fail("logical_x anticommutes with " + on);
        }
        if (!commutes(code.logical_z, *o)) {
            fail("logical_z anticommutes with " + on);
        }
    }
    for (char t : {'X', 'Z'}) {
        const auto &s = code.stabilizers(t);
        const auto &sg = code.stabilizer_gauges(t);
        if (sg.size() != s.size()) {
            fail(std::string(1, t) + " stabilizer decomposition missing");
            continue;
        }
        for (size_t k = 0; k < s.size(); ++k) {
            PauliOp prod(n);
            for (int g : sg[k]) {
                prod = multiply(prod, code.gauges(t).at(g));
            }
            if (!(prod == s[k])) {
                fail(std::string(1, t) + "-stabilizer " + std::to_string(k) + " is not the product of its gauges");
            }
        }
        const auto &ms = code.measured(t);
        for (size_t k = 0; k < ms.size(); ++k) {
            size_t w = ms[k].op.weight();
            if (w == 4 && !ms[k].has_flags()) {
                fail(std::string(1, t) + "-gauge " + std::to_string(k) + " is weight four without flags");
            }
            if (w == 2 && ms[k].has_flags()) {
                fail(std::string(1, t) + "-gauge " + std::to_string(k) + " is weight two with flags");
            }
        }
    }
    int deg = max_degree(code);
    int bound = code.family == Family::HeavyHexagon ? 3 : 4;
    if (deg > bound) {
        fail("max degree " + std::to_string(deg) + " exceeds " + std::to_string(bound));
    }
    return rep;
}

namespace {

uint32_t data_mask(const PauliOp &op, bool x_part) {
    uint32_t m = 0;
    for (uint32_t q : x_part ? op.x_support() : op.z_support()) {
        m |= 1u << q;
    }
    return m;
}

int min_weight_logical(const CodeLayout &code, bool x_type) {
    int nd = code.distance * code.distance;
    // An X-type operator must commute with every Z stabilizer and flip logical_z.
    std::vector<uint32_t> checks;
    for (const PauliOp &s : code.stabilizers(x_type ? 'Z' : 'X')) {
        checks.push_back(data_mask(s, !x_type));
    }
    uint32_t logical = data_mask(x_type ? code.logical_z : code.logical_x, !x_type);
    for (int w = 1; w <= nd; ++w) {
        uint32_t v = (1u << w) - 1;
        uint32_t limit = 1u << nd;
        while (v < limit) {
            bool ok = std::popcount(v & logical) % 2 == 1;
            for (size_t k = 0; ok && k < checks.size(); ++k) {
                ok = std::popcount(v & checks[k]) % 2 == 0;
            }
            if (ok) {
                return w;
            }
            uint32_t t = v | (v - 1);
            v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
        }
    }
    return -1;
}

}  // namespace

int code_distance_bruteforce(const CodeLayout &code) {
    if (code.distance > 5) {
        throw std::invalid_argument("code_distance_bruteforce refuses d > 5");
    }
    return std::min(min_weight_logical(code, true), min_weight_logical(code, false));
}

std::string layout_to_json(const CodeLayout &code) {
    using nlohmann::json;
    json j;
    j["format"] = "heavylat-layout";
    j["version"] = 1;
    j["family"] = family_name(code.family);
    j["distance"] = code.distance;
    json qs = json::array();
    for (const QubitInfo &q : code.qubits) {
        json e = {{"index", q.index}, {"role", role_name(q.role)}, {"row", q.coord.row}, {"col", q.coord.col}};
        if (q.frequency_class > 0) {
            e["frequency_class"] = "f" + std::to_string(q.frequency_class);
        }
        qs.push_back(e);
    }
    j["qubits"] = qs;
    auto ops = [](const std::vector<PauliOp> &v) {
        json a = json::array();
        for (const PauliOp &p : v) {
            a.push_back(p.str());
        }
        return a;
    };
    j["x_gauge"] = ops(code.x_gauge);
    j["z_gauge"] = ops(code.z_gauge);
    j["x_stabilizers"] = ops(code.x_stabilizers);
    j["z_stabilizers"] = ops(code.z_stabilizers);
    j["logical_x"] = code.logical_x.str();
    j["logical_z"] = code.logical_z.str();
    json gens = json::array();
    for (char t : {'X', 'Z'}) {
        for (const MeasuredGenerator &m : code.measured(t)) {
            gens.push_back({{"type", std::string(1, t)},
                            {"op", m.op.str()},
                            {"syndrome", m.syndrome},
                            {"flags", {m.flags[0], m.flags[1]}}});
        }
    }
    j["measured"] = gens;
    return j.dump(2) + "\n";
}

CodeLayout layout_from_json(const std::string &text) {
    using nlohmann::json;
    json j = json::parse(text);
    if (j.value("format", "") != "heavylat-layout") {
        throw std::invalid_argument("not a heavylat layout document");
    }
    if (j.value("version", 0) != 1) {
        throw std::invalid_argument("unsupported layout version");
    }
    CodeLayout code = build_code(parse_family(j.at("family").get<std::string>()), j.at("distance").get<int>());
    size_t n = code.n_qubits();
    auto same = [&](const char *key, const std::vector<PauliOp> &v) {
        const json &a = j.at(key);
        if (a.size() != v.size()) {
            return false;
        }
        for (size_t k = 0; k < v.size(); ++k) {
            if (!(PauliOp::from_text(a[k].get<std::string>(), n) == v[k])) {
                return false;
            }
        }
        return true;
    };
    if (!same("x_gauge", code.x_gauge) || !same("z_gauge", code.z_gauge) ||
        !same("x_stabilizers", code.x_stabilizers) || !same("z_stabilizers", code.z_stabilizers) ||
        j.at("qubits").size() != n) {
        throw std::invalid_argument("layout document does not match the built lattice");
    }
    for (size_t q = 0; q < n; ++q) {
        const json &e = j["qubits"][q];
        if (e.contains("frequency_class")) {
            code.qubits[q].frequency_class = std::stoi(e["frequency_class"].get<std::string>().substr(1));
        }
    }
    return code;
}

}  // namespace heavylat
