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

#include "heavylat/collision.h"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>
#include <stdexcept>
#include <thread>

#include "heavylat/circuit.h"
#include "heavylat/rng.h"

namespace heavylat {

namespace {

// Minimise the expected collision count at sigma = 20 MHz; collision free at sigma = 0.
constexpr double kHeavyFreq[4] = {5000, 5090, 5240, 5130};
constexpr double kSurfaceFreq[5] = {5020, 5150, 5090, 5210, 5300};

int mod5(int x) { return ((x % 5) + 5) % 5; }

/// Residue of a lattice point in doubled coordinates; the four neighbours differ by +-1 and +-2.
int surface_class(int X, int Y) { return mod5((X + Y) / 2 + 2 * ((X - Y) / 2)); }

/// Plaquette (i, j) sits at the centre of data (i, j), (i, j+1), (i+1, j), (i+1, j+1).
bool surface_keep(int d, int i, int j) {
    bool in_i = i >= 0 && i <= d - 2, in_j = j >= 0 && j <= d - 2;
    if (in_i && in_j) return true;
    if (i == -1 && in_j) return j % 2 == 0;
    if (i == d - 1 && in_j) return j % 2 == 1;
    if (j == -1 && in_i) return i % 2 == 1;
    if (j == d - 1 && in_i) return i % 2 == 0;
    return false;
}

/// Undirected couplings of the heavy syndrome circuit.
std::vector<std::pair<int, int>> heavy_couplings(Family family, int d, int *n) {
    ScheduledCircuit c = build_round(build_code(family, d));
    std::set<std::pair<int, int>> edges;
    for (const TimeStep &st : c.steps) {
        for (const Gate &g : st.gates) {
            if (g.kind == GateKind::CNOT) edges.insert({(int)std::min(g.q0, g.q1), (int)std::max(g.q0, g.q1)});
        }
    }
    *n = (int)c.n_qubits;
    return {edges.begin(), edges.end()};
}

}  // namespace

Lattice parse_lattice(const std::string &s) {
    if (s == "hex" || s == "heavy-hex") return Lattice::HeavyHexagon;
    if (s == "square" || s == "heavy-square") return Lattice::HeavySquare;
    if (s == "surface" || s == "rotated-surface") return Lattice::RotatedSurface;
    throw std::invalid_argument("unknown lattice '" + s + "'");
}

std::string lattice_name(Lattice l) {
    switch (l) {
        case Lattice::HeavyHexagon: return "hex";
        case Lattice::HeavySquare: return "square";
        default: return "surface";
    }
}

Variant parse_variant(const std::string &s) {
    if (s == "bulk3") return Variant::Bulk3;
    if (s == "boundary4") return Variant::Boundary4;
    if (s == "surface5") return Variant::Surface5;
    throw std::invalid_argument("unknown variant '" + s + "'");
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Bulk3: return "bulk3";
        case Variant::Boundary4: return "boundary4";
        default: return "surface5";
    }
}

void Device::add(int control, int target) {
    int m = std::max(control, target) + 1;
    if (m > n) n = m;
    neighbors.resize((size_t)n);
    is_control.resize((size_t)n, 0);
    couplings.push_back({control, target});
    neighbors[(size_t)control].push_back(target);
    neighbors[(size_t)target].push_back(control);
    is_control[(size_t)control] = 1;
}

Device heavy_device(Family family, int d) {
    int n = 0;
    auto edges = heavy_couplings(family, d, &n);
    std::vector<std::vector<int>> adj((size_t)n);
    for (auto [a, b] : edges) {
        adj[(size_t)a].push_back(b);
        adj[(size_t)b].push_back(a);
    }
    std::vector<int> side((size_t)n, -1);
    for (int s = 0; s < n; ++s) {
        if (side[(size_t)s] >= 0) continue;
        side[(size_t)s] = 0;
        std::deque<int> q{s};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int w : adj[(size_t)u]) {
                if (side[(size_t)w] < 0) {
                    side[(size_t)w] = 1 - side[(size_t)u];
                    q.push_back(w);
                } else if (side[(size_t)w] == side[(size_t)u]) {
                    throw std::logic_error("coupling graph is not bipartite");
                }
            }
        }
    }
    size_t maxdeg[2] = {0, 0};
    for (int q = 0; q < n; ++q) maxdeg[side[(size_t)q]] = std::max(maxdeg[side[(size_t)q]], adj[(size_t)q].size());
    int ctrl = maxdeg[0] <= maxdeg[1] ? 0 : 1;
    if (maxdeg[ctrl] > 2) throw std::logic_error("no side of the coupling graph has degree at most two");
    Device dev;
    dev.n = n;
    dev.neighbors.resize((size_t)n);
    dev.is_control.resize((size_t)n, 0);
    for (auto [a, b] : edges) {
        if (side[(size_t)a] == ctrl) {
            dev.add(a, b);
        } else {
            dev.add(b, a);
        }
    }
    return dev;
}

Device surface_device(int d) {
    if (d < 3 || d % 2 == 0) throw std::invalid_argument("distance must be odd and at least 3");
    Device dev;
    dev.n = d * d;
    dev.neighbors.resize((size_t)dev.n);
    dev.is_control.resize((size_t)dev.n, 0);
    std::vector<std::pair<int, int>> anc;
    for (int i = -1; i <= d - 1; ++i) {
        for (int j = -1; j <= d - 1; ++j) {
            if (surface_keep(d, i, j)) anc.push_back({i, j});
        }
    }
    // Frequencies decide CNOT direction: the higher class controls.
    for (size_t k = 0; k < anc.size(); ++k) {
        int a = d * d + (int)k;
        auto [i, j] = anc[k];
        int ca = surface_class(2 * i + 1, 2 * j + 1);
        for (int di : {0, 1}) {
            for (int dj : {0, 1}) {
                int r = i + di, c = j + dj;
                if (r < 0 || r >= d || c < 0 || c >= d) continue;
                int q = r * d + c;
                int cq = surface_class(2 * r, 2 * c);
                if (kSurfaceFreq[ca] > kSurfaceFreq[cq]) {
                    dev.add(a, q);
                } else {
                    dev.add(q, a);
                }
            }
        }
    }
    return dev;
}

int FrequencyPattern::num_classes() const {
    std::set<int> s(cls.begin(), cls.end());
    return (int)s.size();
}

std::vector<double> FrequencyPattern::nominal() const {
    std::vector<double> out(cls.size());
    for (size_t q = 0; q < cls.size(); ++q) out[q] = class_freq[(size_t)cls[q]];
    return out;
}

namespace {

/// Target pairs sharing a control.
std::vector<std::vector<int>> conflicts(const Device &dev) {
    std::vector<std::vector<int>> cf((size_t)dev.n);
    for (int c = 0; c < dev.n; ++c) {
        if (!dev.is_control[(size_t)c]) continue;
        const auto &nb = dev.neighbors[(size_t)c];
        for (size_t i = 0; i < nb.size(); ++i) {
            for (size_t j = 0; j < nb.size(); ++j) {
                if (i != j) cf[(size_t)nb[i]].push_back(nb[j]);
            }
        }
    }
    return cf;
}

/// Two-colours targets by BFS from the most central target; -1 for controls.
std::vector<int> two_colour(const Device &dev, const std::vector<std::vector<int>> &cf) {
    std::vector<int> targets;
    for (int q = 0; q < dev.n; ++q) {
        if (!dev.is_control[(size_t)q]) targets.push_back(q);
    }
    auto bfs = [&](int root, std::vector<int> &dist) {
        dist.assign((size_t)dev.n, -1);
        dist[(size_t)root] = 0;
        std::deque<int> q{root};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int w : cf[(size_t)u]) {
                if (dist[(size_t)w] < 0) {
                    dist[(size_t)w] = dist[(size_t)u] + 1;
                    q.push_back(w);
                }
            }
        }
    };
    std::vector<int> dist, colour((size_t)dev.n, -1);
    std::vector<char> done((size_t)dev.n, 0);
    for (int t : targets) {
        if (done[(size_t)t]) continue;
        // Component of t; root at its smallest-eccentricity vertex.
        bfs(t, dist);
        std::vector<int> comp;
        for (int u : targets) {
            if (dist[(size_t)u] >= 0) comp.push_back(u);
        }
        int root = comp[0], best = INT_MAX;
        for (int u : comp) {
            bfs(u, dist);
            int ecc = 0;
            for (int w : comp) ecc = std::max(ecc, dist[(size_t)w]);
            if (ecc < best) {
                best = ecc;
                root = u;
            }
        }
        bfs(root, dist);
        for (int u : comp) {
            colour[(size_t)u] = dist[(size_t)u] % 2;
            done[(size_t)u] = 1;
        }
    }
    return colour;
}

}  // namespace

FrequencyPattern assign_pattern(Lattice lattice, int d, Variant variant) {
    if ((lattice == Lattice::RotatedSurface) != (variant == Variant::Surface5)) {
        throw std::invalid_argument("variant " + variant_name(variant) + " does not fit lattice " + lattice_name(lattice));
    }
    FrequencyPattern pat;
    pat.lattice = lattice;
    pat.variant = variant;
    pat.d = d;
    if (lattice == Lattice::RotatedSurface) {
        pat.device = surface_device(d);
        pat.class_freq.assign(std::begin(kSurfaceFreq), std::end(kSurfaceFreq));
        pat.cls.resize((size_t)pat.device.n);
        for (int q = 0; q < d * d; ++q) pat.cls[(size_t)q] = surface_class(2 * (q / d), 2 * (q % d));
        int k = d * d;
        for (int i = -1; i <= d - 1; ++i) {
            for (int j = -1; j <= d - 1; ++j) {
                if (surface_keep(d, i, j)) pat.cls[(size_t)k++] = surface_class(2 * i + 1, 2 * j + 1);
            }
        }
        return pat;
    }
    Family fam = lattice == Lattice::HeavyHexagon ? Family::HeavyHexagon : Family::HeavySquare;
    Device dev = heavy_device(fam, d);
    auto cf = conflicts(dev);
    std::vector<int> colour = two_colour(dev, cf);
    pat.class_freq.assign(std::begin(kHeavyFreq), std::end(kHeavyFreq));
    if (variant == Variant::Bulk3) {
        Device out;
        out.n = dev.n;
        out.neighbors.resize((size_t)dev.n);
        out.is_control.resize((size_t)dev.n, 0);
        std::vector<int> cls((size_t)dev.n);
        for (int q = 0; q < dev.n; ++q) cls[(size_t)q] = dev.is_control[(size_t)q] ? 0 : 1 + colour[(size_t)q];
        std::set<std::pair<int, int>> split;
        for (int c = 0; c < dev.n; ++c) {
            const auto &nb = dev.neighbors[(size_t)c];
            if (dev.is_control[(size_t)c] && nb.size() == 2 && colour[(size_t)nb[0]] == colour[(size_t)nb[1]]) {
                split.insert({c, std::max(nb[0], nb[1])});
            }
        }
        for (auto [c, t] : dev.couplings) {
            if (!split.count({c, t})) {
                out.add(c, t);
                continue;
            }
            int t2 = out.n, c2 = out.n + 1;
            out.add(c, t2);
            out.add(c2, t2);
            out.add(c2, t);
            cls.push_back(1 + (1 - colour[(size_t)t]));
            cls.push_back(0);
        }
        pat.device = std::move(out);
        pat.cls = std::move(cls);
    } else {
        std::vector<int> cls((size_t)dev.n);
        for (int q = 0; q < dev.n; ++q) cls[(size_t)q] = dev.is_control[(size_t)q] ? 0 : 1 + colour[(size_t)q];
        for (int c = 0; c < dev.n; ++c) {
            const auto &nb = dev.neighbors[(size_t)c];
            if (!dev.is_control[(size_t)c] || nb.size() != 2 || cls[(size_t)nb[0]] != cls[(size_t)nb[1]]) continue;
            auto free_for_f4 = [&](int t) {
                for (int w : cf[(size_t)t]) {
                    if (cls[(size_t)w] == 3) return false;
                }
                return true;
            };
            int t = std::max(nb[0], nb[1]), o = std::min(nb[0], nb[1]);
            if (free_for_f4(t)) {
                cls[(size_t)t] = 3;
            } else if (free_for_f4(o)) {
                cls[(size_t)o] = 3;
            } else {
                throw std::logic_error("four classes do not suffice");
            }
        }
        pat.device = std::move(dev);
        pat.cls = std::move(cls);
    }
    // Distinct classes on every target pair that shares a control.
    auto cf2 = conflicts(pat.device);
    for (int q = 0; q < pat.device.n; ++q) {
        for (int w : cf2[(size_t)q]) {
            if (pat.cls[(size_t)q] == pat.cls[(size_t)w]) throw std::logic_error("pattern has a degenerate target pair");
        }
    }
    return pat;
}

void CollisionWindows::check() const {
    for (double w : window) {
        if (!(w > 0)) throw std::invalid_argument("collision windows must be positive");
    }
    if (!(band_lo >= 0 && band_hi > band_lo)) throw std::invalid_argument("bad rule-7 band");
}

int CollisionCount::total() const {
    int s = 0;
    for (int v : per_rule) s += v;
    return s;
}

CollisionCount count_collisions(const FrequencyPattern &pat, const std::vector<double> &w01,
                                const CollisionWindows &win) {
    if (w01.size() != (size_t)pat.device.n) throw std::invalid_argument("one frequency per qubit required");
    const double delta = pat.anharmonicity;
    const auto &W = win.window;
    CollisionCount out;
    auto near = [](double a, double b, double w) { return std::fabs(a - b) < w; };
    for (auto [c, t] : pat.device.couplings) {
        double a = w01[(size_t)c], b = w01[(size_t)t];
        if (near(a, b, W[0])) ++out.per_rule[0];
        if (near(a, b + delta, W[1]) || near(b, a + delta, W[1])) ++out.per_rule[1];
        if (near(a, b + delta / 2, W[2]) || near(b, a + delta / 2, W[2])) ++out.per_rule[2];
        double gap = std::fabs(a - b);
        if (gap < win.band_lo || gap > win.band_hi) ++out.per_rule[6];
    }
    for (int c = 0; c < pat.device.n; ++c) {
        if (!pat.device.is_control[(size_t)c]) continue;
        const auto &nb = pat.device.neighbors[(size_t)c];
        double w02 = 2 * w01[(size_t)c] + delta;
        for (size_t i = 0; i < nb.size(); ++i) {
            for (size_t j = i + 1; j < nb.size(); ++j) {
                double a = w01[(size_t)nb[i]], b = w01[(size_t)nb[j]];
                if (near(a, b, W[3])) ++out.per_rule[3];
                if (near(a, b + delta, W[4]) || near(b, a + delta, W[4])) ++out.per_rule[4];
                if (near(w02, a + b, W[5])) ++out.per_rule[5];
            }
        }
    }
    return out;
}

std::vector<SigmaPoint> sweep_sigma(const FrequencyPattern &pat, const std::vector<double> &sigmas, int trials,
                                    uint64_t seed, const CollisionWindows &win, int threads) {
    if (trials < 1000) throw std::invalid_argument("at least 1000 trials required");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
    for (double s : sigmas) {
        if (!(s >= 0)) throw std::invalid_argument("sigma must be non-negative");
    }
    win.check();
    const size_t ns = sigmas.size();
    std::vector<int> counts((size_t)trials * ns);
    const std::vector<double> nominal = pat.nominal();
    const uint64_t key = stream_key(seed, 0);
    std::atomic<int> next{0};
    auto work = [&]() {
        std::vector<double> z(nominal.size()), f(nominal.size());
        for (int t; (t = next.fetch_add(1)) < trials;) {
            std::mt19937_64 rng = stream_rng(key, (uint64_t)t);
            std::normal_distribution<double> g(0.0, 1.0);
            for (double &v : z) v = g(rng);
            for (size_t s = 0; s < ns; ++s) {
                for (size_t q = 0; q < f.size(); ++q) f[q] = nominal[q] + sigmas[s] * z[q];
                counts[(size_t)t * ns + s] = count_collisions(pat, f, win).total();
            }
        }
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
        for (auto &th : pool) th.join();
    }
    std::vector<SigmaPoint> out;
    for (size_t s = 0; s < ns; ++s) {
        double sum = 0, sq = 0;
        for (int t = 0; t < trials; ++t) {
            double c = counts[(size_t)t * ns + s];
            sum += c;
            sq += c * c;
        }
        double mean = sum / trials;
        double var = trials > 1 ? std::max(0.0, (sq - trials * mean * mean) / (trials - 1)) : 0.0;
        out.push_back({sigmas[s], mean, std::sqrt(var / trials)});
    }
    return out;
}

std::string collision_csv_header() { return "variant,d,sigma_f,mean_collisions,stderr"; }

std::string collisions_to_csv(const FrequencyPattern &pat, const std::vector<SigmaPoint> &pts) {
    std::string out = collision_csv_header() + "\n";
    char buf[160];
    for (const SigmaPoint &p : pts) {
        std::snprintf(buf, sizeof buf, "%s,%d,%.6g,%.6f,%.6f\n", variant_name(pat.variant).c_str(), pat.d, p.sigma, p.mean,
                      p.std_err);
        out += buf;
    }
    return out;
}

}  // namespace heavylat
