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

#include "heavylat/experiment.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "heavylat/rng.h"
#include "json.hpp"

#ifndef HEAVYLAT_GIT_REV
#define HEAVYLAT_GIT_REV "unknown"
#endif

namespace heavylat {

namespace {

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

double to_double(const std::string &s) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception &) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

uint64_t to_u64(const std::string &s) {
    uint64_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

std::string fmt(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace

std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) throw std::invalid_argument("grid must be a:b:N or a:b:logN, got '" + text + "'");
        double a = to_double(parts[0]), b = to_double(parts[1]);
        bool log = parts[2].rfind("log", 0) == 0;
        uint64_t n = to_u64(log ? parts[2].substr(3) : parts[2]);
        if (n < 1) throw std::invalid_argument("grid needs at least one point");
        if (b < a) throw std::invalid_argument("grid end below start");
        if (log && !(a > 0)) throw std::invalid_argument("log grid needs a positive start");
        for (uint64_t i = 0; i < n; ++i) {
            double t = n == 1 ? 0.0 : (double)i / (double)(n - 1);
            out.push_back(log ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a));
        }
        out.front() = a;
        out.back() = n == 1 ? a : b;
    } else {
        for (const std::string &s : split(text, ',')) out.push_back(to_double(s));
        if (out.empty()) throw std::invalid_argument("empty grid");
        if (!std::is_sorted(out.begin(), out.end())) throw std::invalid_argument("grid must be ascending");
    }
    return out;
}

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    for (const std::string &s : split(text, ',')) out.push_back((int)to_u64(s));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

void Campaign::check() const {
    if (shots < 1) throw std::invalid_argument("shots must be at least 1");
    if (distances.empty()) throw std::invalid_argument("no distances");
    for (int d : distances) {
        if (d < 3 || d % 2 == 0) throw std::invalid_argument("distances must be odd and at least 3");
    }
    if (!std::is_sorted(ps.begin(), ps.end())) throw std::invalid_argument("p grid must be ascending");
    for (double p : ps) NoiseParams{p, idle}.check();
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

Interval wilson(uint64_t k, uint64_t n) {
    if (n == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    double ph = (double)k / (double)n, nn = (double)n;
    double den = 1 + z * z / nn;
    double mid = (ph + z * z / (2 * nn)) / den;
    double half = z * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn)) / den;
    return {std::max(0.0, mid - half), std::min(1.0, mid + half)};
}

double RatePoint::rate(char type) const {
    if (shots == 0) return 0.0;
    return (double)(type == 'X' ? x_fail : type == 'Z' ? z_fail : y_fail) / (double)shots;
}

void RatePoint::fill_intervals() {
    Interval x = wilson(x_fail, shots), z = wilson(z_fail, shots);
    x_lo = x.lo;
    x_hi = x.hi;
    z_lo = z.lo;
    z_hi = z.hi;
}

bool RatePoint::operator==(const RatePoint &o) const {
    return family == o.family && d == o.d && p == o.p && shots == o.shots && x_fail == o.x_fail &&
           z_fail == o.z_fail && y_fail == o.y_fail && x_lo == o.x_lo && x_hi == o.x_hi && z_lo == o.z_lo &&
           z_hi == o.z_hi;
}

uint64_t point_stream(uint64_t seed, int d, int p_index) { return stream_key(seed, (uint64_t)d, (uint64_t)p_index); }

RatePoint run_point(const Campaign &c, int d, int p_index) {
    c.check();
    RatePoint pt;
    pt.family = c.family;
    pt.d = d;
    pt.p = c.ps.at((size_t)p_index);
    pt.p_index = p_index;
    pt.stream = point_stream(c.seed, d, p_index);

    NoiseParams np{pt.p, c.idle};
    Experiment exp(build_code(c.family, d), d);
    ShotDecoder dec(exp, np, {c.flags, c.alpha});
    FaultSampler sampler(exp.circuit(), d, np);

    const uint64_t lanes = BatchSimulator::kLanes;
    const uint64_t batches = (c.shots + lanes - 1) / lanes;
    std::atomic<uint64_t> next{0};
    std::atomic<bool> stopped{false};
    auto start = std::chrono::steady_clock::now();
    int workers = (int)std::min<uint64_t>((uint64_t)c.threads, batches);
    std::vector<std::array<uint64_t, 4>> tallies((size_t)workers, {0, 0, 0, 0});

    auto work = [&](int w) {
        BatchSimulator sim(exp);
        std::vector<std::vector<Fault>> faults;
        std::vector<ShotData> shots;
        auto &t = tallies[(size_t)w];
        for (;;) {
            if (c.time_limit > 0) {
                double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                if (el > c.time_limit) {
                    stopped = true;
                    return;
                }
            }
            uint64_t b = next.fetch_add(1);
            if (b >= batches) return;
            uint64_t first = b * lanes, count = std::min(lanes, c.shots - first);
            faults.resize(count);
            for (uint64_t i = 0; i < count; ++i) {
                std::mt19937_64 rng = stream_rng(pt.stream, first + i);
                faults[i].clear();
                sampler.sample(rng, faults[i]);
            }
            sim.run(faults, shots);
            for (const ShotData &s : shots) {
                switch (dec.decode(s).failure) {
                    case FailureClass::X: ++t[1]; break;
                    case FailureClass::Z: ++t[2]; break;
                    case FailureClass::Y: ++t[3]; break;
                    default: break;
                }
            }
            t[0] += count;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto &th : pool) th.join();
    }
    for (const auto &t : tallies) {
        pt.shots += t[0];
        pt.x_fail += t[1];
        pt.z_fail += t[2];
        pt.y_fail += t[3];
    }
    pt.partial = stopped.load() && pt.shots < c.shots;
    pt.fill_intervals();
    return pt;
}

std::vector<RatePoint> run_campaign(const Campaign &c) {
    c.check();
    std::vector<RatePoint> out;
    for (int d : c.distances) {
        for (int i = 0; i < (int)c.ps.size(); ++i) out.push_back(run_point(c, d, i));
    }
    return out;
}

namespace {

struct Pair {
    double x;
    uint64_t k1, n1, k2, n2;
};

double log_rate(uint64_t k, uint64_t n) { return std::log(((double)k + 0.5) / ((double)n + 1.0)); }

/// Root of log(r2/r1) in log p, or NaN.
double crossing_of(const std::vector<Pair> &pts) {
    std::vector<double> xs, ds;
    for (const Pair &q : pts) {
        if (q.k1 == 0 && q.k2 == 0) continue;
        xs.push_back(q.x);
        ds.push_back(log_rate(q.k2, q.n2) - log_rate(q.k1, q.n1));
    }
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(ds[i] < 0 && ds[i + 1] >= 0)) continue;
        size_t a = i > 0 ? i - 1 : 0, b = std::min(xs.size() - 1, i + 2);
        double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
        for (size_t j = a; j <= b; ++j) {
            sx += xs[j];
            sy += ds[j];
            sxx += xs[j] * xs[j];
            sxy += xs[j] * ds[j];
            n += 1;
        }
        double den = n * sxx - sx * sx;
        double slope = den != 0 ? (n * sxy - sx * sy) / den : 0.0;
        if (slope > 0) {
            double icpt = (sy - slope * sx) / n;
            double root = -icpt / slope;
            if (root >= xs[a] && root <= xs[b]) return root;
        }
        return xs[i] + (xs[i + 1] - xs[i]) * (-ds[i]) / (ds[i + 1] - ds[i]);
    }
    return std::nan("");
}

}  // namespace

Crossing find_crossing(const std::vector<RatePoint> &points, char type, int d1, int d2, int bootstrap, uint64_t seed) {
    Crossing c;
    c.d1 = d1;
    c.d2 = d2;
    auto count = [type](const RatePoint &r) { return type == 'X' ? r.x_fail : type == 'Z' ? r.z_fail : r.y_fail; };
    std::vector<Pair> pts;
    for (const RatePoint &a : points) {
        if (a.d != d1 || a.shots == 0 || !(a.p > 0)) continue;
        for (const RatePoint &b : points) {
            if (b.d == d2 && b.p == a.p && b.shots > 0) pts.push_back({std::log(a.p), count(a), a.shots, count(b), b.shots});
        }
    }
    std::sort(pts.begin(), pts.end(), [](const Pair &u, const Pair &v) { return u.x < v.x; });
    double root = crossing_of(pts);
    if (std::isnan(root)) return c;
    c.found = true;
    c.p = std::exp(root);
    std::mt19937_64 rng(stream_key(seed, (uint64_t)d1, (uint64_t)d2, (uint64_t)type));
    std::vector<double> reps;
    for (int r = 0; r < bootstrap; ++r) {
        std::vector<Pair> re = pts;
        for (Pair &q : re) {
            q.k1 = std::binomial_distribution<uint64_t>(q.n1, (double)q.k1 / (double)q.n1)(rng);
            q.k2 = std::binomial_distribution<uint64_t>(q.n2, (double)q.k2 / (double)q.n2)(rng);
        }
        double x = crossing_of(re);
        if (!std::isnan(x)) reps.push_back(x);
    }
    if (reps.empty()) {
        c.lo = c.hi = c.p;
    } else {
        std::sort(reps.begin(), reps.end());
        c.lo = std::exp(reps[(size_t)std::floor(0.025 * (double)(reps.size() - 1))]);
        c.hi = std::exp(reps[(size_t)std::ceil(0.975 * (double)(reps.size() - 1))]);
    }
    return c;
}

ThresholdEstimate estimate_threshold(const std::vector<RatePoint> &points, char type, int bootstrap, uint64_t seed) {
    std::vector<int> ds;
    for (const RatePoint &r : points) ds.push_back(r.d);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    if (ds.size() < 2) throw std::invalid_argument("threshold needs at least two distances");
    ThresholdEstimate t;
    double logsum = 0;
    int found = 0;
    for (size_t i = 0; i + 1 < ds.size(); ++i) {
        Crossing c = find_crossing(points, type, ds[i], ds[i + 1], bootstrap, seed);
        t.pairs.push_back(c);
        if (!c.found) continue;
        logsum += std::log(c.p);
        t.lo = found == 0 ? c.lo : std::min(t.lo, c.lo);
        t.hi = found == 0 ? c.hi : std::max(t.hi, c.hi);
        ++found;
    }
    if (found > 0) {
        t.found = true;
        t.p_th = std::exp(logsum / found);
    }
    return t;
}

std::string csv_header() { return "family,d,p,shots,x_fail,z_fail,y_fail,x_lo,x_hi,z_lo,z_hi"; }

std::string to_csv(const std::vector<RatePoint> &points) {
    std::string out = csv_header() + "\n";
    for (const RatePoint &r : points) {
        out += family_name(r.family) + "," + std::to_string(r.d) + "," + fmt(r.p) + "," + std::to_string(r.shots) + "," +
               std::to_string(r.x_fail) + "," + std::to_string(r.z_fail) + "," + std::to_string(r.y_fail) + "," +
               fmt(r.x_lo) + "," + fmt(r.x_hi) + "," + fmt(r.z_lo) + "," + fmt(r.z_hi) + "\n";
    }
    return out;
}

std::vector<RatePoint> parse_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != csv_header()) throw std::invalid_argument("missing or unexpected CSV header");
    std::vector<RatePoint> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 11) throw std::invalid_argument("CSV row needs 11 fields: " + line);
        RatePoint r;
        r.family = parse_family(f[0]);
        r.d = (int)to_u64(f[1]);
        r.p = to_double(f[2]);
        r.shots = to_u64(f[3]);
        r.x_fail = to_u64(f[4]);
        r.z_fail = to_u64(f[5]);
        r.y_fail = to_u64(f[6]);
        r.x_lo = to_double(f[7]);
        r.x_hi = to_double(f[8]);
        r.z_lo = to_double(f[9]);
        r.z_hi = to_double(f[10]);
        out.push_back(r);
    }
    return out;
}

std::string to_json(const Campaign &c, const std::vector<RatePoint> &points) {
    nlohmann::ordered_json j;
    j["format"] = "heavylat-sweep";
    j["version"] = 1;
    j["git"] = HEAVYLAT_GIT_REV;
    j["family"] = family_name(c.family);
    j["distances"] = c.distances;
    j["p"] = c.ps;
    j["shots"] = c.shots;
    j["seed"] = c.seed;
    j["flags"] = c.flags;
    j["idle"] = idle_model_name(c.idle);
    j["alpha"] = c.alpha;
    j["rng"] = "shot i of a point draws from stream_rng(stream, i)";
    j["points"] = nlohmann::ordered_json::array();
    for (const RatePoint &r : points) {
        nlohmann::ordered_json q;
        q["d"] = r.d;
        q["p"] = r.p;
        q["p_index"] = r.p_index;
        q["stream"] = r.stream;
        q["shots"] = r.shots;
        q["x_fail"] = r.x_fail;
        q["z_fail"] = r.z_fail;
        q["y_fail"] = r.y_fail;
        q["partial"] = r.partial;
        j["points"].push_back(q);
    }
    return j.dump(2) + "\n";
}

}  // namespace heavylat
