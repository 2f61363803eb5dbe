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


#include <gtest/gtest.h>

#include <sstream>

#include "heavylat/decoder.h"
#include "heavylat/records.h"

using namespace heavylat;

namespace {

std::string dump(const RecordHeader &h, const std::vector<ShotResult> &s) {
    std::ostringstream out;
    write_records(out, h, s);
    return out.str();
}

}  // namespace

TEST(Records, RoundTrip) {
    for (Family f : {Family::HeavyHexagon, Family::HeavySquare}) {
        Experiment exp(build_code(f, 3), 3);
        NoiseParams np{5e-3, IdleModel::Full};
        auto shots = simulate_records(exp, np, 21, 300);
        auto h = make_header(exp, np, 21, shots.size());
        std::istringstream in(dump(h, shots));
        RecordFile back = read_records(in);
        EXPECT_EQ(back.header.family, f);
        EXPECT_EQ(back.header.distance, 3);
        EXPECT_EQ(back.header.rounds, 3);
        EXPECT_EQ(back.header.p, 5e-3);
        EXPECT_EQ(back.header.idle, IdleModel::Full);
        EXPECT_EQ(back.header.seed, 21u);
        ASSERT_EQ(back.shots.size(), shots.size());
        int nontrivial = 0;
        for (size_t i = 0; i < shots.size(); ++i) {
            EXPECT_EQ(back.shots[i].record.meas, shots[i].record.meas);
            EXPECT_EQ(back.shots[i].record.final_x, shots[i].record.final_x);
            EXPECT_EQ(back.shots[i].record.final_z, shots[i].record.final_z);
            EXPECT_EQ(back.shots[i].residual, shots[i].residual);
            nontrivial += !shots[i].residual.is_identity();
        }
        EXPECT_GT(nontrivial, 0);
    }
}

TEST(Records, SizeMatchesLayout) {
    Experiment exp(build_code(Family::HeavyHexagon, 3), 3);
    NoiseParams np{1e-3, IdleModel::Full};
    auto shots = simulate_records(exp, np, 1, 2);
    auto h = make_header(exp, np, 1, 2);
    size_t meas = (3 * exp.per_round() + 7) / 8;
    size_t per_shot = meas + 2 * 2 + 2 * ((exp.code().n_qubits() + 7) / 8);
    EXPECT_EQ(dump(h, shots).size(), 8 + 4 * 6 + 8 + 4 + 8 + 8 + 2 * per_shot);
}

TEST(Records, RejectsBadInput) {
    Experiment exp(build_code(Family::HeavySquare, 3), 3);
    NoiseParams np{1e-3, IdleModel::Full};
    auto shots = simulate_records(exp, np, 1, 4);
    auto h = make_header(exp, np, 1, 4);
    std::string good = dump(h, shots);

    std::string bad = good;
    bad[0] = 'X';
    std::istringstream a(bad);
    EXPECT_THROW(read_records(a), std::runtime_error);

    bad = good;
    bad[8] = 2;
    std::istringstream b(bad);
    EXPECT_THROW(read_records(b), std::runtime_error);

    std::istringstream c(good.substr(0, good.size() - 1));
    EXPECT_THROW(read_records(c), std::runtime_error);

    h.shots = 5;
    EXPECT_THROW(dump(h, shots), std::invalid_argument);
}

TEST(Records, DeterministicAndDecodable) {
    Experiment exp(build_code(Family::HeavyHexagon, 3), 3);
    NoiseParams np{4e-3, IdleModel::Full};
    auto a = simulate_records(exp, np, 8, 200);
    auto b = simulate_records(exp, np, 8, 200);
    auto c = simulate_records(exp, np, 9, 200);
    bool differs = false;
    for (size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].record.meas, b[i].record.meas);
        differs |= a[i].record.meas != c[i].record.meas;
    }
    EXPECT_TRUE(differs);
    auto h = make_header(exp, np, 8, a.size());
    std::istringstream in(dump(h, a));
    auto back = read_records(in);
    ShotDecoder dec(exp, np);
    for (size_t i = 0; i < a.size(); ++i) {
        auto x = dec.decode(exp.shot_data(a[i]));
        auto y = dec.decode(exp.shot_data(back.shots[i]));
        EXPECT_EQ(x.failure, y.failure);
        EXPECT_EQ(x.cost, y.cost);
        EXPECT_EQ(x.m_x + x.m_z, y.m_x + y.m_z);
    }
}
