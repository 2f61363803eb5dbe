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

#ifndef HEAVYLAT_DECODER_H
#define HEAVYLAT_DECODER_H

#include <string>
#include <vector>

#include "heavylat/graph.h"

namespace heavylat {

struct DecoderOptions {
    /// Use flag outcomes: reweighting plus conditional edges.
    bool use_flags = true;
    /// Exponent on p^m in the reweighting; the protocol uses 1.
    double alpha = 1.0;
};

struct Correction {
    PauliOp pauli;
    /// Matched (event, partner) vertex pairs; partner -1 means the boundary.
    std::vector<std::pair<int, int>> pairs;
    /// Selected edges after cancelling repeats, ascending.
    std::vector<int> edges;
    double cost = 0.0;
    int m = 0;
};

/// Single-source shortest paths with the edge used to reach every vertex.
struct SearchTree {
    std::vector<double> dist;
    std::vector<int> pred_edge;
};

class Decoder {
   public:
    Decoder(const DecodingGraph &g, DecoderOptions opt = {});

    const DecodingGraph &graph() const { return g_; }
    const DecoderOptions &options() const { return opt_; }

    /// Effective weights for a set of usable flags; +inf marks disabled edges.
    std::vector<double> reweight(const std::vector<int> &flags, int *m = nullptr) const;

    Correction decode(const std::vector<int> &events, const std::vector<int> &flags) const;

   private:
    void search(const std::vector<double> &w, const std::vector<int> &sources, SearchTree &t) const;
    std::vector<int> path_edges(const SearchTree &t, int target) const;

    const DecodingGraph &g_;
    DecoderOptions opt_;
    std::vector<double> base_;
    /// Trees from every detector under base weights, plus the boundary tree.
    std::vector<SearchTree> trees_;
    SearchTree boundary_tree_;
};

enum class FailureClass { None, X, Z, Y };

std::string failure_name(FailureClass f);

/// Failure class of correction * residual. Throws std::logic_error when the
/// combination still has a nontrivial syndrome.
FailureClass adjudicate(const PauliOp &correction, const PauliOp &residual, const CodeLayout &code);

struct ShotOutcome {
    FailureClass failure = FailureClass::None;
    int m_x = 0;
    int m_z = 0;
    double cost = 0.0;
};

/// Both decoding graphs of one code at one noise point.
class ShotDecoder {
   public:
    ShotDecoder(const Experiment &exp, const NoiseParams &params, DecoderOptions opt = {});
    ShotDecoder(const ShotDecoder &) = delete;
    ShotDecoder &operator=(const ShotDecoder &) = delete;
    ShotOutcome decode(const ShotData &shot) const;
    const DecodingGraph &graph(char type) const { return type == 'X' ? gx_ : gz_; }
    const Decoder &decoder(char type) const { return type == 'X' ? dx_ : dz_; }

   private:
    const Experiment &exp_;
    DecodingGraph gx_, gz_;
    Decoder dx_, dz_;
};

}  // namespace heavylat

#endif
