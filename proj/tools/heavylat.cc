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


#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "heavylat/collision.h"
#include "heavylat/decoder.h"
#include "heavylat/experiment.h"
#include "heavylat/records.h"

using namespace heavylat;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string &path, const std::string &text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string json_path_for(const std::string &csv) {
    auto dot = csv.find_last_of('.');
    auto slash = csv.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return csv + ".json";
    return csv.substr(0, dot) + ".json";
}

bool parse_on_off(const std::string &s) {
    if (s == "on" || s == "true" || s == "1") return true;
    if (s == "off" || s == "false" || s == "0") return false;
    throw std::invalid_argument("expected on or off, got '" + s + "'");
}

struct CodeArgs {
    std::string family = "hex";
    int distance = 3;
    std::string layout;

    void add(CLI::App *app) {
        app->add_option("--family", family, "hex or square");
        app->add_option("--distance,-d", distance, "odd code distance >= 3");
        app->add_option("--layout", layout, "layout JSON instead of --family/--distance");
    }
    CodeLayout code() const {
        if (!layout.empty()) return layout_from_json(read_file(layout));
        return build_code(parse_family(family), distance);
    }
};

struct NoiseArgs {
    double p = 1e-3;
    std::string idle = "full";

    void add(CLI::App *app) {
        app->add_option("--p", p, "physical error rate");
        app->add_option("--idle", idle, "full or per-round-data");
    }
    NoiseParams params() const {
        NoiseParams np{p, parse_idle_model(idle)};
        np.check();
        return np;
    }
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heavy hexagon and heavy square codes: layouts, circuits, decoding and sweeps"};
    app.require_subcommand(1);

    std::string out;

    auto *build = app.add_subcommand("build", "Write a code layout as JSON");
    CodeArgs build_code_args;
    build_code_args.add(build);
    build->add_option("--out,-o", out, "output path, - for stdout")->required();
    build->callback([&] { write_file(out, layout_to_json(build_code_args.code())); });

    auto *circ = app.add_subcommand("export-circuit", "Write one syndrome round as text");
    CodeArgs circ_args;
    circ_args.add(circ);
    circ->add_option("--out,-o", out, "output path")->required();
    circ->callback([&] { write_file(out, build_round(circ_args.code()).to_text()); });

    auto *graph = app.add_subcommand("export-graph", "Write a decoding graph as DOT and a JSON edge list");
    CodeArgs graph_args;
    NoiseArgs graph_noise;
    std::string graph_type = "Z";
    int graph_rounds = 0;
    graph_args.add(graph);
    graph_noise.add(graph);
    graph->add_option("--type", graph_type, "stabilizer type of the detectors, X or Z")
        ->check(CLI::IsMember({"X", "Z"}));
    graph->add_option("--rounds", graph_rounds, "syndrome rounds, default d");
    graph->add_option("--out,-o", out, "output prefix; writes <prefix>.dot and <prefix>.json")->required();
    graph->callback([&] {
        CodeLayout code = graph_args.code();
        Experiment exp(code, graph_rounds > 0 ? graph_rounds : code.distance);
        DecodingGraph g = build_graph(exp, graph_kind_for(code.family, graph_type[0]), graph_noise.params());
        write_file(out + ".dot", g.to_dot());
        write_file(out + ".json", g.to_json());
    });

    auto *sim = app.add_subcommand("simulate", "Sample shots and dump them as binary records");
    CodeArgs sim_args;
    NoiseArgs sim_noise;
    uint64_t sim_seed = 0, sim_shots = 1000;
    sim_args.add(sim);
    sim_noise.add(sim);
    sim->add_option("--seed", sim_seed);
    sim->add_option("--shots", sim_shots);
    sim->add_option("--out,-o", out, "record file")->required();
    sim->callback([&] {
        CodeLayout code = sim_args.code();
        Experiment exp(code, code.distance);
        NoiseParams np = sim_noise.params();
        auto shots = simulate_records(exp, np, sim_seed, sim_shots);
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out);
        write_records(f, make_header(exp, np, sim_seed, shots.size()), shots);
    });

    auto *dec = app.add_subcommand("decode", "Decode binary shot records");
    std::string dec_layout, dec_records, dec_flags = "on";
    double dec_p = -1, dec_alpha = 1.0;
    dec->add_option("--layout", dec_layout)->required();
    dec->add_option("--records", dec_records)->required();
    dec->add_option("--p", dec_p, "weights at this p instead of the recorded one");
    dec->add_option("--flags", dec_flags, "on or off");
    dec->add_option("--alpha", dec_alpha);
    dec->add_option("--out,-o", out, "CSV: shot,failure,m,cost")->required();
    dec->callback([&] {
        CodeLayout code = layout_from_json(read_file(dec_layout));
        std::ifstream f(dec_records, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + dec_records);
        RecordFile rf = read_records(f);
        const RecordHeader &h = rf.header;
        if (h.family != code.family || h.distance != code.distance || h.n_qubits != code.n_qubits()) {
            throw std::runtime_error("records were not produced for this layout");
        }
        Experiment exp(code, h.rounds);
        if (exp.per_round() != h.per_round) throw std::runtime_error("records do not match the round circuit");
        NoiseParams np{dec_p >= 0 ? dec_p : h.p, h.idle};
        np.check();
        ShotDecoder decoder(exp, np, {parse_on_off(dec_flags), dec_alpha});
        std::string csv = "shot,failure,m,cost\n";
        char buf[128];
        for (size_t i = 0; i < rf.shots.size(); ++i) {
            ShotOutcome o = decoder.decode(exp.shot_data(rf.shots[i]));
            std::snprintf(buf, sizeof buf, "%zu,%s,%d,%.17g\n", i, failure_name(o.failure).c_str(), o.m_x + o.m_z,
                          o.cost);
            csv += buf;
        }
        write_file(out, csv);
    });

    auto *sweep = app.add_subcommand("sweep", "Logical failure rates over distances and p");
    Campaign camp;
    std::string sw_family = "square", sw_distances = "3,5,7", sw_p = "1e-3", sw_flags = "on", sw_idle = "full",
                sw_json;
    sweep->add_option("--family", sw_family);
    sweep->add_option("--distances", sw_distances, "comma list");
    sweep->add_option("--p", sw_p, "a:b:N, a:b:logN or a comma list");
    sweep->add_option("--shots", camp.shots);
    sweep->add_option("--seed", camp.seed);
    sweep->add_option("--flags", sw_flags, "on or off");
    sweep->add_option("--idle", sw_idle, "full or per-round-data");
    sweep->add_option("--alpha", camp.alpha);
    sweep->add_option("--threads", camp.threads);
    sweep->add_option("--time-limit", camp.time_limit, "seconds per point, 0 for none");
    sweep->add_option("--out,-o", out, "CSV path")->required();
    sweep->add_option("--json", sw_json, "metadata path, default next to the CSV");
    sweep->callback([&] {
        camp.family = parse_family(sw_family);
        camp.distances = parse_int_list(sw_distances);
        camp.ps = parse_grid(sw_p);
        camp.flags = parse_on_off(sw_flags);
        camp.idle = parse_idle_model(sw_idle);
        camp.check();
        auto pts = run_campaign(camp);
        write_file(out, to_csv(pts));
        write_file(sw_json.empty() ? json_path_for(out) : sw_json, to_json(camp, pts));
        for (char t : {'X', 'Z'}) {
            ThresholdEstimate th = estimate_threshold(pts, t);
            if (th.found) {
                std::fprintf(stderr, "%c threshold %.3g [%.3g, %.3g]\n", t, th.p_th, th.lo, th.hi);
            } else {
                std::fprintf(stderr, "%c threshold not found\n", t);
            }
        }
    });

    auto *col = app.add_subcommand("collisions", "Mean frequency collisions against fabrication spread");
    std::string col_family = "hex", col_variant = "bulk3", col_sigma = "5:60:12";
    int col_d = 5, col_trials = 2000, col_threads = 1;
    uint64_t col_seed = 0;
    CollisionWindows win;
    double col_window = 17;
    col->add_option("--family", col_family, "hex, square or surface");
    col->add_option("--distance,-d", col_d);
    col->add_option("--variant", col_variant, "bulk3, boundary4 or surface5");
    col->add_option("--sigma", col_sigma, "sigma_f grid in MHz");
    col->add_option("--trials", col_trials);
    col->add_option("--seed", col_seed);
    col->add_option("--threads", col_threads);
    col->add_option("--window", col_window, "rules 1-6 window, MHz");
    col->add_option("--band-lo", win.band_lo);
    col->add_option("--band-hi", win.band_hi);
    col->add_option("--out,-o", out, "CSV path")->required();
    col->callback([&] {
        win.window.fill(col_window);
        win.check();
        FrequencyPattern pat = assign_pattern(parse_lattice(col_family), col_d, parse_variant(col_variant));
        auto pts = sweep_sigma(pat, parse_grid(col_sigma), col_trials, col_seed, win, col_threads);
        write_file(out, collisions_to_csv(pat, pts));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const std::exception &e) {
        std::fprintf(stderr, "heavylat: %s\n", e.what());
        return 1;
    }
    return 0;
}
