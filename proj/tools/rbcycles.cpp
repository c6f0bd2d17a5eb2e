// Command line front end: exact densities, cycle components, rainbow-free
// colourings with verification, and seeded Monte Carlo threshold scans.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "colouring.hpp"
#include "cycles.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "graph.hpp"

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw rbc::parse_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw rbc::parse_error("cannot open output file: " + path);
    out << text;
}

rbc::Graph load_graph(const std::string& path) {
    std::vector<std::string> warnings;
    rbc::Graph g = rbc::parse_edge_list(read_input(path), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return g;
}

json witness_json(const rbc::DensityWitness& w) {
    return json{{"value", w.value.str()}, {"vertices", w.vertices}};
}

json records_json(const std::vector<rbc::TrialRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) {
        json j{{"ell", r.ell},
               {"n", r.n},
               {"p", r.p},
               {"c", r.c},
               {"seed", r.seed},
               {"obstruction_found", r.obstruction_found},
               {"colourer_outcome", r.colourer_outcome},
               {"densest_small_density",
                r.densest_small_density ? json(r.densest_small_density->str()) : json(nullptr)},
               {"elapsed_ms", r.elapsed_ms}};
        arr.push_back(std::move(j));
    }
    return arr;
}

struct ScanOptions {
    std::vector<int> n_list = {50, 100, 200};
    std::vector<double> c_grid = {0.05, 0.1, 0.2, 0.5, 1, 2, 5, 10};
    int trials = 200;
    std::uint64_t seed = 0;
    int threads = 1;
    bool timings = false;
    std::string format = "csv";
    std::string output;
};

void add_scan_options(CLI::App* cmd, ScanOptions& opt) {
    cmd->add_option("--n", opt.n_list, "vertex counts")->delimiter(',');
    cmd->add_option("--c-grid", opt.c_grid, "multipliers c in p = c*n^(-1/m2)")->delimiter(',');
    cmd->add_option("--trials", opt.trials, "trials per (n, c) pair");
    cmd->add_option("--seed", opt.seed, "master seed")->required();
    cmd->add_option("--threads", opt.threads, "worker threads (output is unaffected)");
    cmd->add_flag("--timings", opt.timings, "include wall-clock per trial (breaks byte-for-byte "
                                            "reproducibility of the output)");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", opt.output, "output path (default stdout)");
}

rbc::ScanParams scan_params(const ScanOptions& opt) {
    rbc::ScanParams p;
    p.n_list = opt.n_list;
    p.c_list = opt.c_grid;
    p.trials = opt.trials;
    p.seed = opt.seed;
    p.threads = opt.threads;
    p.keep_timings = opt.timings;
    return p;
}

int emit_scan(const std::vector<rbc::TrialRecord>& records, const ScanOptions& opt,
              bool fail_on_dead_end) {
    if (opt.format == "json")
        write_output(opt.output, records_json(records).dump(2));
    else
        write_output(opt.output, rbc::emit_csv(records));
    if (fail_on_dead_end)
        for (const auto& r : records)
            if (r.colourer_outcome == "dead_end") return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rainbow-cycle-free colourings, exact graph densities, and "
                 "random-graph threshold scans"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string output;
    std::string format = "json";
    int ell = 5;
    std::uint64_t seed = 0;

    auto* density_cmd = app.add_subcommand("density", "maximum density m(G) with witness");
    density_cmd->add_option("--input", input, "edge list file or -");
    density_cmd->add_option("--output", output, "output path");

    auto* m2_cmd = app.add_subcommand("m2", "maximum 2-density m_2(G) with witness");
    m2_cmd->add_option("--input", input, "edge list file or -");
    m2_cmd->add_option("--output", output, "output path");

    auto* cycles_cmd = app.add_subcommand("cycles", "enumerate l-cycles");
    cycles_cmd->add_option("--input", input, "edge list file or -");
    cycles_cmd->add_option("--ell", ell, "cycle length")->required();
    cycles_cmd->add_option("--output", output, "output path");

    auto* comp_cmd = app.add_subcommand("components", "C_l-components with construction sequences");
    comp_cmd->add_option("--input", input, "edge list file or -");
    comp_cmd->add_option("--ell", ell, "cycle length")->required();
    comp_cmd->add_option("--output", output, "output path");

    auto* colour_cmd = app.add_subcommand("colour", "proper colouring with no rainbow l-cycle");
    colour_cmd->add_option("--input", input, "edge list file or -");
    colour_cmd->add_option("--ell", ell, "cycle length (4 uses the C4-chain colourer)")
        ->required();
    colour_cmd->add_option("--output", output, "output path");

    auto* verify_cmd = app.add_subcommand("verify", "recheck a colouring certificate");
    verify_cmd->add_option("--input", input, "certificate JSON file or -");
    verify_cmd->add_option("--output", output, "output path");

    auto* force_cmd = app.add_subcommand("force-check",
                                         "does every proper colouring give a rainbow l-cycle?");
    force_cmd->add_option("--input", input, "edge list file or -");
    force_cmd->add_option("--ell", ell, "cycle length")->required();
    force_cmd->add_option("--output", output, "output path");

    auto* gnp_cmd = app.add_subcommand("gnp", "sample G(n,p), emit edge list");
    int gnp_n = 0;
    double gnp_p = 0.0;
    gnp_cmd->add_option("--n", gnp_n, "vertices")->required();
    gnp_cmd->add_option("--p", gnp_p, "edge probability")->required();
    gnp_cmd->add_option("--seed", seed, "seed")->required();
    gnp_cmd->add_option("--output", output, "output path");

    ScanOptions k24_opt, obs_opt, col_opt;
    auto* scan_k24 = app.add_subcommand("scan-k24", "K_{2,4} appearance at p = c*n^(-3/4)");
    add_scan_options(scan_k24, k24_opt);
    auto* scan_obs = app.add_subcommand("scan-obstruction",
                                        "small dense subgraphs at p = c*n^(-1/m2(C_l))");
    int obs_ell = 5;
    scan_obs->add_option("--ell", obs_ell, "cycle length")->required();
    add_scan_options(scan_obs, obs_opt);
    auto* scan_col = app.add_subcommand("scan-colour", "colourability at p = c*n^(-1/m2(C_l))");
    int col_ell = 5;
    scan_col->add_option("--ell", col_ell, "cycle length")->required();
    add_scan_options(scan_col, col_opt);

    for (auto* c : {density_cmd, m2_cmd, force_cmd})
        c->add_option("--format", format, "json (default) or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    for (auto* c : {cycles_cmd, comp_cmd, colour_cmd, verify_cmd})
        c->add_option("--format", format, "json output only")->check(CLI::IsMember({"json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto emit_witness = [&](const rbc::DensityWitness& w) {
            if (format == "csv") {
                std::string row = "value,vertices\n" + w.value.str() + ",";
                for (size_t i = 0; i < w.vertices.size(); ++i)
                    row += (i ? " " : "") + std::to_string(w.vertices[i]);
                write_output(output, row + "\n");
            } else {
                write_output(output, witness_json(w).dump());
            }
        };
        if (density_cmd->parsed()) {
            emit_witness(rbc::max_density(load_graph(input)));
        } else if (m2_cmd->parsed()) {
            emit_witness(rbc::max_2_density(load_graph(input)));
        } else if (cycles_cmd->parsed()) {
            auto cs = rbc::enumerate_cycles(load_graph(input), ell);
            json j{{"count", cs.size()}, {"cycles", json::parse(rbc::cycles_to_json(cs))}};
            write_output(output, j.dump());
        } else if (comp_cmd->parsed()) {
            json arr = json::array();
            for (const auto& comp : rbc::cl_components(load_graph(input), ell))
                arr.push_back(json::parse(rbc::component_to_json(comp)));
            write_output(output, arr.dump());
        } else if (colour_cmd->parsed()) {
            rbc::Graph g = load_graph(input);
            rbc::EdgeColouring col =
                ell == 4 ? rbc::colour_c4_rainbow_free(g) : rbc::colour_rainbow_free(g, ell);
            rbc::Certificate cert = rbc::verify_certificate(g, ell, col);
            write_output(output, rbc::certificate_to_json(cert));
            if (!cert.proper || cert.rainbow_cycle) {
                std::cerr << "error: produced colouring failed verification\n";
                return 1;
            }
        } else if (verify_cmd->parsed()) {
            rbc::Certificate in = rbc::certificate_from_json(read_input(input));
            rbc::Certificate cert =
                rbc::verify_certificate(in.graph, in.ell, in.colouring);
            write_output(output, rbc::certificate_to_json(cert));
            if (!cert.proper || cert.rainbow_cycle) return 1;
        } else if (force_cmd->parsed()) {
            bool forces = rbc::forces_rainbow_bruteforce(load_graph(input), ell);
            if (format == "csv")
                write_output(output, std::string("forces_rainbow\n") +
                                         (forces ? "true" : "false") + "\n");
            else
                write_output(output, json{{"forces_rainbow", forces}}.dump());
        } else if (gnp_cmd->parsed()) {
            write_output(output, rbc::serialize_edge_list(rbc::sample_gnp(gnp_n, gnp_p, seed)));
        } else if (scan_k24->parsed()) {
            return emit_scan(rbc::k24_presence_scan(scan_params(k24_opt)), k24_opt, false);
        } else if (scan_obs->parsed()) {
            return emit_scan(rbc::obstruction_scan(obs_ell, scan_params(obs_opt)), obs_opt, false);
        } else if (scan_col->parsed()) {
            return emit_scan(rbc::colourability_scan(col_ell, scan_params(col_opt)), col_opt,
                             true);
        }
    } catch (const rbc::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.detail != "{}") std::cerr << e.detail << "\n";
        return 1;
    } catch (const rbc::dead_end_error& e) {
        std::cerr << "dead end: " << e.what() << "\n" << e.detail << "\n";
        return 1;
    } catch (const rbc::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
