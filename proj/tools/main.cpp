#include "hl/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"minimum-cost homologous cycle solvers over Z2"};
    app.require_subcommand(1);

    hl::cli::GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "write an instance (complex + input cycle)");
    g->add_option("family", gen.family,
                  "grid|cylinder|torus|mspace|kdk|vr_unfiltered|vr_filtered|vr_sector")
        ->required();
    g->add_option("params", gen.params, "family parameters (integers)");
    g->add_option("--seed", gen.seed, "PRNG seed");
    g->add_option("--cycle-mode", gen.cycle_mode, "boundary_only|homology_rep");
    g->add_option("--radius", gen.radius, "VR radius (default: connectivity radius x1.1)");
    g->add_option("--out", gen.out, "output path base")->required();

    hl::cli::SolveArgs solve;
    auto* s = app.add_subcommand("solve", "compute a minimum-cost homologous cycle");
    s->add_option("instance", solve.instance, "instance path base")->required();
    s->add_option("--algo", solve.algo, "conn|hasse|brute|both (default hasse)");
    s->add_option("--td-file", solve.td_file, "PACE .td file for the algorithm's graph");
    s->add_option("--td-map", solve.td_map, "sidecar map (default <td-file>.map.json)");
    s->add_option("--time-limit", solve.time_limit_s, "seconds, 0 = unlimited");
    s->add_option("--mem-cap-entries", solve.mem_cap_entries,
                  "max total table entries, 0 = unlimited");
    s->add_option("--out", solve.witness_out, "witness JSON path");

    std::string verify_instance, verify_witness;
    auto* v = app.add_subcommand("verify", "check a witness against an instance");
    v->add_option("instance", verify_instance, "instance path base")->required();
    v->add_option("witness", verify_witness, "witness JSON path")->required();

    hl::cli::BenchArgs bench;
    auto* b = app.add_subcommand("bench", "run a benchmark suite");
    b->add_option("config", bench.config, "JSON config path")->required();
    b->add_option("--out", bench.out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return hl::cli::exit_usage;
    }

    if (g->parsed())
        return hl::cli::cmd_generate(gen, std::cout, std::cerr);
    if (s->parsed())
        return hl::cli::cmd_solve(solve, std::cout, std::cerr);
    if (v->parsed())
        return hl::cli::cmd_verify(verify_instance, verify_witness, std::cout, std::cerr);
    if (b->parsed())
        return hl::cli::cmd_bench(bench, std::cout, std::cerr);
    return hl::cli::exit_usage;
}
