#include "hl/cli.hpp"

#include "hl/bench.hpp"
#include "hl/dp.hpp"
#include "hl/graphs.hpp"
#include "hl/io.hpp"
#include "hl/oracle.hpp"
#include "hl/treewidth.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>

namespace hl::cli {

namespace {

constexpr double agreement_rel_tol = 1e-9;

bool costs_agree(double a, double b) {
    return std::abs(a - b) <= agreement_rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

const char* status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::ok: return "ok";
    case SolveStatus::timeout: return "timeout";
    case SolveStatus::memory_cap: return "memory_cap";
    case SolveStatus::infeasible: return "infeasible";
    }
    return "?";
}

struct AlgoRun {
    std::string name;
    SolveResult result;
};

} // namespace

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
    if (args.out.empty()) {
        err << "generate: --out is required\n";
        return exit_usage;
    }
    Instance inst;
    try {
        inst = make_instance(args.family, args.params, args.seed,
                             cycle_mode_from_string(args.cycle_mode), args.radius);
    } catch (const std::exception& e) {
        err << "generate: " << e.what() << '\n';
        return exit_usage;
    }
    try {
        save_instance(inst, args.out);
    } catch (const std::exception& e) {
        err << "generate: " << e.what() << '\n';
        return exit_usage;
    }
    out << "instance " << args.out << ": d=" << inst.d;
    for (int dd = 0; dd <= inst.complex.dim(); ++dd)
        out << " |K_" << dd << "|=" << inst.complex.count_of_dim(dd);
    out << " |V|=" << inst.cycle.size() << '\n';
    return exit_ok;
}

namespace {

// run one algorithm; builds (or loads) the decomposition it needs
std::optional<AlgoRun> run_algo(const Instance& inst, const std::string& algo,
                                const SolveArgs& args, std::ostream& out,
                                std::ostream& err, int& rc) {
    AlgoRun run;
    run.name = algo;

    if (algo == "brute") {
        const auto t0 = std::chrono::steady_clock::now();
        BruteForceResult b = brute_force_min(inst.complex, inst.cycle, inst.d);
        run.result.status = SolveStatus::ok;
        run.result.cost = b.cost;
        run.result.cycle = b.cycle;
        run.result.chain = b.chain;
        run.result.stats.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
        out << "brute: status=ok cost=" << run.result.cost << " |U|=" << b.cycle.size()
            << " time_ms=" << run.result.stats.wall_ms << '\n';
        return run;
    }

    const bool is_conn = algo == "conn";
    const DerivedGraph g = is_conn ? connectivity_graph(inst.complex, inst.d + 1)
                                   : hasse_level(inst.complex, inst.d + 1);
    TreeDecomposition td;
    if (!args.td_file.empty()) {
        std::ifstream td_in(args.td_file);
        std::string map_path = args.td_map.empty() ? args.td_file + ".map.json" : args.td_map;
        std::ifstream map_in(map_path);
        if (!td_in || !map_in) {
            err << "solve: cannot read decomposition files\n";
            rc = exit_usage;
            return std::nullopt;
        }
        td = read_pace_td(td_in, map_in);
        TdValidation tv = validate_td(g, td);
        if (!tv.ok) {
            err << "solve: supplied decomposition is invalid: " << tv.violations.front()
                << '\n';
            rc = exit_verification;
            return std::nullopt;
        }
    } else {
        td = best_td(g);
    }

    NiceTreeDecomposition ntd = make_nice(td);
    SolveOptions opts;
    opts.time_limit_s = args.time_limit_s;
    opts.mem_cap_entries = args.mem_cap_entries;
    run.result = is_conn ? solve_conn(inst.complex, inst.cycle, inst.d, ntd, opts)
                         : solve_hasse(inst.complex, inst.cycle, inst.d, ntd, opts);

    out << algo << ": status=" << status_name(run.result.status);
    if (run.result.status == SolveStatus::ok)
        out << " cost=" << run.result.cost << " |U|=" << run.result.cycle.size();
    out << " width=" << run.result.stats.width << " bags=" << run.result.stats.nodes
        << " entries_peak=" << run.result.stats.peak_node_entries
        << " time_ms=" << run.result.stats.wall_ms << '\n';
    return run;
}

} // namespace

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
    Instance inst;
    try {
        inst = load_instance(args.instance);
    } catch (const std::exception& e) {
        err << "solve: " << e.what() << '\n';
        return exit_usage;
    }

    std::vector<std::string> algos;
    if (args.algo == "both")
        algos = {"conn", "hasse"};
    else if (args.algo == "conn" || args.algo == "hasse" || args.algo == "brute")
        algos = {args.algo};
    else {
        err << "solve: unknown algorithm: " << args.algo << '\n';
        return exit_usage;
    }

    std::vector<AlgoRun> runs;
    for (const std::string& a : algos) {
        int rc = exit_ok;
        std::optional<AlgoRun> run;
        try {
            run = run_algo(inst, a, args, out, err, rc);
        } catch (const std::length_error& e) {
            err << "solve: " << e.what() << '\n';
            return exit_resource;
        } catch (const std::exception& e) {
            err << "solve: " << e.what() << '\n';
            return exit_verification;
        }
        if (!run)
            return rc;
        if (run->result.status == SolveStatus::timeout ||
            run->result.status == SolveStatus::memory_cap) {
            err << "solve: " << a << " hit a resource limit ("
                << status_name(run->result.status) << ")\n";
            return exit_resource;
        }
        if (run->result.status != SolveStatus::ok) {
            err << "solve: " << a << " failed: " << status_name(run->result.status) << '\n';
            return exit_verification;
        }
        runs.push_back(std::move(*run));
    }

    if (runs.size() == 2 && !costs_agree(runs[0].result.cost, runs[1].result.cost)) {
        err << "solve: solver disagreement: " << runs[0].name << "=" << runs[0].result.cost
            << " vs " << runs[1].name << "=" << runs[1].result.cost << '\n';
        return exit_verification;
    }

    if (!args.witness_out.empty()) {
        const SolveResult& res = runs.back().result;
        Witness w;
        w.dim = inst.d;
        w.cost = res.cost;
        w.cycle = res.cycle;
        w.chain = res.chain;
        std::ofstream os(args.witness_out);
        if (!os) {
            err << "solve: cannot write " << args.witness_out << '\n';
            return exit_usage;
        }
        write_witness_json(w, os);
    }
    return exit_ok;
}

int cmd_verify(const std::string& instance, const std::string& witness_path,
               std::ostream& out, std::ostream& err) {
    Instance inst;
    Witness w;
    try {
        inst = load_instance(instance);
        std::ifstream is(witness_path);
        if (!is)
            throw std::runtime_error("cannot read " + witness_path);
        w = read_witness_json(is);
    } catch (const std::exception& e) {
        err << "verify: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (!is_cycle(w.cycle)) {
            err << "verify: FAILED check 'cycle': the witness chain has a boundary\n";
            return exit_verification;
        }
        if (!homologous(inst.complex, w.cycle, inst.cycle, inst.d)) {
            err << "verify: FAILED check 'homologous': witness is not homologous to the "
                   "input cycle\n";
            return exit_verification;
        }
        const double actual = cost(inst.complex, w.cycle);
        if (!costs_agree(actual, w.cost)) {
            err << "verify: FAILED check 'cost': claimed " << w.cost << " actual " << actual
                << '\n';
            return exit_verification;
        }
    } catch (const std::exception& e) {
        // e.g. the witness uses simplices outside the complex
        err << "verify: FAILED check 'support': " << e.what() << '\n';
        return exit_verification;
    }
    out << "verify: ok (cost " << w.cost << ", |U|=" << w.cycle.size() << ")\n";
    return exit_ok;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    BenchConfig cfg;
    try {
        std::ifstream is(args.config);
        if (!is)
            throw std::runtime_error("cannot read " + args.config);
        cfg = parse_bench_config(is);
    } catch (const std::exception& e) {
        err << "bench: " << e.what() << '\n';
        return exit_usage;
    }
    std::vector<BenchRecord> rows = run_bench(cfg, out);
    if (args.out.empty()) {
        write_bench_csv(rows, out);
    } else {
        std::ofstream os(args.out);
        if (!os) {
            err << "bench: cannot write " << args.out << '\n';
            return exit_usage;
        }
        write_bench_csv(rows, os);
    }
    return exit_ok;
}

} // namespace hl::cli
