#include "hl/bench.hpp"

#include "hl/dp.hpp"
#include "hl/graphs.hpp"
#include "hl/oracle.hpp"
#include "hl/treewidth.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hl {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string params_string(const InstanceMeta& meta) {
    std::string out;
    for (const auto& [k, v] : meta.params) {
        if (!out.empty())
            out += ';';
        out += k;
        out += '=';
        if (v == static_cast<double>(static_cast<long long>(v)))
            out += std::to_string(static_cast<long long>(v));
        else
            out += fmt_double(v);
    }
    return out;
}

std::string slug(const InstanceMeta& meta) {
    std::string out = meta.generator;
    for (const auto& [k, v] : meta.params) {
        out += '-';
        if (v == static_cast<double>(static_cast<long long>(v)))
            out += std::to_string(static_cast<long long>(v));
        else
            out += fmt_double(v);
    }
    out += "-s" + std::to_string(meta.seed);
    return out;
}

} // namespace

std::string bench_csv_header() {
    return "instance,generator,params,seed,n_d,n_d1,tw_conn,tw_hasse,bags,algo,"
           "time_ms,entries_peak,cost,status";
}

std::string to_csv_row(const BenchRecord& r) {
    std::ostringstream os;
    os << r.instance << ',' << r.generator << ',' << r.params << ',' << r.seed << ','
       << r.n_d << ',' << r.n_d1 << ',' << r.tw_conn << ',' << r.tw_hasse << ','
       << r.bags << ',' << r.algo << ',' << r.time_ms << ',' << r.entries_peak << ','
       << (r.has_cost ? fmt_double(r.cost) : std::string{}) << ',' << r.status;
    return os.str();
}

BenchRecord parse_csv_row(const std::string& line) {
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            f.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    f.push_back(cur);
    if (f.size() != 14)
        throw std::invalid_argument("csv row has wrong field count");
    BenchRecord r;
    r.instance = f[0];
    r.generator = f[1];
    r.params = f[2];
    r.seed = std::stoull(f[3]);
    r.n_d = std::stoull(f[4]);
    r.n_d1 = std::stoull(f[5]);
    r.tw_conn = std::stoi(f[6]);
    r.tw_hasse = std::stoi(f[7]);
    r.bags = std::stoull(f[8]);
    r.algo = f[9];
    r.time_ms = std::stoll(f[10]);
    r.entries_peak = std::stoull(f[11]);
    r.has_cost = !f[12].empty();
    if (r.has_cost)
        r.cost = std::stod(f[12]);
    r.status = f[13];
    return r;
}

BenchConfig parse_bench_config(std::istream& is) {
    nlohmann::json j = nlohmann::json::parse(is);
    BenchConfig cfg;
    cfg.time_limit_s = j.value("time_limit_s", 0.0);
    cfg.mem_cap_entries = j.value("mem_cap_entries", std::uint64_t{0});
    for (const auto& c : j.at("cells")) {
        BenchCell cell;
        cell.family = c.at("family").get<std::string>();
        cell.params = c.at("params").get<std::vector<int>>();
        cell.seeds = c.at("seeds").get<std::vector<std::uint64_t>>();
        cell.algos = c.value("algos", std::vector<std::string>{"conn", "hasse"});
        cell.cycle_mode = cycle_mode_from_string(c.value("cycle_mode", "boundary_only"));
        cell.radius = c.value("radius", 0.0);
        cfg.cells.push_back(std::move(cell));
    }
    return cfg;
}

std::vector<BenchRecord> run_bench(const BenchConfig& cfg, std::ostream& log) {
    std::vector<BenchRecord> rows;
    for (const auto& cell : cfg.cells) {
        for (std::uint64_t seed : cell.seeds) {
            Instance inst;
            try {
                inst = make_instance(cell.family, cell.params, seed, cell.cycle_mode,
                                     cell.radius);
            } catch (const std::exception& e) {
                log << "generate failed for family " << cell.family << " seed " << seed
                    << ": " << e.what() << '\n';
                BenchRecord r;
                r.generator = cell.family;
                r.seed = seed;
                r.algo = "-";
                r.status = "error";
                r.instance = cell.family + "-s" + std::to_string(seed);
                rows.push_back(std::move(r));
                continue;
            }

            BenchRecord base;
            base.instance = slug(inst.meta);
            base.generator = inst.meta.generator;
            base.params = params_string(inst.meta);
            base.seed = seed;
            base.n_d = inst.complex.count_of_dim(inst.d);
            base.n_d1 = inst.complex.count_of_dim(inst.d + 1);

            const DerivedGraph conn = connectivity_graph(inst.complex, inst.d + 1);
            const DerivedGraph hasse = hasse_level(inst.complex, inst.d + 1);
            const TreeDecomposition conn_td = best_td(conn);
            const TreeDecomposition hasse_td = best_td(hasse);
            base.tw_conn = width(conn_td);
            base.tw_hasse = width(hasse_td);

            for (const std::string& algo : cell.algos) {
                BenchRecord r = base;
                r.algo = algo;
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    if (algo == "brute") {
                        BruteForceResult b = brute_force_min(inst.complex, inst.cycle, inst.d);
                        r.has_cost = true;
                        r.cost = b.cost;
                        r.status = "ok";
                    } else {
                        const bool is_conn = algo == "conn";
                        if (!is_conn && algo != "hasse")
                            throw std::invalid_argument("unknown algo: " + algo);
                        NiceTreeDecomposition ntd = make_nice(is_conn ? conn_td : hasse_td);
                        SolveOptions opts;
                        opts.time_limit_s = cfg.time_limit_s;
                        opts.mem_cap_entries = cfg.mem_cap_entries;
                        SolveResult res = is_conn
                                              ? solve_conn(inst.complex, inst.cycle, inst.d,
                                                           ntd, opts)
                                              : solve_hasse(inst.complex, inst.cycle, inst.d,
                                                            ntd, opts);
                        r.bags = ntd.node_count();
                        r.entries_peak = res.stats.peak_node_entries;
                        switch (res.status) {
                        case SolveStatus::ok:
                            r.status = "ok";
                            r.has_cost = true;
                            r.cost = res.cost;
                            break;
                        case SolveStatus::timeout:
                            r.status = "timeout";
                            break;
                        case SolveStatus::memory_cap:
                            r.status = "memory_cap";
                            break;
                        case SolveStatus::infeasible:
                            r.status = "error";
                            break;
                        }
                    }
                } catch (const std::exception& e) {
                    log << r.instance << " [" << algo << "] failed: " << e.what() << '\n';
                    r.status = "error";
                }
                r.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
                log << to_csv_row(r) << '\n';
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

void write_bench_csv(const std::vector<BenchRecord>& rows, std::ostream& os) {
    os << bench_csv_header() << '\n';
    for (const auto& r : rows)
        os << to_csv_row(r) << '\n';
}

} // namespace hl
