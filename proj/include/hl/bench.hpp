#pragma once

#include "hl/instances.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hl {

// one CSV row of a benchmark run
struct BenchRecord {
    std::string instance;  // slug: family-params-s<seed>
    std::string generator;
    std::string params;    // "key=value;key=value", comma-free
    std::uint64_t seed = 0;
    std::size_t n_d = 0;   // number of d-simplices
    std::size_t n_d1 = 0;  // number of (d+1)-simplices
    int tw_conn = -1;      // heuristic width of the connectivity graph
    int tw_hasse = -1;     // heuristic width of the Hasse graph
    std::size_t bags = 0;  // nice-decomposition nodes used by this run (0 for brute)
    std::string algo;      // conn | hasse | brute
    std::int64_t time_ms = 0;
    std::uint64_t entries_peak = 0;
    bool has_cost = false;
    double cost = 0.0;
    std::string status;    // ok | timeout | memory_cap | error
};

std::string bench_csv_header();
std::string to_csv_row(const BenchRecord& r);
BenchRecord parse_csv_row(const std::string& line);

struct BenchCell {
    std::string family;
    std::vector<int> params;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> algos; // conn | hasse | brute
    CycleMode cycle_mode = CycleMode::boundary_only;
    double radius = 0.0; // vr families; <= 0 picks suggest_radius
};

struct BenchConfig {
    double time_limit_s = 0.0;
    std::uint64_t mem_cap_entries = 0;
    std::vector<BenchCell> cells;
};

// config JSON: {"time_limit_s": .., "mem_cap_entries": ..,
//   "cells": [{"family": "grid", "params": [5,5], "seeds": [1,2],
//              "algos": ["conn","hasse"], "cycle_mode": "boundary_only"}, ...]}
BenchConfig parse_bench_config(std::istream& is);

// runs every cell × seed × algo sequentially; failures become rows with a
// non-ok status and the run continues
std::vector<BenchRecord> run_bench(const BenchConfig& cfg, std::ostream& log);

void write_bench_csv(const std::vector<BenchRecord>& rows, std::ostream& os);

} // namespace hl
