#include "doctest.h"

#include "hl/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace hl;

TEST_CASE("csv header and row format are stable") {
    CHECK(bench_csv_header() ==
          "instance,generator,params,seed,n_d,n_d1,tw_conn,tw_hasse,bags,algo,"
          "time_ms,entries_peak,cost,status");

    BenchRecord r;
    r.instance = "grid-3-4-s7";
    r.generator = "grid";
    r.params = "cols=4;rows=3";
    r.seed = 7;
    r.n_d = 23;
    r.n_d1 = 12;
    r.tw_conn = 3;
    r.tw_hasse = 4;
    r.bags = 41;
    r.algo = "conn";
    r.time_ms = 12;
    r.entries_peak = 99;
    r.has_cost = true;
    r.cost = 0.1; // printed with %.17g so parsing recovers the exact bits
    r.status = "ok";

    const std::string line = to_csv_row(r);
    CHECK(line == "grid-3-4-s7,grid,cols=4;rows=3,7,23,12,3,4,41,conn,12,99,"
                  "0.10000000000000001,ok");

    const BenchRecord p = parse_csv_row(line);
    CHECK(p.instance == r.instance);
    CHECK(p.generator == r.generator);
    CHECK(p.params == r.params);
    CHECK(p.seed == r.seed);
    CHECK(p.n_d == r.n_d);
    CHECK(p.n_d1 == r.n_d1);
    CHECK(p.tw_conn == r.tw_conn);
    CHECK(p.tw_hasse == r.tw_hasse);
    CHECK(p.bags == r.bags);
    CHECK(p.algo == r.algo);
    CHECK(p.time_ms == r.time_ms);
    CHECK(p.entries_peak == r.entries_peak);
    CHECK(p.has_cost);
    CHECK(p.cost == r.cost);
    CHECK(p.status == r.status);

    // a run without a result leaves the cost field empty
    r.has_cost = false;
    const BenchRecord q = parse_csv_row(to_csv_row(r));
    CHECK_FALSE(q.has_cost);

    CHECK_THROWS_AS(parse_csv_row("a,b,c"), std::invalid_argument);
}

TEST_CASE("bench config parsing fills defaults") {
    std::stringstream in(R"({
        "time_limit_s": 2.5,
        "cells": [
            {"family": "grid", "params": [3, 3], "seeds": [1, 2]},
            {"family": "vr_sector", "params": [6, 3], "seeds": [5],
             "algos": ["hasse", "brute"], "cycle_mode": "homology_rep",
             "radius": 0.9}
        ]
    })");
    const BenchConfig cfg = parse_bench_config(in);
    CHECK(cfg.time_limit_s == 2.5);
    CHECK(cfg.mem_cap_entries == 0);
    REQUIRE(cfg.cells.size() == 2);

    CHECK(cfg.cells[0].family == "grid");
    CHECK(cfg.cells[0].params == std::vector<int>{3, 3});
    CHECK(cfg.cells[0].seeds == std::vector<std::uint64_t>{1, 2});
    CHECK(cfg.cells[0].algos == std::vector<std::string>{"conn", "hasse"});
    CHECK(cfg.cells[0].cycle_mode == CycleMode::boundary_only);
    CHECK(cfg.cells[0].radius == 0.0);

    CHECK(cfg.cells[1].algos == std::vector<std::string>{"hasse", "brute"});
    CHECK(cfg.cells[1].cycle_mode == CycleMode::homology_rep);
    CHECK(cfg.cells[1].radius == 0.9);

    std::stringstream missing(R"({"cells":[{"family":"grid","seeds":[1]}]})");
    CHECK_THROWS(parse_bench_config(missing));
}

TEST_CASE("a small bench run produces consistent rows") {
    BenchConfig cfg;
    BenchCell cell;
    cell.family = "grid";
    cell.params = {3, 3};
    cell.seeds = {4, 5};
    cell.algos = {"conn", "hasse", "brute"};
    cfg.cells.push_back(cell);

    std::ostringstream log;
    const std::vector<BenchRecord> rows = run_bench(cfg, log);
    REQUIRE(rows.size() == 6);

    for (std::size_t i = 0; i < rows.size(); i += 3) {
        const BenchRecord& conn = rows[i];
        const BenchRecord& hasse = rows[i + 1];
        const BenchRecord& brute = rows[i + 2];
        CHECK(conn.algo == "conn");
        CHECK(hasse.algo == "hasse");
        CHECK(brute.algo == "brute");
        for (const BenchRecord* r : {&conn, &hasse, &brute}) {
            CHECK(r->status == "ok");
            CHECK(r->has_cost);
            CHECK(r->generator == "grid");
            CHECK(r->params == "cols=3;rows=3");
            CHECK(r->n_d == 16);
            CHECK(r->n_d1 == 8);
            CHECK(r->tw_conn >= 1);
            CHECK(r->tw_hasse >= 1);
            CHECK(r->params.find(',') == std::string::npos);
            CHECK(r->instance == "grid-3-3-s" + std::to_string(r->seed));
        }
        // all three agree on the optimum; unit weights make this exact
        CHECK(conn.cost == brute.cost);
        CHECK(hasse.cost == brute.cost);
        CHECK(conn.bags > 0);
        CHECK(hasse.bags > 0);
        CHECK(brute.bags == 0);
    }
    CHECK(rows[0].seed == 4);
    CHECK(rows[3].seed == 5);

    // the log mirrors every row
    const std::string log_text = log.str();
    CHECK(std::count(log_text.begin(), log_text.end(), '\n') >= 6);

    std::ostringstream csv;
    write_bench_csv(rows, csv);
    std::istringstream parse_back(csv.str());
    std::string line;
    std::getline(parse_back, line);
    CHECK(line == bench_csv_header());
    std::size_t parsed = 0;
    while (std::getline(parse_back, line)) {
        const BenchRecord r = parse_csv_row(line);
        CHECK(r.generator == "grid");
        ++parsed;
    }
    CHECK(parsed == rows.size());
}

TEST_CASE("bench runs survive a failing cell") {
    BenchConfig cfg;
    BenchCell bad;
    bad.family = "no_such_family";
    bad.params = {1};
    bad.seeds = {1};
    cfg.cells.push_back(bad);

    BenchCell good;
    good.family = "kdk";
    good.params = {1, 3};
    good.seeds = {2};
    good.algos = {"hasse"};
    cfg.cells.push_back(good);

    std::ostringstream log;
    const std::vector<BenchRecord> rows = run_bench(cfg, log);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].status == "error");
    CHECK(rows[0].algo == "-");
    CHECK(rows[1].status == "ok");
    CHECK(rows[1].algo == "hasse");
    CHECK(log.str().find("generate failed") != std::string::npos);
}
