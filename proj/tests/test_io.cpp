#include "doctest.h"

#include "hl/instances.hpp"
#include "hl/io.hpp"
#include "hl/oracle.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace hl;
namespace fs = std::filesystem;

namespace {

SimplicialComplex sample_complex() {
    SimplicialComplex K = closure({Simplex{0, 1, 2}, Simplex{1, 2, 3}});
    K.insert(Simplex{1, 2}, 0.1); // non-dyadic weight must survive the round trip
    K.insert(Simplex{0, 1, 2}, 2.5);
    return K;
}

} // namespace

TEST_CASE("complex files round trip bytes, weights and metadata") {
    const SimplicialComplex K = sample_complex();
    nlohmann::json meta{{"generator", "handmade"}, {"seed", 42}};

    std::stringstream ss;
    write_complex_json(K, meta, ss);

    // the file itself is well-formed and canonically ordered
    nlohmann::json j = nlohmann::json::parse(ss.str());
    CHECK(j.at("format_version").get<int>() == 1);
    CHECK(j.at("d").get<int>() == 2);
    REQUIRE(j.at("simplices").size() == K.simplices().size());
    Simplex prev;
    bool first = true;
    for (const auto& e : j.at("simplices")) {
        const Simplex s(e.at("v").get<std::vector<int>>());
        if (!first)
            CHECK(prev < s);
        prev = s;
        first = false;
    }

    ss.seekg(0);
    nlohmann::json meta_back;
    const SimplicialComplex L = read_complex_json(ss, &meta_back);
    CHECK(L.simplices() == K.simplices()); // exact weights included
    CHECK(meta_back == meta);
}

TEST_CASE("complex reader rejects broken files and tolerates extras") {
    // an edge without its endpoints
    std::stringstream open_file(R"({"simplices":[{"v":[0,1],"w":1.0}]})");
    CHECK_THROWS_AS(read_complex_json(open_file), std::invalid_argument);

    // declared dimension disagrees with the simplices listed
    std::stringstream wrong_d(
        R"({"d":2,"simplices":[{"v":[0],"w":0.0},{"v":[1],"w":0.0},{"v":[0,1],"w":1.0}]})");
    CHECK_THROWS_AS(read_complex_json(wrong_d), std::invalid_argument);

    // unknown keys pass through unharmed
    std::stringstream extra(
        R"({"zzz":42,"simplices":[{"v":[0],"w":0.5,"note":"x"},{"v":[1],"w":1.5}]})");
    const SimplicialComplex K = read_complex_json(extra);
    CHECK(K.count_of_dim(0) == 2);
    CHECK(K.weight(Simplex{0}) == 0.5);
}

TEST_CASE("cycle files round trip and validate dimensions") {
    const Chain c(1, {Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}});
    std::stringstream ss;
    write_cycle_json(c, ss);
    ss.seekg(0);
    CHECK(read_cycle_json(ss) == c);

    // the empty chain keeps its declared dimension
    std::stringstream se;
    write_cycle_json(Chain(2), se);
    se.seekg(0);
    const Chain e = read_cycle_json(se);
    CHECK(e.empty());
    CHECK(e.dim() == 2);

    std::stringstream bad(R"({"dim":-1,"simplices":[[0]]})");
    CHECK_THROWS_AS(read_cycle_json(bad), std::invalid_argument);

    std::stringstream mixed(R"({"dim":1,"simplices":[[0,1],[2]]})");
    CHECK_THROWS_AS(read_cycle_json(mixed), std::invalid_argument);
}

TEST_CASE("witness files carry cost and both chains") {
    Witness w;
    w.dim = 1;
    w.cost = 0.1 + 0.2; // exercises exact double round-tripping
    w.cycle = Chain(1, {Simplex{0, 1}});
    w.chain = Chain(2, {Simplex{0, 1, 2}, Simplex{1, 2, 3}});

    std::stringstream ss;
    write_witness_json(w, ss);
    ss.seekg(0);
    const Witness r = read_witness_json(ss);
    CHECK(r.dim == w.dim);
    CHECK(r.cost == w.cost);
    CHECK(r.cycle == w.cycle);
    CHECK(r.chain == w.chain);
    CHECK(r.chain.dim() == 2);
}

TEST_CASE("instance metadata survives the json round trip") {
    InstanceMeta m;
    m.generator = "torus";
    m.params = {{"m", 4.0}, {"n", 3.0}};
    m.seed = 123456789012345ull;
    m.cycle_mode = "homology_rep";

    const InstanceMeta r = meta_from_json(meta_to_json(m));
    CHECK(r.generator == m.generator);
    CHECK(r.params == m.params);
    CHECK(r.seed == m.seed);
    CHECK(r.cycle_mode == m.cycle_mode);
    CHECK(r.prng == "mt19937_64");

    const InstanceMeta empty = meta_from_json(nlohmann::json());
    CHECK(empty.generator.empty());
}

TEST_CASE("instances save and load as a file pair") {
    const fs::path dir = fs::temp_directory_path() / "hl-io-tests";
    fs::create_directories(dir);

    const Instance inst = make_instance("kdk", {2, 3}, 9, CycleMode::boundary_only);
    const fs::path base = dir / "kdk-2-3-s9";
    save_instance(inst, base);
    CHECK(fs::exists(dir / "kdk-2-3-s9.complex.json"));
    CHECK(fs::exists(dir / "kdk-2-3-s9.cycle.json"));

    const Instance back = load_instance(base);
    CHECK(back.complex.simplices() == inst.complex.simplices());
    CHECK(back.cycle == inst.cycle);
    CHECK(back.d == 2);
    CHECK(back.meta.generator == "kdk");
    CHECK(back.meta.params == inst.meta.params);
    CHECK(back.meta.seed == 9);
    CHECK(back.meta.cycle_mode == "boundary_only");

    // a cycle file holding a non-cycle is refused on load
    {
        std::ofstream os(dir / "kdk-2-3-s9.cycle.json");
        os << R"({"dim":2,"simplices":[[3,4,5]]})" << '\n';
    }
    CHECK_THROWS_AS(load_instance(base), std::invalid_argument);

    CHECK_THROWS_AS(load_instance(dir / "does-not-exist"), std::runtime_error);

    fs::remove_all(dir);
}
