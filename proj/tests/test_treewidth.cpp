#include "doctest.h"

#include "hl/graphs.hpp"
#include "hl/instances.hpp"
#include "hl/treewidth.hpp"

#include "support/builders.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

using namespace hl;
using testsupport::make_annulus;

namespace {

DerivedGraph graph_on(int n, std::vector<std::pair<int, int>> edges) {
    DerivedGraph g;
    for (int i = 0; i < n; ++i)
        g.vertices.push_back(Simplex{i});
    std::sort(edges.begin(), edges.end());
    g.edges = std::move(edges);
    return g;
}

DerivedGraph random_graph(RandomSource& rng, int n, double p_edge) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < p_edge)
                edges.emplace_back(i, j);
    return graph_on(n, std::move(edges));
}

std::size_t count_kind(const NiceTreeDecomposition& ntd, NodeKind k) {
    std::size_t n = 0;
    for (const auto& nd : ntd.nodes)
        if (nd.kind == k)
            ++n;
    return n;
}

bool any_violation_starts_with(const TdValidation& v, const std::string& prefix) {
    for (const auto& s : v.violations)
        if (s.rfind(prefix, 0) == 0)
            return true;
    return false;
}

} // namespace

TEST_CASE("width is the largest bag minus one") {
    TreeDecomposition td;
    CHECK(width(td) == -1);
    td.bags = {{Simplex{0}}, {Simplex{0}, Simplex{1}, Simplex{2}}};
    td.edges = {{0, 1}};
    CHECK(width(td) == 2);
}

TEST_CASE("heuristics solve the easy graph classes exactly") {
    const DerivedGraph path = graph_on(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    const DerivedGraph complete =
        graph_on(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const DerivedGraph edgeless = graph_on(3, {});
    const DerivedGraph cycle5 = graph_on(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});

    for (const Heuristic h : {Heuristic::min_degree, Heuristic::min_fill}) {
        CHECK(width(heuristic_td(path, h)) == 1);
        CHECK(width(heuristic_td(complete, h)) == 3);
        CHECK(width(heuristic_td(edgeless, h)) == 0);
        CHECK(width(heuristic_td(cycle5, h)) == 2);
        for (const auto* g : {&path, &complete, &edgeless, &cycle5})
            CHECK(validate_td(*g, heuristic_td(*g, h)).ok);
    }
    CHECK(width(best_td(cycle5)) == 2);
    CHECK(heuristic_td(graph_on(0, {}), Heuristic::min_degree).node_count() == 0);
}

TEST_CASE("heuristic decompositions of derived graphs validate") {
    for (const SimplicialComplex& K :
         {gen_grid(3, 4), gen_cylinder(4, 3), gen_torus(3, 3), make_annulus(8, 4).complex}) {
        const DerivedGraph conn = connectivity_graph(K, 2);
        const DerivedGraph hasse = hasse_level(K, 2);
        for (const auto* g : {&conn, &hasse}) {
            const TreeDecomposition td = best_td(*g);
            const TdValidation v = validate_td(*g, td);
            INFO((v.ok ? "" : v.violations.front()));
            CHECK(v.ok);
        }
    }
}

TEST_CASE("randomized restarts stay valid, reproducible, and never wider") {
    RandomSource rng(91);
    for (int i = 0; i < 12; ++i) {
        const DerivedGraph g = random_graph(rng, 3 + int(rng.below(18)), 0.3);
        const TreeDecomposition a = best_td_randomized(g, 24, 7);
        const TreeDecomposition b = best_td_randomized(g, 24, 7);
        const TdValidation v = validate_td(g, a);
        INFO((v.ok ? "" : v.violations.front()));
        CHECK(v.ok);
        CHECK(width(a) <= width(best_td(g)));
        CHECK(a.bags == b.bags);
        CHECK(a.edges == b.edges);
    }
    // restarts find the optimum of a cycle even when a poor first pick hurts
    const DerivedGraph cycle6 = graph_on(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    CHECK(width(best_td_randomized(cycle6, 16, 3)) == 2);
    CHECK(best_td_randomized(graph_on(0, {}), 4, 1).node_count() == 0);
}

TEST_CASE("validate_td names each kind of defect") {
    const DerivedGraph g = graph_on(3, {{0, 1}, {1, 2}});

    TreeDecomposition good;
    good.bags = {{Simplex{0}, Simplex{1}}, {Simplex{1}, Simplex{2}}};
    good.edges = {{0, 1}};
    CHECK(validate_td(g, good).ok);

    TreeDecomposition no_vertex = good;
    no_vertex.bags[1] = {Simplex{1}};
    CHECK(any_violation_starts_with(validate_td(g, no_vertex), "vertex_coverage"));

    TreeDecomposition no_edge;
    no_edge.bags = {{Simplex{0}, Simplex{1}}, {Simplex{2}}};
    no_edge.edges = {{0, 1}};
    CHECK(any_violation_starts_with(validate_td(g, no_edge), "edge_coverage"));

    TreeDecomposition split;
    split.bags = {{Simplex{0}, Simplex{1}},
                  {Simplex{1}, Simplex{2}},
                  {Simplex{0}, Simplex{1}}};
    // vertex 0 sits in bags 0 and 2, separated by bag 1 without it
    split.edges = {{0, 1}, {1, 2}};
    CHECK(any_violation_starts_with(validate_td(g, split), "connectivity"));

    TreeDecomposition not_tree = good;
    not_tree.edges = {};
    CHECK(any_violation_starts_with(validate_td(g, not_tree), "tree"));

    TreeDecomposition bad_edge = good;
    bad_edge.edges = {{0, 7}};
    CHECK(any_violation_starts_with(validate_td(g, bad_edge), "tree"));

    TreeDecomposition foreign = good;
    foreign.bags[0] = {Simplex{0}, Simplex{1}, Simplex{9}};
    CHECK(any_violation_starts_with(validate_td(g, foreign), "bags"));
}

TEST_CASE("make_nice on a two-bag decomposition") {
    TreeDecomposition td;
    td.bags = {{Simplex{0}}, {Simplex{0}, Simplex{1}}};
    td.edges = {{0, 1}};

    const NiceTreeDecomposition ntd = make_nice(td, 0);
    CHECK(validate_nice(ntd).ok);
    CHECK(ntd.width() == width(td));
    CHECK(ntd.nodes[ntd.root].bag.empty());
    // vertices are introduced below and forgotten above; no joins in a path
    CHECK(count_kind(ntd, NodeKind::join) == 0);
    CHECK(count_kind(ntd, NodeKind::leaf) == 1);
    CHECK(count_kind(ntd, NodeKind::introduce) == count_kind(ntd, NodeKind::forget));

    // every vertex is forgotten exactly once
    std::multiset<Simplex> forgotten;
    for (const auto& nd : ntd.nodes)
        if (nd.kind == NodeKind::forget)
            forgotten.insert(nd.vertex);
    CHECK(forgotten == std::multiset<Simplex>{Simplex{0}, Simplex{1}});
}

TEST_CASE("make_nice of the empty decomposition is a single empty root") {
    const NiceTreeDecomposition ntd = make_nice(TreeDecomposition{});
    CHECK(ntd.node_count() == 1);
    CHECK(ntd.root == 0);
    CHECK(ntd.nodes[0].kind == NodeKind::leaf);
    CHECK(validate_nice(ntd).ok);
}

TEST_CASE("make_nice preserves width and stays valid on random graphs") {
    RandomSource rng(17);
    for (int round = 0; round < 30; ++round) {
        const int n = 2 + static_cast<int>(rng.below(9));
        const DerivedGraph g = random_graph(rng, n, 0.4);
        const TreeDecomposition td = best_td(g);
        REQUIRE(validate_td(g, td).ok);

        const int root = static_cast<int>(rng.below(td.node_count() + 2)) - 1; // may be off-range
        const NiceTreeDecomposition ntd = make_nice(td, root);
        const TdValidation v = validate_nice(ntd);
        INFO((v.ok ? "" : v.violations.front()));
        CHECK(v.ok);
        CHECK(ntd.width() == width(td));

        // the flattened nice decomposition still decomposes the graph
        TreeDecomposition flat;
        for (const auto& nd : ntd.nodes)
            flat.bags.push_back(nd.bag);
        for (std::size_t i = 0; i < ntd.nodes.size(); ++i)
            if (ntd.nodes[i].parent >= 0)
                flat.edges.emplace_back(ntd.nodes[i].parent, static_cast<int>(i));
        CHECK(validate_td(g, flat).ok);

        // children always come before their parents in post order
        const auto order = ntd.post_order();
        std::vector<int> position(ntd.node_count(), -1);
        for (std::size_t i = 0; i < order.size(); ++i)
            position[order[i]] = static_cast<int>(i);
        for (std::size_t t = 0; t < ntd.node_count(); ++t) {
            for (int c : {ntd.nodes[t].left, ntd.nodes[t].right})
                if (c >= 0)
                    CHECK(position[c] < position[t]);
        }
    }
}

TEST_CASE("validate_nice flags structural damage") {
    TreeDecomposition td;
    td.bags = {{Simplex{0}}, {Simplex{0}, Simplex{1}}};
    td.edges = {{0, 1}};
    NiceTreeDecomposition ntd = make_nice(td);
    REQUIRE(validate_nice(ntd).ok);

    NiceTreeDecomposition broken = ntd;
    broken.nodes[broken.root].bag = {Simplex{5}};
    CHECK_FALSE(validate_nice(broken).ok);

    broken = ntd;
    for (auto& nd : broken.nodes)
        if (nd.kind == NodeKind::introduce) {
            nd.vertex = Simplex{9};
            break;
        }
    CHECK_FALSE(validate_nice(broken).ok);
}

TEST_CASE("hasse decomposition derived from a connectivity decomposition") {
    for (const SimplicialComplex& K :
         {gen_grid(3, 3), gen_kdk(2, 4), gen_torus(3, 3), make_annulus(8, 4).complex}) {
        const DerivedGraph conn = connectivity_graph(K, 2);
        const TreeDecomposition conn_td = best_td(conn);
        REQUIRE(validate_td(conn, conn_td).ok);

        const TreeDecomposition htd = hasse_td_from_conn_td(K, 2, conn_td);
        const DerivedGraph hasse = hasse_level(K, 2);
        const TdValidation v = validate_td(hasse, htd);
        INFO((v.ok ? "" : v.violations.front()));
        CHECK(v.ok);
        CHECK(width(htd) <= width(conn_td) + 1);
    }
}

TEST_CASE("hasse derivation covers faces without cofaces") {
    // a triangle plus a dangling edge: the edge is isolated in the level graph
    const SimplicialComplex K = closure({Simplex{0, 1, 2}, Simplex{3, 4}});
    const DerivedGraph conn = connectivity_graph(K, 2);
    const TreeDecomposition conn_td = best_td(conn);
    const TreeDecomposition htd = hasse_td_from_conn_td(K, 2, conn_td);
    CHECK(validate_td(hasse_level(K, 2), htd).ok);
}

TEST_CASE("hasse derivation works on the level-1 graph of a triangle") {
    const SimplicialComplex K = closure({Simplex{0, 1, 2}});
    const DerivedGraph conn = connectivity_graph(K, 1);
    const TreeDecomposition conn_td = best_td(conn);
    const TreeDecomposition htd = hasse_td_from_conn_td(K, 1, conn_td);
    CHECK(validate_td(hasse_level(K, 1), htd).ok);
    CHECK(width(htd) <= 3);
}

TEST_CASE("suspending a connectivity decomposition doubles the bags") {
    const auto a = make_annulus(5, 3);
    const DerivedGraph conn = connectivity_graph(a.complex, 2);
    const TreeDecomposition td = best_td(conn);
    REQUIRE(validate_td(conn, td).ok);

    const Suspension S = suspension(a.complex);
    const TreeDecomposition std_ = suspend_td(td, GraphKind::connectivity, S.v_plus, S.v_minus);
    const DerivedGraph conn_up = connectivity_graph(S.complex, 3);
    const TdValidation v = validate_td(conn_up, std_);
    INFO((v.ok ? "" : v.violations.front()));
    CHECK(v.ok);
    CHECK(width(std_) == 2 * width(td) + 1);
}

TEST_CASE("suspending a hasse decomposition keeps the old top level as faces") {
    const auto a = make_annulus(5, 3);
    const DerivedGraph hasse = hasse_level(a.complex, 2);
    const TreeDecomposition td = best_td(hasse);
    REQUIRE(validate_td(hasse, td).ok);

    const Suspension S = suspension(a.complex);
    const TreeDecomposition std_ = suspend_td(td, GraphKind::hasse_level, S.v_plus, S.v_minus);
    const DerivedGraph hasse_up = hasse_level(S.complex, 3);
    const TdValidation v = validate_td(hasse_up, std_);
    INFO((v.ok ? "" : v.violations.front()));
    CHECK(v.ok);
    CHECK(width(std_) <= 2 * width(td) + 1);
}

TEST_CASE("suspend_td rejects bags that span more than two levels") {
    TreeDecomposition td;
    td.bags = {{Simplex{0}, Simplex{0, 1}, Simplex{0, 1, 2}}};
    CHECK_THROWS_AS(suspend_td(td, GraphKind::hasse_level, 8, 9), std::invalid_argument);
}

TEST_CASE("pace format round trip") {
    const SimplicialComplex K = gen_grid(3, 3);
    const DerivedGraph g = connectivity_graph(K, 2);
    const TreeDecomposition td = best_td(g);

    std::ostringstream td_os, map_os;
    write_pace_td(td, g, td_os, map_os);
    CHECK(td_os.str().rfind("s td ", 0) == 0);

    std::istringstream td_is(td_os.str()), map_is(map_os.str());
    const TreeDecomposition back = read_pace_td(td_is, map_is);
    CHECK(back.bags == td.bags);
    CHECK(back.edges == td.edges);
    CHECK(validate_td(g, back).ok);
}

TEST_CASE("pace reader tolerates comments and rejects damage") {
    const std::string map = R"({"format_version":1,"vertices":[[0],[1]]})";
    {
        std::istringstream td_in("c a comment\n\ns td 2 1 2\nb 1 1\nb 2 2\n1 2\n");
        std::istringstream map_in(map);
        const TreeDecomposition td = read_pace_td(td_in, map_in);
        CHECK(td.bags.size() == 2);
        CHECK(td.bags[0] == std::vector<Simplex>{Simplex{0}});
        CHECK(td.edges == std::vector<std::pair<int, int>>{{0, 1}});
    }
    {
        std::istringstream td_in("b 1 1\n");
        std::istringstream map_in(map);
        CHECK_THROWS_AS(read_pace_td(td_in, map_in), std::invalid_argument);
    }
    {
        std::istringstream td_in("s td 1 1 2\nb 1 3\n");
        std::istringstream map_in(map);
        CHECK_THROWS_AS(read_pace_td(td_in, map_in), std::invalid_argument);
    }
    {
        std::istringstream td_in("s td 1 1 2\nb 1 1\n5 1\n");
        std::istringstream map_in(map);
        CHECK_THROWS_AS(read_pace_td(td_in, map_in), std::invalid_argument);
    }
}
