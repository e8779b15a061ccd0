#pragma once

#include "hl/graphs.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hl {

// A tree decomposition of a DerivedGraph. Bags hold simplices (the graph's
// vertices) sorted canonically; edges connect bag indices and form a tree.
struct TreeDecomposition {
    std::vector<std::vector<Simplex>> bags;
    std::vector<std::pair<int, int>> edges;

    std::size_t node_count() const { return bags.size(); }
};

// max bag size − 1 (−1 for a decomposition with no or only empty bags)
int width(const TreeDecomposition& td);

struct TdValidation {
    bool ok = true;
    std::vector<std::string> violations;
    explicit operator bool() const { return ok; }
};

// checks: tree shape, vertex coverage, edge coverage, per-vertex connectivity
TdValidation validate_td(const DerivedGraph& g, const TreeDecomposition& td);

enum class Heuristic { min_degree, min_fill };

// elimination-ordering heuristic; ties broken by canonical vertex order
TreeDecomposition heuristic_td(const DerivedGraph& g, Heuristic h);

// the smaller-width of min_degree and min_fill (min_degree on ties)
TreeDecomposition best_td(const DerivedGraph& g);

// best_td plus seeded restarts of both elimination heuristics with uniformly
// random tie-breaking; returns the narrowest decomposition found (the
// deterministic best_td answer wins ties). Reproducible for a fixed seed.
TreeDecomposition best_td_randomized(const DerivedGraph& g, int rounds,
                                     std::uint64_t seed = 1000);

enum class NodeKind { leaf, introduce, forget, join };

// A nice tree decomposition: rooted binary tree whose root and leaves carry
// empty bags; every internal node introduces or forgets one vertex, or joins
// two children with identical bags.
struct NiceTreeDecomposition {
    struct Node {
        NodeKind kind = NodeKind::leaf;
        std::vector<Simplex> bag; // sorted
        int parent = -1;
        int left = -1;  // only child for introduce/forget
        int right = -1; // second child for join
        Simplex vertex; // the introduced/forgotten vertex
    };
    std::vector<Node> nodes;
    int root = -1;

    std::size_t node_count() const { return nodes.size(); }
    int width() const;
    std::vector<int> post_order() const; // children before parents, iterative
};

// Convert a valid decomposition into a nice one of the same width, rooted at
// the given input node (clamped into range). An empty decomposition yields a
// single empty leaf/root node.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, int root = 0);

// structural sanity of node kinds, bags and links; used by tests and solvers
TdValidation validate_nice(const NiceTreeDecomposition& ntd);

// Turn a decomposition of Con_d(K) into one of Hasse_d(K): for each
// (d-1)-simplex pick a bag containing all its cofaces (they form a clique in
// Con_d, so one exists), copy that bag, add the (d-1)-simplex to the copy and
// attach it as a leaf. Width grows by at most one.
TreeDecomposition hasse_td_from_conn_td(const SimplicialComplex& K, int d,
                                        const TreeDecomposition& conn_td);

// Lift a decomposition of Con_{d+1}(K) or Hasse_{d+1}(K) to one of the same
// graph of the suspension S(K): every bag element σ is replaced by the pair
// σ∪{v+}, σ∪{v−}. For Hasse input the original (d+1)-simplices are vertices
// of the suspended graph too, so each gets an extra leaf bag
// {σ∪{v+}, σ∪{v−}, σ} attached to a node whose bag contained σ.
TreeDecomposition suspend_td(const TreeDecomposition& td, GraphKind kind,
                             int v_plus, int v_minus);

// PACE-2017 .td exchange format; the sidecar maps 1-based vertex ids to
// simplices so the bags survive the round trip.
void write_pace_td(const TreeDecomposition& td, const DerivedGraph& g,
                   std::ostream& td_out, std::ostream& map_out);
TreeDecomposition read_pace_td(std::istream& td_in, std::istream& map_in);

} // namespace hl
