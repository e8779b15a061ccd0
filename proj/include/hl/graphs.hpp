#pragma once

#include "hl/complex.hpp"

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace hl {

enum class GraphKind { connectivity, hasse_level };

// A graph whose vertices are simplices of a complex. Vertices are kept in
// canonical order; edges are index pairs (i < j), sorted and unique.
struct DerivedGraph {
    GraphKind kind = GraphKind::connectivity;
    int level = 0; // the d of Con_d / Hasse_d
    std::vector<Simplex> vertices;
    std::vector<std::pair<int, int>> edges;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const { return edges.size(); }
    int vertex_index(const Simplex& s) const; // -1 if absent
    std::vector<std::vector<int>> adjacency() const;
};

// Con_d(K): vertices are the d-simplices, edges join simplices sharing a (d-1)-face.
DerivedGraph connectivity_graph(const SimplicialComplex& K, int d);

// Hasse_d(K): vertices are the d- and (d-1)-simplices, edges join each
// d-simplex to its facets. (d-1)-simplices without cofaces stay as isolated vertices.
DerivedGraph hasse_level(const SimplicialComplex& K, int d);

// one edge per line: the two endpoint simplices as comma-separated vertex lists
void write_edge_list(const DerivedGraph& g, std::ostream& os);

} // namespace hl
