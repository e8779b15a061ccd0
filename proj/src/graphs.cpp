#include "hl/graphs.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace hl {

int DerivedGraph::vertex_index(const Simplex& s) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), s);
    if (it == vertices.end() || *it != s)
        return -1;
    return static_cast<int>(it - vertices.begin());
}

std::vector<std::vector<int>> DerivedGraph::adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

DerivedGraph connectivity_graph(const SimplicialComplex& K, int d) {
    if (d < 0)
        throw std::invalid_argument("connectivity_graph: dimension must be non-negative");
    DerivedGraph g;
    g.kind = GraphKind::connectivity;
    g.level = d;
    g.vertices = K.simplices_of_dim(d);

    // group d-simplices by shared (d-1)-face; each group is a clique.
    // two distinct d-simplices share at most one (d-1)-face, so no duplicate edges.
    std::map<Simplex, std::vector<int>> by_facet;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        for (const Simplex& f : g.vertices[i].facets())
            by_facet[f].push_back(static_cast<int>(i));
    for (const auto& [f, ids] : by_facet)
        for (std::size_t a = 0; a < ids.size(); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b)
                g.edges.emplace_back(ids[a], ids[b]);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

DerivedGraph hasse_level(const SimplicialComplex& K, int d) {
    if (d < 1)
        throw std::invalid_argument("hasse_level: level must be at least 1");
    DerivedGraph g;
    g.kind = GraphKind::hasse_level;
    g.level = d;
    g.vertices = K.simplices_of_dim(d - 1);
    {
        auto upper = K.simplices_of_dim(d);
        g.vertices.insert(g.vertices.end(), upper.begin(), upper.end());
    }
    std::sort(g.vertices.begin(), g.vertices.end());

    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        if (g.vertices[i].dim() != d)
            continue;
        for (const Simplex& f : g.vertices[i].facets()) {
            int j = g.vertex_index(f);
            if (j < 0)
                throw std::logic_error("hasse_level: complex is not face-closed");
            g.edges.emplace_back(std::min<int>(j, static_cast<int>(i)),
                                 std::max<int>(j, static_cast<int>(i)));
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

void write_edge_list(const DerivedGraph& g, std::ostream& os) {
    auto put = [&os](const Simplex& s) {
        const auto& vs = s.vertices();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i)
                os << ',';
            os << vs[i];
        }
    };
    for (auto [a, b] : g.edges) {
        put(g.vertices[a]);
        os << ' ';
        put(g.vertices[b]);
        os << '\n';
    }
}

} // namespace hl
